#ifndef CHIFORGE_FACT_TRIALS_HPP
#define CHIFORGE_FACT_TRIALS_HPP

#include "chiforge/errors.hpp"
#include "chiforge/random.hpp"
#include "chiforge/sidon.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace chiforge {

/// Random B_h set: up to f elements of [1, bound], grown by rejection.
inline std::vector<Value> random_bh_set(Rng & rng, std::size_t h, std::size_t f, Value bound)
{
    std::vector<Value> s;
    for (int attempt = 0; attempt < 400 && s.size() < f; ++attempt) {
        Value c = rng.between(1, bound);
        if (std::find(s.begin(), s.end(), c) != s.end())
            continue;
        auto t = s;
        t.push_back(c);
        std::sort(t.begin(), t.end());
        if (is_bh_set(t, h).ok)
            s = std::move(t);
    }
    return s;
}

struct FactFailure {
    std::string fact;
    std::vector<Value> set;
    std::vector<Value> gaps;
    std::size_t split = 0;
    std::string reason;
};

struct FactTrialReport {
    std::size_t h = 0;
    std::size_t clique_trials = 0;
    std::size_t clique_witnesses = 0;
    std::size_t cycle_trials = 0;
    std::size_t odd_trials = 0;
    std::size_t odd_cycles = 0;
    std::size_t contradictions = 0;
    std::optional<FactFailure> first_failure;

    bool ok() const { return ! first_failure; }
};

namespace detail {

    inline std::optional<std::string> check_clique_witness(const BhSet & s, std::span<const Value> gaps, std::span<const Value> b)
    {
        if (b.size() != gaps.size() + 1)
            return "witness has the wrong length";
        for (Value x : b)
            if (! s.contains(x))
                return "witness leaves the set";
        bool forward = true, backward = true;
        for (std::size_t i = 0; i + 1 < b.size(); ++i) {
            forward = forward && b[i + 1] - b[i] == gaps[i];
            backward = backward && b[i + 1] - b[i] == gaps[gaps.size() - 1 - i];
        }
        if (! forward && ! backward)
            return "witness gaps differ from the differences";
        return std::nullopt;
    }

    inline std::optional<std::string> check_decomposition(const CircuitDecomposition & r, std::size_t l)
    {
        std::vector<int> used(l, 0);
        for (const auto & c : r.circuits) {
            if (c.empty())
                return "empty circuit";
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i].index >= l)
                    return "circuit uses an unknown edge";
                ++used[c[i].index];
                if (c[i].to != c[(i + 1) % c.size()].from)
                    return "circuit is not closed";
                auto [lo, hi] = r.edges[c[i].index];
                if (std::minmax(c[i].from, c[i].to) != std::minmax(lo, hi))
                    return "circuit step does not follow its edge";
            }
        }
        if (std::any_of(used.begin(), used.end(), [](int u) { return u != 1; }))
            return "edges not used exactly once";
        if (l % 2 == 1) {
            if (! r.odd_cycle)
                return "no odd cycle for an odd number of edges";
            const auto & cyc = *r.odd_cycle;
            if (cyc.size() % 2 == 0 || cyc.size() > l)
                return "odd cycle has the wrong length";
            if (std::set<Value>(cyc.begin(), cyc.end()).size() != cyc.size())
                return "odd cycle repeats a vertex";
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                auto pair = std::minmax(cyc[i], cyc[(i + 1) % cyc.size()]);
                if (std::find(r.edges.begin(), r.edges.end(), std::pair<Value, Value>(pair)) == r.edges.end())
                    return "odd cycle uses a non-edge";
            }
        }
        return std::nullopt;
    }

} // namespace detail

/// Randomised exercise of the clique fact (h >= 3) and the cycle fact.
/// Each trial draws a random B_h set; the clique-fact side uses the gaps
/// of a random subsequence (possibly reversed), the cycle-fact side the
/// steps of a random closed walk on the set, split into ups and downs.
inline FactTrialReport run_fact_trials(std::size_t h, std::size_t trials, std::uint64_t seed)
{
    if (h < 2)
        throw PreconditionError("fact trials need h >= 2");
    FactTrialReport report;
    report.h = h;
    Rng rng(seed);
    const Value bound = 500;
    auto fail = [&](FactFailure failure) {
        if (! report.first_failure)
            report.first_failure = std::move(failure);
    };
    for (std::size_t trial = 0; trial < trials; ++trial) {
        auto elements = random_bh_set(rng, h, static_cast<std::size_t>(rng.between(3, 7)), bound);
        if (elements.size() < 3)
            elements = greedy_bh(3, h, bound).elements();
        BhSet s(elements, h, bound);

        if (h >= 3) {
            std::vector<Value> pick;
            for (Value x : elements)
                if (rng.chance(1, 2))
                    pick.push_back(x);
            if (pick.size() < 2)
                pick = {elements[0], elements[1]};
            std::vector<Value> gaps;
            for (std::size_t i = 1; i < pick.size(); ++i)
                gaps.push_back(pick[i] - pick[i - 1]);
            if (rng.chance(1, 2))
                std::reverse(gaps.begin(), gaps.end());
            ++report.clique_trials;
            try {
                auto b = clique_fact_witness(s, gaps);
                if (auto bad = detail::check_clique_witness(s, gaps, b))
                    fail({"clique", elements, gaps, 0, *bad});
                else
                    ++report.clique_witnesses;
            }
            catch (const InternalContradiction & e) {
                ++report.contradictions;
                fail({"clique", elements, gaps, 0, e.what()});
            }
        }

        auto l = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(h)));
        std::vector<Value> walk{elements[rng.below(elements.size())]};
        while (walk.size() < l) {
            Value next = elements[rng.below(elements.size())];
            if (next != walk.back() && (walk.size() + 1 < l || next != walk.front()))
                walk.push_back(next);
        }
        std::vector<Value> up, down;
        for (std::size_t i = 0; i < l; ++i) {
            Value step = walk[(i + 1) % l] - walk[i];
            (step > 0 ? up : down).push_back(step > 0 ? step : -step);
        }
        std::vector<Value> gaps = up;
        gaps.insert(gaps.end(), down.begin(), down.end());
        ++report.cycle_trials;
        report.odd_trials += l % 2;
        try {
            auto r = cycle_fact_decompose(s, gaps, up.size());
            if (auto bad = detail::check_decomposition(r, l))
                fail({"cycle", elements, gaps, up.size(), *bad});
            else if (r.odd_cycle)
                ++report.odd_cycles;
        }
        catch (const InternalContradiction & e) {
            ++report.contradictions;
            fail({"cycle", elements, gaps, up.size(), e.what()});
        }
    }
    return report;
}

} // namespace chiforge

#endif // CHIFORGE_FACT_TRIALS_HPP
