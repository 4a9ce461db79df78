#include "chiforge/fact_trials.hpp"
#include "chiforge/random.hpp"
#include "chiforge/sidon.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace chiforge;

namespace {

// Independent B_h check: compare every pair of h-multisets, generated as
// sorted index tuples, by their sums.
bool brute_is_bh(const std::vector<Value> & s, std::size_t h)
{
    std::map<Value, int> sums;
    std::vector<std::size_t> idx(h, 0);
    auto rec = [&](auto && self, std::size_t pos, std::size_t start, Value sum) -> bool {
        if (pos == h)
            return ++sums[sum] == 1;
        for (std::size_t i = start; i < s.size(); ++i)
            if (! self(self, pos + 1, i, sum + s[i]))
                return false;
        return true;
    };
    return rec(rec, 0, 0, 0);
}

std::vector<Value> random_bh(Rng & rng, std::size_t h, std::size_t f, Value bound)
{
    std::vector<Value> s;
    for (int attempt = 0; attempt < 400 && s.size() < f; ++attempt) {
        Value c = rng.between(1, bound);
        if (std::find(s.begin(), s.end(), c) != s.end())
            continue;
        auto t = s;
        t.push_back(c);
        std::sort(t.begin(), t.end());
        if (brute_is_bh(t, h))
            s = t;
    }
    return s;
}

} // namespace

TEST(IsBh, Examples)
{
    EXPECT_TRUE(is_bh_set({1, 2, 5}, 3).ok);
    EXPECT_TRUE(is_bh_set({1, 4, 16, 64}, 3).ok);
    auto bad = is_bh_set({1, 2, 3}, 3);
    ASSERT_FALSE(bad.ok);
    ASSERT_TRUE(bad.collision);
    EXPECT_EQ(bad.collision->first, (Multiset{1, 1, 3}));
    EXPECT_EQ(bad.collision->second, (Multiset{1, 2, 2}));
}

TEST(IsBh, RejectsBadInput)
{
    EXPECT_THROW(is_bh_set(std::vector<Value>{}, 3), PreconditionError);
    EXPECT_THROW(is_bh_set({1, 2}, 1), PreconditionError);
    EXPECT_THROW(is_bh_set({2, 1}, 3), PreconditionError);
    EXPECT_THROW(is_bh_set({0, 1}, 3), PreconditionError);
}

TEST(IsBh, AgreesWithBruteForce)
{
    Rng rng(1);
    for (int trial = 0; trial < 300; ++trial) {
        auto h = static_cast<std::size_t>(rng.between(2, 5));
        std::set<Value> pool;
        auto size = rng.between(1, 6);
        while (static_cast<long>(pool.size()) < size)
            pool.insert(rng.between(1, 60));
        std::vector<Value> s(pool.begin(), pool.end());
        auto check = is_bh_set(s, h);
        EXPECT_EQ(check.ok, brute_is_bh(s, h));
        if (! check.ok) {
            auto [a, b] = *check.collision;
            EXPECT_NE(a, b);
            EXPECT_EQ(a.size(), h);
            EXPECT_EQ(std::accumulate(a.begin(), a.end(), Value{0}), std::accumulate(b.begin(), b.end(), Value{0}));
        }
    }
}

TEST(Greedy, Examples)
{
    EXPECT_EQ(greedy_bh(2, 3, 10).elements(), (std::vector<Value>{1, 2}));
    EXPECT_EQ(greedy_bh(3, 3, 16).elements(), (std::vector<Value>{1, 2, 5}));
    EXPECT_THROW(greedy_bh(3, 3, 4), ExhaustionError);
    EXPECT_THROW(greedy_bh(1, 3, 4), PreconditionError);
}

TEST(Greedy, LexicographicallyFirst)
{
    // Each accepted element is the least extension: every skipped
    // candidate must break the property.
    for (std::size_t h = 2; h <= 5; ++h) {
        auto s = greedy_bh(6, h, 100000).elements();
        for (std::size_t i = 2; i < s.size(); ++i)
            for (Value c = s[i - 1] + 1; c < s[i]; ++c) {
                std::vector<Value> t(s.begin(), s.begin() + i);
                t.push_back(c);
                EXPECT_FALSE(brute_is_bh(t, h));
            }
        EXPECT_TRUE(brute_is_bh(s, h));
    }
}

TEST(Greedy, KnownPrefixes)
{
    EXPECT_EQ(greedy_bh(5, 3, 1000).elements(), (std::vector<Value>{1, 2, 5, 14, 33}));
    EXPECT_EQ(greedy_bh(5, 5, 1000).elements(), (std::vector<Value>{1, 2, 7, 32, 109}));
}

TEST(BhSet, CertifiedAtConstruction)
{
    EXPECT_THROW(BhSet({1, 2, 3}, 3, 10), PreconditionError);
    EXPECT_THROW(BhSet({1, 2, 5}, 3, 4), PreconditionError);
    BhSet s({1, 2, 5}, 3, 5);
    EXPECT_TRUE(s.contains(5));
}

TEST(BhSet, DownwardClosedToSidon)
{
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        auto h = static_cast<std::size_t>(rng.between(3, 6));
        auto s = random_bh(rng, h, 5, 500);
        for (std::size_t lower = 2; lower < h; ++lower)
            EXPECT_TRUE(is_bh_set(s, lower).ok);
    }
}

TEST(DifferenceSet, Examples)
{
    EXPECT_EQ(difference_set(BhSet({1, 2}, 3, 2)).values(), (std::vector<Value>{1}));
    EXPECT_EQ(difference_set(BhSet({1, 2, 5}, 3, 5)).values(), (std::vector<Value>{1, 3, 4}));
    EXPECT_EQ(difference_set(BhSet({1, 4, 16, 64}, 3, 64)).values(), (std::vector<Value>{3, 12, 15, 48, 60, 63}));
    EXPECT_THROW(difference_set(BhSet({1}, 3, 2)), PreconditionError);
}

TEST(CliqueFact, Examples)
{
    BhSet s({1, 2, 5}, 3, 5);
    EXPECT_EQ(clique_fact_witness(s, std::vector<Value>{3}), (std::vector<Value>{2, 5}));
    EXPECT_EQ(clique_fact_witness(s, std::vector<Value>{1, 3}), (std::vector<Value>{1, 2, 5}));
    EXPECT_EQ(clique_fact_witness(s, std::vector<Value>{3, 1}), (std::vector<Value>{1, 2, 5}));
    try {
        clique_fact_witness(s, std::vector<Value>{1, 1});
        FAIL() << "expected hypothesis violation";
    }
    catch (const HypothesisViolation & e) {
        EXPECT_EQ(e.first(), 1u);
        EXPECT_EQ(e.last(), 2u);
        EXPECT_EQ(e.sum(), 2);
    }
}

// Random B_h sets and random difference sequences; whenever the hypothesis
// holds the witness must exist and realise every interval sum.
TEST(CliqueFact, RandomTrials)
{
    Rng rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto h = static_cast<std::size_t>(rng.between(3, 6));
        auto elements = random_bh(rng, h, static_cast<std::size_t>(rng.between(3, 7)), 500);
        if (elements.size() < 2)
            continue;
        BhSet s(elements, h, 500);
        auto d = difference_set(s).values();
        std::vector<Value> gaps;
        if (rng.chance(1, 2)) {
            // Consecutive gaps of a random increasing subsequence: the
            // hypothesis holds by construction.
            std::vector<Value> pick;
            for (Value x : elements)
                if (rng.chance(1, 2))
                    pick.push_back(x);
            if (pick.size() < 2)
                pick = {elements[0], elements[1]};
            for (std::size_t i = 1; i < pick.size(); ++i)
                gaps.push_back(pick[i] - pick[i - 1]);
            if (rng.chance(1, 2))
                std::reverse(gaps.begin(), gaps.end());
        }
        else {
            auto l = rng.between(1, 3);
            for (int i = 0; i < l; ++i)
                gaps.push_back(d[rng.below(d.size())]);
        }
        std::vector<Value> b;
        try {
            b = clique_fact_witness(s, gaps);
        }
        catch (const HypothesisViolation &) {
            continue;
        }
        ++checked;
        ASSERT_EQ(b.size(), gaps.size() + 1);
        for (Value x : b)
            EXPECT_TRUE(s.contains(x));
        bool forward = true, backward = true;
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j) {
                Value fwd = 0, bwd = 0;
                for (std::size_t k = i; k < j; ++k) {
                    fwd += gaps[k];
                    bwd += gaps[gaps.size() - 1 - k];
                }
                forward = forward && b[j] - b[i] == fwd;
                backward = backward && b[j] - b[i] == bwd;
            }
        EXPECT_TRUE(forward || backward);
    }
    EXPECT_GT(checked, 100);
}

TEST(CycleFact, RepeatedEdge)
{
    BhSet s({1, 2, 5}, 3, 5);
    auto r = cycle_fact_decompose(s, std::vector<Value>{3, 3}, 1);
    ASSERT_EQ(r.circuits.size(), 1u);
    EXPECT_EQ(r.circuits[0].size(), 2u);
    for (const auto & e : r.circuits[0])
        EXPECT_EQ(std::minmax(e.from, e.to), std::minmax(Value{2}, Value{5}));
    EXPECT_FALSE(r.odd_cycle);
}

TEST(CycleFact, Triangle)
{
    BhSet s({1, 2, 5}, 3, 5);
    auto r = cycle_fact_decompose(s, std::vector<Value>{4, 1, 3}, 1);
    ASSERT_EQ(r.circuits.size(), 1u);
    EXPECT_EQ(r.circuits[0].size(), 3u);
    ASSERT_TRUE(r.odd_cycle);
    EXPECT_EQ(*r.odd_cycle, (std::vector<Value>{1, 2, 5}));
}

TEST(CycleFact, Preconditions)
{
    BhSet s({1, 2, 5}, 3, 5);
    EXPECT_THROW(cycle_fact_decompose(s, std::vector<Value>{4, 3, 3}, 1), PreconditionError);
    EXPECT_THROW(cycle_fact_decompose(s, std::vector<Value>{2, 2}, 1), PreconditionError);
    EXPECT_THROW(cycle_fact_decompose(s, std::vector<Value>{1, 1, 1, 1}, 2), PreconditionError);
    EXPECT_THROW(cycle_fact_decompose(s, std::vector<Value>{3, 3}, 2), PreconditionError);
}

namespace {

void expect_valid_decomposition(const CircuitDecomposition & r, std::size_t l)
{
    std::vector<int> used(l, 0);
    for (const auto & c : r.circuits) {
        ASSERT_FALSE(c.empty());
        for (std::size_t i = 0; i < c.size(); ++i) {
            ++used[c[i].index];
            EXPECT_EQ(c[i].to, c[(i + 1) % c.size()].from);
            auto [lo, hi] = r.edges[c[i].index];
            EXPECT_EQ(std::minmax(c[i].from, c[i].to), std::minmax(lo, hi));
        }
    }
    for (std::size_t i = 0; i < l; ++i)
        EXPECT_EQ(used[i], 1) << "edge " << i;
}

} // namespace

// Balanced sequences come from random closed walks on S: upward steps go
// on the left, downward steps on the right.
TEST(CycleFact, RandomClosedWalks)
{
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        auto h = static_cast<std::size_t>(rng.between(3, 6));
        auto elements = random_bh(rng, h, static_cast<std::size_t>(rng.between(3, 7)), 500);
        if (elements.size() < 3)
            continue;
        BhSet s(elements, h, 500);
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
        auto r = cycle_fact_decompose(s, gaps, up.size());
        expect_valid_decomposition(r, l);
        if (l % 2 == 1) {
            ASSERT_TRUE(r.odd_cycle) << "trial " << trial;
            const auto & c = *r.odd_cycle;
            EXPECT_EQ(c.size() % 2, 1u);
            EXPECT_LE(c.size(), l);
            EXPECT_EQ(std::set<Value>(c.begin(), c.end()).size(), c.size());
            for (std::size_t i = 0; i < c.size(); ++i) {
                auto pair = std::minmax(c[i], c[(i + 1) % c.size()]);
                EXPECT_NE(std::find(r.edges.begin(), r.edges.end(), std::pair<Value, Value>(pair)), r.edges.end());
            }
        }
    }
}

TEST(FactTrials, SuiteIsClean)
{
    for (std::size_t h = 2; h <= 6; ++h) {
        auto r = run_fact_trials(h, 200, 100 + h);
        EXPECT_TRUE(r.ok()) << (r.first_failure ? r.first_failure->reason : "");
        EXPECT_EQ(r.contradictions, 0u);
        EXPECT_EQ(r.clique_witnesses, h >= 3 ? 200u : 0u);
        EXPECT_EQ(r.odd_cycles, r.odd_trials);
        EXPECT_EQ(r.cycle_trials, 200u);
    }
    EXPECT_THROW(run_fact_trials(1, 1, 1), PreconditionError);
}

TEST(FactTrials, Deterministic)
{
    auto a = run_fact_trials(4, 50, 9), b = run_fact_trials(4, 50, 9);
    EXPECT_EQ(a.odd_trials, b.odd_trials);
    EXPECT_EQ(a.odd_cycles, b.odd_cycles);
}
