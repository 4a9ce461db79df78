#ifndef CHIFORGE_ORACLE_COLORING_HPP
#define CHIFORGE_ORACLE_COLORING_HPP

#include "chiforge/graph.hpp"
#include "chiforge/oracle/clique.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

namespace chiforge {

using Color = std::uint32_t;

/// Vertex colouring; color[v] is the colour of vertex v.
struct Coloring {
    std::vector<Color> color;
    std::size_t colors_used = 0;

    static Coloring from(std::vector<Color> colors)
    {
        std::set<Color> distinct(colors.begin(), colors.end());
        return Coloring{std::move(colors), distinct.size()};
    }

    friend bool operator==(const Coloring &, const Coloring &) = default;
};

inline bool is_proper(const Graph & g, const Coloring & c)
{
    if (c.color.size() != g.vertex_count())
        return false;
    for (auto [u, v] : g.edges())
        if (c.color[u] == c.color[v])
            return false;
    return true;
}

enum class SearchOutcome { found, refuted, budget_exhausted };

namespace detail {

    // DSATUR-ordered k-colourability search. Vertex choice: largest
    // saturation, then largest degree, then smallest id.
    class KColorer {
    public:
        KColorer(const Graph & g, std::size_t k, WorkBudget & budget) :
            g_(g), k_(k), budget_(budget), color_(g.vertex_count(), unset),
            counts_(g.vertex_count() * k, 0), saturation_(g.vertex_count(), 0)
        {
        }

        SearchOutcome run()
        {
            if (g_.vertex_count() == 0)
                return SearchOutcome::found;
            if (k_ == 0)
                return SearchOutcome::refuted;
            return search(0, 0);
        }

        Coloring coloring() const { return Coloring::from(color_); }

    private:
        static constexpr Color unset = ~Color{0};

        Vertex select() const
        {
            Vertex best = 0;
            bool have = false;
            for (Vertex v = 0; v < g_.vertex_count(); ++v) {
                if (color_[v] != unset)
                    continue;
                if (! have || saturation_[v] > saturation_[best]
                    || (saturation_[v] == saturation_[best] && g_.degree(v) > g_.degree(best))) {
                    best = v;
                    have = true;
                }
            }
            return best;
        }

        void assign(Vertex v, Color c)
        {
            color_[v] = c;
            for (Vertex w : g_.neighbors(v))
                if (counts_[w * k_ + c]++ == 0)
                    ++saturation_[w];
        }

        void unassign(Vertex v)
        {
            Color c = color_[v];
            color_[v] = unset;
            for (Vertex w : g_.neighbors(v))
                if (--counts_[w * k_ + c] == 0)
                    --saturation_[w];
        }

        SearchOutcome search(std::size_t placed, std::size_t colors_open)
        {
            if (placed == g_.vertex_count())
                return SearchOutcome::found;
            Vertex v = select();
            if (saturation_[v] >= k_)
                return SearchOutcome::refuted;
            // Colours above colors_open are interchangeable; only try the first.
            const std::size_t limit = std::min(k_, colors_open + 1);
            for (Color c = 0; c < limit; ++c) {
                if (counts_[v * k_ + c] != 0)
                    continue;
                if (! budget_.charge())
                    return SearchOutcome::budget_exhausted;
                assign(v, c);
                auto outcome = search(placed + 1, std::max<std::size_t>(colors_open, c + 1));
                if (outcome != SearchOutcome::refuted)
                    return outcome;
                unassign(v);
            }
            return SearchOutcome::refuted;
        }

        const Graph & g_;
        std::size_t k_;
        WorkBudget & budget_;
        std::vector<Color> color_;
        std::vector<std::uint32_t> counts_;
        std::vector<std::uint32_t> saturation_;
    };

} // namespace detail

/// Greedy DSATUR colouring, used as the starting upper bound.
inline Coloring dsatur_greedy(const Graph & g)
{
    const std::size_t n = g.vertex_count();
    std::vector<Color> color(n, ~Color{0});
    std::vector<std::set<Color>> seen(n);
    for (std::size_t step = 0; step < n; ++step) {
        Vertex best = 0;
        bool have = false;
        for (Vertex v = 0; v < n; ++v) {
            if (color[v] != ~Color{0})
                continue;
            if (! have || seen[v].size() > seen[best].size()
                || (seen[v].size() == seen[best].size() && g.degree(v) > g.degree(best))) {
                best = v;
                have = true;
            }
        }
        Color c = 0;
        while (seen[best].count(c))
            ++c;
        color[best] = c;
        for (Vertex w : g.neighbors(best))
            seen[w].insert(c);
    }
    return Coloring::from(std::move(color));
}

/// Decides k-colourability. On `found`, `witness` holds the colouring.
inline SearchOutcome k_colorable(const Graph & g, std::size_t k, WorkBudget & budget, Coloring * witness = nullptr)
{
    detail::KColorer colorer(g, k, budget);
    auto outcome = colorer.run();
    if (outcome == SearchOutcome::found && witness)
        *witness = colorer.coloring();
    return outcome;
}

struct ChromaticResult {
    std::size_t chromatic_number = 0;
    Coloring witness;
    /// Search nodes spent.
    std::uint64_t work = 0;
};

inline constexpr std::uint64_t default_search_budget = 2'000'000'000ULL;

/// Exact chromatic number. Starts from [clique number, DSATUR greedy] and
/// tries each k from the bottom with the k-colourability search; the first
/// success is optimal. Throws BudgetExceeded with the bounds reached.
inline ChromaticResult chromatic_number(const Graph & g, std::uint64_t budget = default_search_budget)
{
    ChromaticResult result;
    if (g.vertex_count() == 0)
        return result;
    Coloring greedy = dsatur_greedy(g);
    std::size_t upper = greedy.colors_used;
    std::size_t lower = std::max<std::size_t>(1, clique_number(g).size);
    WorkBudget work(budget);
    for (std::size_t k = lower; k < upper; ++k) {
        Coloring found;
        auto outcome = k_colorable(g, k, work, &found);
        if (outcome == SearchOutcome::found) {
            result.chromatic_number = k;
            result.witness = std::move(found);
            result.work = work.used();
            return result;
        }
        if (outcome == SearchOutcome::budget_exhausted)
            throw BudgetExceeded("chromatic number search exhausted its budget", k, upper);
    }
    result.chromatic_number = upper;
    result.witness = std::move(greedy);
    result.work = work.used();
    return result;
}

} // namespace chiforge

#endif // CHIFORGE_ORACLE_COLORING_HPP
