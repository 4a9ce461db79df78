#ifndef CHIFORGE_ORACLE_HYPERGRAPH_HPP
#define CHIFORGE_ORACLE_HYPERGRAPH_HPP

#include "chiforge/graph.hpp"
#include "chiforge/oracle/coloring.hpp"
#include "chiforge/oracle/girth.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace chiforge {

inline void require_edges_of_size_two(const Hypergraph & h)
{
    for (const auto & e : h.edges())
        if (e.size() < 2)
            throw PreconditionError("hypergraph edge of size " + std::to_string(e.size()) + "; edges need at least two vertices");
}

/// Vertex-edge incidence graph: vertices 0..n-1 are the hypergraph's
/// vertices, n+i stands for edge i.
inline Graph incidence_graph(const Hypergraph & h)
{
    std::vector<VertexPair> pairs;
    for (std::size_t i = 0; i < h.edge_count(); ++i)
        for (Vertex v : h.edge(i))
            pairs.emplace_back(v, static_cast<Vertex>(h.vertex_count() + i));
    return Graph(h.vertex_count() + h.edge_count(), std::span<const VertexPair>(pairs));
}

/// Length of the shortest cycle: distinct vertices v_0..v_{l-1}, distinct
/// edges e_0..e_{l-1}, v_i in both e_i and e_{i+1}. Two edges sharing two
/// vertices form a cycle of length 2. Such cycles are exactly the cycles of
/// length 2l in the incidence graph.
inline Extended hypergraph_girth(const Hypergraph & h)
{
    require_edges_of_size_two(h);
    auto stats = girth_stats(incidence_graph(h));
    if (stats.girth.is_infinite())
        return Extended::infinite();
    return stats.girth.value() / 2;
}

/// A shortest hypergraph cycle, as the indices of its edges.
inline std::optional<std::vector<std::size_t>> shortest_hypergraph_cycle(const Hypergraph & h)
{
    require_edges_of_size_two(h);
    auto cycle = shortest_cycle(incidence_graph(h));
    if (! cycle)
        return std::nullopt;
    std::vector<std::size_t> edges;
    for (Vertex x : *cycle)
        if (x >= h.vertex_count())
            edges.push_back(x - h.vertex_count());
    return edges;
}

/// No edge has all its vertices the same colour.
inline bool is_weak_proper(const Hypergraph & h, const Coloring & c)
{
    if (c.color.size() != h.vertex_count())
        return false;
    for (const auto & e : h.edges()) {
        bool mono = true;
        for (Vertex v : e)
            mono = mono && c.color[v] == c.color[e.front()];
        if (mono)
            return false;
    }
    return true;
}

/// No edge contains two vertices of the same colour.
inline bool is_strong_proper(const Hypergraph & h, const Coloring & c)
{
    return is_proper(h.clique_expansion(), c);
}

namespace detail {

    class HyperKColorer {
    public:
        HyperKColorer(const Hypergraph & h, std::size_t k, WorkBudget & budget) :
            h_(h), k_(k), budget_(budget), incidence_(h.incidence()), color_(h.vertex_count(), unset)
        {
            for (Vertex v = 0; v < h.vertex_count(); ++v)
                order_.push_back(v);
            std::stable_sort(order_.begin(), order_.end(),
                [&](Vertex a, Vertex b) { return incidence_[a].size() > incidence_[b].size(); });
        }

        SearchOutcome run()
        {
            if (h_.vertex_count() == 0)
                return SearchOutcome::found;
            if (k_ == 0)
                return SearchOutcome::refuted;
            return search(0, 0);
        }

        Coloring coloring() const { return Coloring::from(color_); }

    private:
        static constexpr Color unset = ~Color{0};

        bool closes_monochromatic(Vertex v, Color c) const
        {
            for (std::size_t ei : incidence_[v]) {
                bool mono = true;
                for (Vertex w : h_.edge(ei))
                    if (w != v && color_[w] != c) {
                        mono = false;
                        break;
                    }
                if (mono)
                    return true;
            }
            return false;
        }

        SearchOutcome search(std::size_t depth, std::size_t colors_open)
        {
            if (depth == order_.size())
                return SearchOutcome::found;
            Vertex v = order_[depth];
            const std::size_t limit = std::min(k_, colors_open + 1);
            for (Color c = 0; c < limit; ++c) {
                if (closes_monochromatic(v, c))
                    continue;
                if (! budget_.charge())
                    return SearchOutcome::budget_exhausted;
                color_[v] = c;
                auto outcome = search(depth + 1, std::max<std::size_t>(colors_open, c + 1));
                if (outcome != SearchOutcome::refuted)
                    return outcome;
                color_[v] = unset;
            }
            return SearchOutcome::refuted;
        }

        const Hypergraph & h_;
        std::size_t k_;
        WorkBudget & budget_;
        std::vector<std::vector<std::size_t>> incidence_;
        std::vector<Color> color_;
        std::vector<Vertex> order_;
    };

} // namespace detail

/// Decides whether the hypergraph has a k-colouring with no monochromatic edge.
inline SearchOutcome hypergraph_k_colorable(const Hypergraph & h, std::size_t k, WorkBudget & budget, Coloring * witness = nullptr)
{
    require_edges_of_size_two(h);
    detail::HyperKColorer colorer(h, k, budget);
    auto outcome = colorer.run();
    if (outcome == SearchOutcome::found && witness)
        *witness = colorer.coloring();
    return outcome;
}

/// Exact (weak) chromatic number: fewest colours with no monochromatic edge.
inline ChromaticResult hypergraph_chromatic(const Hypergraph & h, std::uint64_t budget = default_search_budget)
{
    require_edges_of_size_two(h);
    ChromaticResult result;
    if (h.vertex_count() == 0)
        return result;
    WorkBudget work(budget);
    // Distinct colours on every vertex always work.
    for (std::size_t k = h.edge_count() == 0 ? 1 : 2; k <= h.vertex_count(); ++k) {
        Coloring found;
        auto outcome = hypergraph_k_colorable(h, k, work, &found);
        if (outcome == SearchOutcome::found) {
            result.chromatic_number = k;
            result.witness = std::move(found);
            result.work = work.used();
            return result;
        }
        if (outcome == SearchOutcome::budget_exhausted)
            throw BudgetExceeded("hypergraph colouring search exhausted its budget", k, h.vertex_count());
    }
    throw InternalContradiction("no hypergraph colouring with one colour per vertex");
}

/// Exact strong chromatic number: chromatic number of the clique expansion.
inline ChromaticResult strong_chromatic(const Hypergraph & h, std::uint64_t budget = default_search_budget)
{
    require_edges_of_size_two(h);
    return chromatic_number(h.clique_expansion(), budget);
}

} // namespace chiforge

#endif // CHIFORGE_ORACLE_HYPERGRAPH_HPP
