#ifndef CHIFORGE_BASE_PROPERTIES_HPP
#define CHIFORGE_BASE_PROPERTIES_HPP

#include "chiforge/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace chiforge {

/// Marker for "the underlying graph has no cycle" (within the length cap).
struct NoCycle {
    friend bool operator==(NoCycle, NoCycle) { return true; }
};

using CycleMinimum = std::variant<NoCycle, std::size_t>;

struct BaseReport {
    bool acyclic = false;
    bool unique_paths = false;
    /// Filled in by verify_direction_changes only.
    std::optional<CycleMinimum> min_direction_changes;
    /// A cycle attaining the minimum, as a vertex sequence.
    std::vector<Vertex> witness_cycle;
    std::size_t cycles_examined = 0;
    /// Set when the enumeration budget ran out before every cycle was seen.
    bool partial = false;
    /// Verdict against the requested minimum; empty when the enumeration was
    /// partial and no violating cycle had been seen.
    std::optional<bool> meets_minimum;
};

namespace detail {

    // Saturating path counts, capped at 2, from every ancestor of `target`.
    inline bool unique_paths_into(const Digraph & d, Vertex target, std::span<const std::size_t> topo_index,
        std::vector<std::uint8_t> & count, std::vector<std::uint32_t> & stamp, std::uint32_t mark)
    {
        std::vector<Vertex> ancestors{target};
        stamp[target] = mark;
        for (std::size_t i = 0; i < ancestors.size(); ++i)
            for (Vertex a : d.in(ancestors[i]))
                if (stamp[a] != mark) {
                    stamp[a] = mark;
                    ancestors.push_back(a);
                }
        std::sort(ancestors.begin(), ancestors.end(),
            [&](Vertex a, Vertex b) { return topo_index[a] > topo_index[b]; });
        for (Vertex a : ancestors) {
            if (a == target) {
                count[a] = 1;
                continue;
            }
            unsigned total = 0;
            for (Vertex b : d.out(a))
                if (stamp[b] == mark)
                    total += count[b];
            count[a] = static_cast<std::uint8_t>(std::min(total, 2u));
            if (count[a] >= 2)
                return false;
        }
        return true;
    }

} // namespace detail

/// Acyclicity and the at-most-one-directed-path property. Two distinct
/// directed paths with common ends first re-join at a vertex of in-degree at
/// least two, so path counting is only run backwards from such vertices.
inline BaseReport check_base_properties(const Digraph & d)
{
    BaseReport report;
    auto topo = d.topological_order();
    report.acyclic = topo.has_value();
    if (! report.acyclic)
        return report;

    std::vector<std::size_t> topo_index(d.vertex_count());
    for (std::size_t i = 0; i < topo->size(); ++i)
        topo_index[(*topo)[i]] = i;

    std::vector<std::uint8_t> count(d.vertex_count(), 0);
    std::vector<std::uint32_t> stamp(d.vertex_count(), 0);
    std::uint32_t mark = 0;
    report.unique_paths = true;
    for (Vertex w = 0; w < d.vertex_count() && report.unique_paths; ++w)
        if (d.in(w).size() >= 2)
            report.unique_paths = detail::unique_paths_into(d, w, topo_index, count, stamp, ++mark);
    return report;
}

/// Walks the descendants of a source vertex in a digraph with unique directed
/// paths, reporting each with its distance. Reusable across sources.
class DescendantWalker {
public:
    explicit DescendantWalker(const Digraph & d) : d_(d), stamp_(d.vertex_count(), 0) {}

    /// Calls visit(v, distance) for every v reachable from `source` (source
    /// excluded). Throws PreconditionError if some vertex is reached twice,
    /// i.e. the distance would be ambiguous.
    template <typename Visit>
    void walk(Vertex source, Visit && visit)
    {
        ++mark_;
        stack_.clear();
        stamp_[source] = mark_;
        stack_.emplace_back(source, 0);
        while (! stack_.empty()) {
            auto [v, dist] = stack_.back();
            stack_.pop_back();
            for (Vertex w : d_.out(v)) {
                if (stamp_[w] == mark_)
                    throw PreconditionError("two directed paths from " + std::to_string(source) + " to " + std::to_string(w));
                stamp_[w] = mark_;
                visit(w, dist + 1);
                stack_.emplace_back(w, dist + 1);
            }
        }
    }

private:
    const Digraph & d_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t mark_ = 0;
    std::vector<std::pair<Vertex, std::uint64_t>> stack_;
};

/// Length of the unique directed path from u to v, or empty if v is not
/// reachable from u. Throws when u reaches some vertex by two paths.
inline std::optional<std::uint64_t> reach_distance(const Digraph & d, Vertex u, Vertex v)
{
    if (u >= d.vertex_count() || v >= d.vertex_count())
        throw PreconditionError("vertex out of range");
    std::optional<std::uint64_t> result;
    DescendantWalker walker(d);
    walker.walk(u, [&](Vertex w, std::uint64_t dist) {
        if (w == v)
            result = dist;
    });
    return result;
}

/// d(u,v) for every reachable ordered pair.
class DistanceTable {
public:
    explicit DistanceTable(const Digraph & d) : rows_(d.vertex_count())
    {
        DescendantWalker walker(d);
        for (Vertex u = 0; u < d.vertex_count(); ++u) {
            walker.walk(u, [&](Vertex w, std::uint64_t dist) { rows_[u].emplace_back(w, dist); });
            std::sort(rows_[u].begin(), rows_[u].end());
        }
    }

    std::optional<std::uint64_t> at(Vertex u, Vertex v) const
    {
        const auto & row = rows_[u];
        auto it = std::lower_bound(row.begin(), row.end(), std::pair<Vertex, std::uint64_t>{v, 0});
        if (it == row.end() || it->first != v)
            return std::nullopt;
        return it->second;
    }

    /// Reachable (vertex, distance) pairs from u, sorted by vertex.
    std::span<const std::pair<Vertex, std::uint64_t>> from(Vertex u) const { return rows_[u]; }

private:
    std::vector<std::vector<std::pair<Vertex, std::uint64_t>>> rows_;
};

/// Number of vertices of the cycle at which both incident arcs point in, or
/// both point out.
inline std::size_t direction_changes(const Digraph & d, std::span<const Vertex> cycle)
{
    std::size_t changes = 0;
    const std::size_t k = cycle.size();
    for (std::size_t i = 0; i < k; ++i) {
        Vertex prev = cycle[(i + k - 1) % k], here = cycle[i], next = cycle[(i + 1) % k];
        bool in_from_prev = d.has_arc(prev, here);
        bool out_to_next = d.has_arc(here, next);
        if (in_from_prev != out_to_next)
            ++changes;
    }
    return changes;
}

struct CycleEnumerationLimits {
    /// Longest cycle (in vertices) to look at; empty means no cap.
    std::optional<std::size_t> max_length;
    /// DFS extension steps allowed before the report is flagged partial.
    std::uint64_t work = 50'000'000;
};

/// Enumerates every cycle of the underlying graph, each exactly once (rooted
/// at its smallest vertex, one orientation), and reports the fewest
/// direction changes seen.
inline BaseReport verify_direction_changes(const Digraph & d, std::size_t minimum, CycleEnumerationLimits limits = {})
{
    BaseReport report = check_base_properties(d);
    Graph g = d.underlying();
    WorkBudget budget(limits.work);
    const std::size_t cap = limits.max_length.value_or(g.vertex_count());

    std::optional<std::size_t> best;
    std::vector<Vertex> path;
    std::vector<std::uint8_t> on_path(g.vertex_count(), 0);
    std::vector<std::size_t> next_index;

    for (Vertex root = 0; root < g.vertex_count() && ! budget.exhausted(); ++root) {
        path.assign(1, root);
        next_index.assign(1, 0);
        on_path[root] = 1;
        while (! path.empty()) {
            Vertex top = path.back();
            auto nbrs = g.neighbors(top);
            std::size_t & idx = next_index.back();
            if (idx == nbrs.size() || ! budget.charge()) {
                on_path[top] = 0;
                path.pop_back();
                next_index.pop_back();
                if (budget.exhausted())
                    break;
                continue;
            }
            Vertex w = nbrs[idx++];
            if (w == root) {
                if (path.size() >= 3 && path[1] < top) {
                    ++report.cycles_examined;
                    auto changes = direction_changes(d, path);
                    if (! best || changes < *best) {
                        best = changes;
                        report.witness_cycle = path;
                    }
                }
                continue;
            }
            if (w < root || on_path[w] || path.size() >= cap)
                continue;
            on_path[w] = 1;
            path.push_back(w);
            next_index.push_back(0);
        }
        for (Vertex v : path)
            on_path[v] = 0;
    }

    report.partial = budget.exhausted();
    if (best)
        report.min_direction_changes = *best;
    else
        report.min_direction_changes = NoCycle{};
    if (best && *best < minimum)
        report.meets_minimum = false;
    else if (! report.partial)
        report.meets_minimum = true;
    return report;
}

} // namespace chiforge

#endif // CHIFORGE_BASE_PROPERTIES_HPP
