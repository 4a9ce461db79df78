#ifndef CHIFORGE_ORACLE_GIRTH_HPP
#define CHIFORGE_ORACLE_GIRTH_HPP

#include "chiforge/graph.hpp"

#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chiforge {

/// A length that may be infinite (girth of a forest, odd girth of a
/// bipartite graph).
class Extended {
public:
    constexpr Extended() = default;
    constexpr Extended(std::size_t value) : value_(value) {}

    static constexpr Extended infinite() { return Extended(); }

    constexpr bool is_infinite() const noexcept { return ! value_.has_value(); }
    constexpr bool is_finite() const noexcept { return value_.has_value(); }
    constexpr std::size_t value() const { return value_.value(); }

    friend constexpr bool operator==(const Extended &, const Extended &) = default;

    friend constexpr std::strong_ordering operator<=>(const Extended & a, const Extended & b)
    {
        if (a.is_infinite() || b.is_infinite())
            return a.is_infinite() <=> b.is_infinite();
        return *a.value_ <=> *b.value_;
    }

    std::string to_string() const { return is_infinite() ? "inf" : std::to_string(*value_); }

private:
    std::optional<std::size_t> value_;
};

struct GirthStats {
    Extended girth;
    Extended odd_girth;

    friend bool operator==(const GirthStats &, const GirthStats &) = default;
};

namespace detail {

    // One breadth-first search from `root`. Any non-tree edge u-w closes a
    // walk of length dist[u] + dist[w] + 1 that contains a cycle at most that
    // long; an edge inside one level closes an odd walk. The search stops
    // once no deeper level can improve either bound.
    inline void girth_from_root(const Graph & g, Vertex root, std::size_t & girth, std::size_t & odd,
        std::vector<std::size_t> & dist, std::vector<Vertex> & parent, std::vector<Vertex> & touched)
    {
        constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
        std::vector<Vertex> frontier{root};
        dist[root] = 0;
        parent[root] = root;
        touched.push_back(root);
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            Vertex u = frontier[head];
            std::size_t du = dist[u];
            if (2 * du + 1 >= girth && 2 * du + 1 >= odd)
                break;
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] == none) {
                    dist[w] = du + 1;
                    parent[w] = u;
                    touched.push_back(w);
                    frontier.push_back(w);
                }
                else if (w != parent[u]) {
                    girth = std::min(girth, du + dist[w] + 1);
                    if (dist[w] == du)
                        odd = std::min(odd, 2 * du + 1);
                }
            }
        }
        for (Vertex v : touched)
            dist[v] = none;
        touched.clear();
    }

} // namespace detail

/// Girth and odd girth, each exact when `roots` meets some shortest cycle
/// (respectively some shortest odd cycle), and an upper bound otherwise.
/// Shortest (odd) cycles are isometric, so a search rooted on one finds it.
inline GirthStats girth_stats(const Graph & g, std::span<const Vertex> roots)
{
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::size_t girth = none, odd = none;
    std::vector<std::size_t> dist(g.vertex_count(), none);
    std::vector<Vertex> parent(g.vertex_count(), 0);
    std::vector<Vertex> touched;
    for (Vertex r : roots)
        detail::girth_from_root(g, r, girth, odd, dist, parent, touched);
    GirthStats stats;
    if (girth != none)
        stats.girth = girth;
    if (odd != none)
        stats.odd_girth = odd;
    return stats;
}

/// Exact girth and odd girth (breadth-first search from every vertex).
inline GirthStats girth_stats(const Graph & g)
{
    auto roots = identity_order(g.vertex_count());
    return girth_stats(g, roots);
}

/// A shortest cycle as a vertex sequence, or empty for a forest.
inline std::optional<std::vector<Vertex>> shortest_cycle(const Graph & g)
{
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::optional<std::vector<Vertex>> best;
    std::vector<std::size_t> dist(g.vertex_count(), none);
    std::vector<Vertex> parent(g.vertex_count(), 0);
    for (Vertex root = 0; root < g.vertex_count(); ++root) {
        std::vector<Vertex> frontier{root};
        dist[root] = 0;
        parent[root] = root;
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            Vertex u = frontier[head];
            if (best && 2 * dist[u] + 1 >= best->size())
                break;
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] == none) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    frontier.push_back(w);
                }
                else if (w != parent[u] && (! best || dist[u] + dist[w] + 1 < best->size())) {
                    // Climb both tree paths to their meeting point.
                    std::vector<Vertex> left{u}, right{w};
                    while (left.back() != right.back()) {
                        if (dist[left.back()] >= dist[right.back()])
                            left.push_back(parent[left.back()]);
                        else
                            right.push_back(parent[right.back()]);
                    }
                    right.pop_back();
                    std::vector<Vertex> cycle(left.rbegin(), left.rend());
                    cycle.insert(cycle.end(), right.begin(), right.end());
                    if (cycle.size() >= 3 && (! best || cycle.size() < best->size()))
                        best = std::move(cycle);
                }
            }
        }
        for (Vertex v : frontier)
            dist[v] = none;
    }
    return best;
}

} // namespace chiforge

#endif // CHIFORGE_ORACLE_GIRTH_HPP
