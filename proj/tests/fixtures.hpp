#ifndef CHIFORGE_TESTS_FIXTURES_HPP
#define CHIFORGE_TESTS_FIXTURES_HPP

#include "chiforge/graph.hpp"
#include "chiforge/random.hpp"

#include <vector>

namespace chiforge::fixtures {

inline Graph random_graph(std::size_t n, std::uint64_t num, std::uint64_t den, Rng & rng)
{
    std::vector<VertexPair> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.chance(num, den))
                edges.emplace_back(u, v);
    return Graph(n, std::span<const VertexPair>(edges));
}

// Arcs go from smaller to larger id after a random relabelling, so the
// result is acyclic but its topological order is not the identity.
inline Digraph random_dag(std::size_t n, std::uint64_t num, std::uint64_t den, Rng & rng)
{
    std::vector<Vertex> label(n);
    for (Vertex i = 0; i < n; ++i)
        label[i] = i;
    rng.shuffle(label);
    std::vector<VertexPair> arcs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.chance(num, den))
                arcs.emplace_back(label[u], label[v]);
    return Digraph(n, std::span<const VertexPair>(arcs));
}

// Number of directed paths from u to v, by plain recursion.
inline std::uint64_t count_paths(const Digraph & d, Vertex u, Vertex v)
{
    if (u == v)
        return 1;
    std::uint64_t total = 0;
    for (Vertex w : d.out(u))
        total += count_paths(d, w, v);
    return total;
}

inline std::size_t longest_path_from(const Digraph & d, Vertex u)
{
    std::size_t best = 0;
    for (Vertex w : d.out(u))
        best = std::max(best, 1 + longest_path_from(d, w));
    return best;
}

// Every simple cycle of g (at least 3 vertices) as a vertex sequence,
// each listed once, by brute-force depth-first search.
inline std::vector<std::vector<Vertex>> all_cycles(const Graph & g)
{
    std::vector<std::vector<Vertex>> cycles;
    std::vector<Vertex> path;
    std::vector<bool> on(g.vertex_count(), false);
    for (Vertex root = 0; root < g.vertex_count(); ++root) {
        auto extend = [&](auto && self, Vertex v) -> void {
            for (Vertex w : g.neighbors(v)) {
                if (w == root && path.size() >= 3 && path[1] < path.back())
                    cycles.push_back(path);
                if (w <= root || on[w])
                    continue;
                on[w] = true;
                path.push_back(w);
                self(self, w);
                path.pop_back();
                on[w] = false;
            }
        };
        path = {root};
        on[root] = true;
        extend(extend, root);
        on[root] = false;
    }
    return cycles;
}

} // namespace chiforge::fixtures

#endif // CHIFORGE_TESTS_FIXTURES_HPP
