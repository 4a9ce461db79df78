#ifndef CHIFORGE_ORACLE_LONGEST_PATH_HPP
#define CHIFORGE_ORACLE_LONGEST_PATH_HPP

#include "chiforge/graph.hpp"
#include "chiforge/oracle/coloring.hpp"

#include <algorithm>
#include <vector>

namespace chiforge {

/// Colours each vertex by the length of the longest directed path starting
/// at it. Every arc u->v has colour(u) > colour(v), so the colouring is
/// proper for the underlying graph, and the colours used are exactly
/// 0..(longest path length).
inline Coloring longest_path_coloring(const Digraph & d)
{
    auto topo = d.topological_order();
    if (! topo)
        throw PreconditionError("longest-path colouring needs an acyclic digraph");
    std::vector<Color> color(d.vertex_count(), 0);
    for (auto it = topo->rbegin(); it != topo->rend(); ++it)
        for (Vertex w : d.out(*it))
            color[*it] = std::max(color[*it], color[w] + 1);
    return Coloring::from(std::move(color));
}

} // namespace chiforge

#endif // CHIFORGE_ORACLE_LONGEST_PATH_HPP
