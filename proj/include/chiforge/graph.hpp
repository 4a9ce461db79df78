#ifndef CHIFORGE_GRAPH_HPP
#define CHIFORGE_GRAPH_HPP

#include "chiforge/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chiforge {

using Vertex = std::uint32_t;
using VertexPair = std::pair<Vertex, Vertex>;

/// Counts units of search work against a fixed limit.
class WorkBudget {
public:
    static constexpr std::uint64_t unlimited = std::numeric_limits<std::uint64_t>::max();

    explicit WorkBudget(std::uint64_t limit = unlimited) : limit_(limit) {}

    /// Returns false once more units have been requested than the limit allows.
    bool charge(std::uint64_t units = 1) noexcept
    {
        if (limit_ - used_ < units) {
            used_ = limit_;
            exhausted_ = true;
        }
        else
            used_ += units;
        return ! exhausted_;
    }

    bool exhausted() const noexcept { return exhausted_; }
    std::uint64_t used() const noexcept { return used_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
    bool exhausted_ = false;
};

/// Finite simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;

    explicit Graph(std::size_t n) : adjacency_(n) {}

    /// Throws PreconditionError on loops, out-of-range endpoints or repeated edges.
    Graph(std::size_t n, std::span<const VertexPair> edges) : adjacency_(n)
    {
        for (auto [u, v] : edges) {
            if (u >= n || v >= n)
                throw PreconditionError("edge endpoint out of range: {" + std::to_string(u) + "," + std::to_string(v) + "}");
            if (u == v)
                throw PreconditionError("loop at vertex " + std::to_string(u));
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto & row : adjacency_) {
            std::sort(row.begin(), row.end());
            if (std::adjacent_find(row.begin(), row.end()) != row.end())
                throw PreconditionError("repeated edge");
        }
        edge_count_ = edges.size();
    }

    Graph(std::size_t n, std::initializer_list<VertexPair> edges) :
        Graph(n, std::span<const VertexPair>(edges.begin(), edges.size()))
    {
    }

    /// Builds from an edge list, silently merging repeated edges.
    static Graph merging(std::size_t n, std::vector<VertexPair> edges)
    {
        for (auto & [u, v] : edges)
            if (u > v)
                std::swap(u, v);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return Graph(n, std::span<const VertexPair>(edges));
    }

    std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
    std::size_t degree(Vertex v) const { return adjacency_[v].size(); }

    bool adjacent(Vertex u, Vertex v) const
    {
        const auto & row = adjacency_[u];
        return std::binary_search(row.begin(), row.end(), v);
    }

    /// Edges as (u, v) with u < v, sorted.
    std::vector<VertexPair> edges() const
    {
        std::vector<VertexPair> result;
        result.reserve(edge_count_);
        for (Vertex u = 0; u < adjacency_.size(); ++u)
            for (Vertex v : adjacency_[u])
                if (u < v)
                    result.emplace_back(u, v);
        return result;
    }

    /// Subgraph induced on `vertices`; vertex i of the result is vertices[i].
    Graph induced(std::span<const Vertex> vertices) const
    {
        std::vector<std::uint32_t> position(vertex_count(), std::numeric_limits<std::uint32_t>::max());
        for (std::uint32_t i = 0; i < vertices.size(); ++i)
            position[vertices[i]] = i;
        std::vector<VertexPair> sub;
        for (std::uint32_t i = 0; i < vertices.size(); ++i)
            for (Vertex w : neighbors(vertices[i])) {
                auto j = position[w];
                if (j != std::numeric_limits<std::uint32_t>::max() && i < j)
                    sub.emplace_back(i, j);
            }
        return Graph(vertices.size(), std::span<const VertexPair>(sub));
    }

    friend bool operator==(const Graph &, const Graph &) = default;

private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Directed graph without loops, repeated arcs or antiparallel pairs, so its
/// underlying undirected graph is simple. Acyclicity is a property queried
/// through topological_order(), not a construction invariant: the base
/// property checks must be able to report cyclic input.
class Digraph {
public:
    Digraph() = default;

    explicit Digraph(std::size_t n) : out_(n), in_(n) {}

    Digraph(std::size_t n, std::span<const VertexPair> arcs) : out_(n), in_(n)
    {
        for (auto [u, v] : arcs) {
            if (u >= n || v >= n)
                throw PreconditionError("arc endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
            if (u == v)
                throw PreconditionError("loop at vertex " + std::to_string(u));
            out_[u].push_back(v);
            in_[v].push_back(u);
        }
        for (Vertex v = 0; v < n; ++v) {
            std::sort(out_[v].begin(), out_[v].end());
            std::sort(in_[v].begin(), in_[v].end());
            if (std::adjacent_find(out_[v].begin(), out_[v].end()) != out_[v].end())
                throw PreconditionError("repeated arc out of vertex " + std::to_string(v));
        }
        for (auto [u, v] : arcs)
            if (has_arc(v, u))
                throw PreconditionError("antiparallel arcs between " + std::to_string(u) + " and " + std::to_string(v));
        arc_count_ = arcs.size();
    }

    Digraph(std::size_t n, std::initializer_list<VertexPair> arcs) :
        Digraph(n, std::span<const VertexPair>(arcs.begin(), arcs.size()))
    {
    }

    std::size_t vertex_count() const noexcept { return out_.size(); }
    std::size_t arc_count() const noexcept { return arc_count_; }

    std::span<const Vertex> out(Vertex v) const { return out_[v]; }
    std::span<const Vertex> in(Vertex v) const { return in_[v]; }

    bool has_arc(Vertex u, Vertex v) const
    {
        const auto & row = out_[u];
        return std::binary_search(row.begin(), row.end(), v);
    }

    /// Arcs as (tail, head), sorted.
    std::vector<VertexPair> arcs() const
    {
        std::vector<VertexPair> result;
        result.reserve(arc_count_);
        for (Vertex u = 0; u < out_.size(); ++u)
            for (Vertex v : out_[u])
                result.emplace_back(u, v);
        return result;
    }

    /// Kahn's algorithm, always releasing the smallest ready vertex first.
    /// Empty when the digraph has a directed cycle.
    std::optional<std::vector<Vertex>> topological_order() const
    {
        std::vector<std::size_t> pending(vertex_count());
        std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
        for (Vertex v = 0; v < vertex_count(); ++v) {
            pending[v] = in_[v].size();
            if (pending[v] == 0)
                ready.push(v);
        }
        std::vector<Vertex> order;
        order.reserve(vertex_count());
        while (! ready.empty()) {
            Vertex v = ready.top();
            ready.pop();
            order.push_back(v);
            for (Vertex w : out_[v])
                if (--pending[w] == 0)
                    ready.push(w);
        }
        if (order.size() != vertex_count())
            return std::nullopt;
        return order;
    }

    bool acyclic() const { return topological_order().has_value(); }

    Graph underlying() const
    {
        auto a = arcs();
        return Graph(vertex_count(), std::span<const VertexPair>(a));
    }

    friend bool operator==(const Digraph & a, const Digraph & b) { return a.out_ == b.out_; }

private:
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
    std::size_t arc_count_ = 0;
};

/// Finite hypergraph. Each edge is a sorted set of distinct vertices; the
/// edge list itself is kept sorted and free of repeats. Edges of size one
/// are representable (the smallest Nesetril-Rodl stage needs them as
/// templates) but every oracle rejects them.
class Hypergraph {
public:
    using Edge = std::vector<Vertex>;

    Hypergraph() = default;

    explicit Hypergraph(std::size_t n) : n_(n) {}

    Hypergraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges))
    {
        for (auto & e : edges_) {
            if (e.empty())
                throw PreconditionError("empty hyperedge");
            std::sort(e.begin(), e.end());
            if (std::adjacent_find(e.begin(), e.end()) != e.end())
                throw PreconditionError("hyperedge repeats a vertex");
            if (e.back() >= n_)
                throw PreconditionError("hyperedge vertex out of range: " + std::to_string(e.back()));
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw PreconditionError("repeated hyperedge");
    }

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge> & edges() const noexcept { return edges_; }
    const Edge & edge(std::size_t i) const { return edges_[i]; }

    std::size_t min_edge_size() const
    {
        std::size_t m = std::numeric_limits<std::size_t>::max();
        for (const auto & e : edges_)
            m = std::min(m, e.size());
        return edges_.empty() ? 0 : m;
    }

    bool has_edge(const Edge & sorted_edge) const
    {
        return std::binary_search(edges_.begin(), edges_.end(), sorted_edge);
    }

    /// Indices of the edges containing each vertex.
    std::vector<std::vector<std::size_t>> incidence() const
    {
        std::vector<std::vector<std::size_t>> result(n_);
        for (std::size_t i = 0; i < edges_.size(); ++i)
            for (Vertex v : edges_[i])
                result[v].push_back(i);
        return result;
    }

    /// Graph in which every hyperedge is replaced by a clique.
    Graph clique_expansion() const
    {
        std::vector<VertexPair> pairs;
        for (const auto & e : edges_)
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::size_t j = i + 1; j < e.size(); ++j)
                    pairs.emplace_back(e[i], e[j]);
        return Graph::merging(n_, std::move(pairs));
    }

    /// Sub-hypergraph induced on `vertices` (edges entirely inside), relabelled
    /// so that vertex i of the result is vertices[i].
    Hypergraph induced(std::span<const Vertex> vertices) const
    {
        std::vector<std::uint32_t> position(n_, std::numeric_limits<std::uint32_t>::max());
        for (std::uint32_t i = 0; i < vertices.size(); ++i)
            position[vertices[i]] = i;
        std::vector<Edge> sub;
        for (const auto & e : edges_) {
            Edge mapped;
            for (Vertex v : e) {
                if (position[v] == std::numeric_limits<std::uint32_t>::max())
                    break;
                mapped.push_back(position[v]);
            }
            if (mapped.size() == e.size())
                sub.push_back(std::move(mapped));
        }
        return Hypergraph(vertices.size(), std::move(sub));
    }

    friend bool operator==(const Hypergraph &, const Hypergraph &) = default;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

/// Checks that `order` lists each of 0..n-1 exactly once and returns the
/// inverse map (rank of each vertex).
inline std::vector<std::size_t> order_ranks(std::span<const Vertex> order, std::size_t n)
{
    if (order.size() != n)
        throw PreconditionError("order has " + std::to_string(order.size()) + " entries, expected " + std::to_string(n));
    std::vector<std::size_t> rank(n, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < n; ++i) {
        if (order[i] >= n || rank[order[i]] != std::numeric_limits<std::size_t>::max())
            throw PreconditionError("order is not a permutation");
        rank[order[i]] = i;
    }
    return rank;
}

inline std::vector<Vertex> identity_order(std::size_t n)
{
    std::vector<Vertex> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = static_cast<Vertex>(i);
    return order;
}

/// Hypergraph with a total order on its vertices. order[i] is the i-th
/// smallest vertex.
class OrderedHypergraph {
public:
    OrderedHypergraph() = default;

    OrderedHypergraph(Hypergraph hypergraph, std::vector<Vertex> order) :
        hypergraph_(std::move(hypergraph)),
        order_(std::move(order)),
        rank_(order_ranks(order_, hypergraph_.vertex_count()))
    {
    }

    explicit OrderedHypergraph(Hypergraph hypergraph) :
        OrderedHypergraph(hypergraph, identity_order(hypergraph.vertex_count()))
    {
    }

    const Hypergraph & hypergraph() const noexcept { return hypergraph_; }
    const std::vector<Vertex> & order() const noexcept { return order_; }
    std::size_t rank(Vertex v) const { return rank_[v]; }

    /// Vertices of edge i listed in increasing order.
    std::vector<Vertex> ordered_edge(std::size_t i) const
    {
        auto e = hypergraph_.edge(i);
        std::sort(e.begin(), e.end(), [&](Vertex a, Vertex b) { return rank_[a] < rank_[b]; });
        return e;
    }

    friend bool operator==(const OrderedHypergraph & a, const OrderedHypergraph & b)
    {
        return a.hypergraph_ == b.hypergraph_ && a.order_ == b.order_;
    }

private:
    Hypergraph hypergraph_;
    std::vector<Vertex> order_;
    std::vector<std::size_t> rank_;
};

/// Undirected graph with a total order on its vertices; order[i] is the
/// i-th smallest vertex.
struct OrderedGraph {
    Graph graph;
    std::vector<Vertex> order;

    friend bool operator==(const OrderedGraph &, const OrderedGraph &) = default;
};

// Small named graphs used throughout tests and the CLI.
namespace named {

inline Graph path(std::size_t vertices)
{
    std::vector<VertexPair> e;
    for (Vertex i = 0; i + 1 < vertices; ++i)
        e.emplace_back(i, i + 1);
    return Graph(vertices, std::span<const VertexPair>(e));
}

inline Graph cycle(std::size_t vertices)
{
    std::vector<VertexPair> e;
    for (Vertex i = 0; i < vertices; ++i)
        e.emplace_back(std::min<Vertex>(i, (i + 1) % vertices), std::max<Vertex>(i, (i + 1) % vertices));
    return Graph(vertices, std::span<const VertexPair>(e));
}

inline Graph complete(std::size_t vertices)
{
    std::vector<VertexPair> e;
    for (Vertex i = 0; i < vertices; ++i)
        for (Vertex j = i + 1; j < vertices; ++j)
            e.emplace_back(i, j);
    return Graph(vertices, std::span<const VertexPair>(e));
}

inline Graph complete_bipartite(std::size_t a, std::size_t b)
{
    std::vector<VertexPair> e;
    for (Vertex i = 0; i < a; ++i)
        for (Vertex j = 0; j < b; ++j)
            e.emplace_back(i, static_cast<Vertex>(a + j));
    return Graph(a + b, std::span<const VertexPair>(e));
}

inline Graph petersen()
{
    return Graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                         {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}});
}

inline Hypergraph fano()
{
    return Hypergraph(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

} // namespace named

} // namespace chiforge

#endif // CHIFORGE_GRAPH_HPP
