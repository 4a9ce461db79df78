#ifndef CHIFORGE_ORACLE_INDUCED_HPP
#define CHIFORGE_ORACLE_INDUCED_HPP

#include "chiforge/graph.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace chiforge {

/// embedding[x] is the host vertex playing pattern vertex x.
using Embedding = std::vector<Vertex>;

namespace detail {

    class InducedSearch {
    public:
        InducedSearch(const Graph & host, const Graph & pattern) :
            host_(host), pattern_(pattern), map_(pattern.vertex_count(), 0),
            used_(host.vertex_count(), 0)
        {
            plan_order();
        }

        std::optional<Embedding> run()
        {
            if (pattern_.vertex_count() > host_.vertex_count())
                return std::nullopt;
            if (extend(0))
                return map_;
            return std::nullopt;
        }

    private:
        // Most already-placed neighbours first, then highest degree, then id.
        void plan_order()
        {
            const std::size_t k = pattern_.vertex_count();
            std::vector<std::size_t> placed_neighbours(k, 0);
            std::vector<std::uint8_t> taken(k, 0);
            anchor_.assign(k, std::nullopt);
            for (std::size_t step = 0; step < k; ++step) {
                Vertex best = 0;
                bool have = false;
                for (Vertex x = 0; x < k; ++x) {
                    if (taken[x])
                        continue;
                    if (! have || placed_neighbours[x] > placed_neighbours[best]
                        || (placed_neighbours[x] == placed_neighbours[best] && pattern_.degree(x) > pattern_.degree(best))) {
                        best = x;
                        have = true;
                    }
                }
                taken[best] = 1;
                order_.push_back(best);
                for (Vertex y : pattern_.neighbors(best)) {
                    if (taken[y] && ! anchor_[best])
                        anchor_[best] = y;
                    ++placed_neighbours[y];
                }
            }
        }

        bool consistent(Vertex x, Vertex candidate) const
        {
            if (used_[candidate] || host_.degree(candidate) < pattern_.degree(x))
                return false;
            for (Vertex y : order_) {
                if (y == x)
                    break;
                if (pattern_.adjacent(x, y) != host_.adjacent(candidate, map_[y]))
                    return false;
            }
            return true;
        }

        bool try_candidate(std::size_t depth, Vertex x, Vertex candidate)
        {
            if (! consistent(x, candidate))
                return false;
            map_[x] = candidate;
            used_[candidate] = 1;
            if (extend(depth + 1))
                return true;
            used_[candidate] = 0;
            return false;
        }

        bool extend(std::size_t depth)
        {
            if (depth == order_.size())
                return true;
            Vertex x = order_[depth];
            if (anchor_[x]) {
                for (Vertex c : host_.neighbors(map_[*anchor_[x]]))
                    if (try_candidate(depth, x, c))
                        return true;
            }
            else {
                for (Vertex c = 0; c < host_.vertex_count(); ++c)
                    if (try_candidate(depth, x, c))
                        return true;
            }
            return false;
        }

        const Graph & host_;
        const Graph & pattern_;
        std::vector<Vertex> order_;
        std::vector<std::optional<Vertex>> anchor_;
        Embedding map_;
        std::vector<std::uint8_t> used_;
    };

} // namespace detail

/// An induced copy of `pattern` in `host`, or empty if the host is
/// pattern-free. Deterministic backtracking with degree and adjacency
/// pruning; candidates for a vertex with a placed neighbour are drawn from
/// that neighbour's image's neighbourhood.
inline std::optional<Embedding> contains_induced(const Graph & host, const Graph & pattern)
{
    return detail::InducedSearch(host, pattern).run();
}

inline bool is_induced_embedding(const Graph & host, const Graph & pattern, const Embedding & map)
{
    if (map.size() != pattern.vertex_count())
        return false;
    for (Vertex x = 0; x < map.size(); ++x) {
        if (map[x] >= host.vertex_count())
            return false;
        for (Vertex y = x + 1; y < map.size(); ++y)
            if (map[x] == map[y] || pattern.adjacent(x, y) != host.adjacent(map[x], map[y]))
                return false;
    }
    return true;
}

namespace detail {

    class InducedHyperSearch {
    public:
        InducedHyperSearch(const Hypergraph & host, const Hypergraph & pattern) :
            host_(host), pattern_(pattern), host_incidence_(host.incidence()),
            map_(pattern.vertex_count(), 0), inverse_(host.vertex_count(), none), used_(host.vertex_count(), 0)
        {
        }

        std::optional<Embedding> run()
        {
            if (pattern_.vertex_count() > host_.vertex_count())
                return std::nullopt;
            if (extend(0))
                return map_;
            return std::nullopt;
        }

    private:
        static constexpr Vertex none = ~Vertex{0};

        // After placing pattern vertex x at host vertex c: every pattern edge
        // now fully placed must map to a host edge, and every host edge through
        // c whose vertices are all images must come from a pattern edge.
        bool consistent(Vertex x, Vertex c) const
        {
            for (const auto & e : pattern_.edges()) {
                if (std::find(e.begin(), e.end(), x) == e.end())
                    continue;
                Hypergraph::Edge image;
                bool complete = true;
                for (Vertex y : e) {
                    if (y > x) {
                        complete = false;
                        break;
                    }
                    image.push_back(y == x ? c : map_[y]);
                }
                if (! complete)
                    continue;
                std::sort(image.begin(), image.end());
                if (! host_.has_edge(image))
                    return false;
            }
            for (std::size_t ei : host_incidence_[c]) {
                const auto & e = host_.edge(ei);
                Hypergraph::Edge preimage;
                bool inside = true;
                for (Vertex v : e) {
                    Vertex p = v == c ? x : inverse_[v];
                    if (p == none) {
                        inside = false;
                        break;
                    }
                    preimage.push_back(p);
                }
                if (! inside)
                    continue;
                std::sort(preimage.begin(), preimage.end());
                if (! pattern_.has_edge(preimage))
                    return false;
            }
            return true;
        }

        bool extend(Vertex x)
        {
            if (x == pattern_.vertex_count())
                return true;
            for (Vertex c = 0; c < host_.vertex_count(); ++c) {
                if (used_[c] || ! consistent(x, c))
                    continue;
                map_[x] = c;
                inverse_[c] = x;
                used_[c] = 1;
                if (extend(x + 1))
                    return true;
                used_[c] = 0;
                inverse_[c] = none;
            }
            return false;
        }

        const Hypergraph & host_;
        const Hypergraph & pattern_;
        std::vector<std::vector<std::size_t>> host_incidence_;
        Embedding map_;
        std::vector<Vertex> inverse_;
        std::vector<std::uint8_t> used_;
    };

} // namespace detail

/// An injective map under which `pattern` is exactly the sub-hypergraph of
/// `host` induced on the image, or empty.
inline std::optional<Embedding> contains_induced(const Hypergraph & host, const Hypergraph & pattern)
{
    return detail::InducedHyperSearch(host, pattern).run();
}

inline bool is_induced_embedding(const Hypergraph & host, const Hypergraph & pattern, const Embedding & map)
{
    if (map.size() != pattern.vertex_count())
        return false;
    std::vector<Vertex> image(map.begin(), map.end());
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end())
        return false;
    for (Vertex v : image)
        if (v >= host.vertex_count())
            return false;
    // Induced sub-hypergraph on the image, with vertex i = map[i].
    Hypergraph sub = host.induced(map);
    return sub == pattern;
}

} // namespace chiforge

#endif // CHIFORGE_ORACLE_INDUCED_HPP
