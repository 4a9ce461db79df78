#ifndef CHIFORGE_ORACLE_CLIQUE_HPP
#define CHIFORGE_ORACLE_CLIQUE_HPP

#include "chiforge/graph.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace chiforge {

struct CliqueResult {
    std::size_t size = 0;
    /// A maximum clique, sorted.
    std::vector<Vertex> vertices;
};

namespace detail {

    // Branch and bound with a greedy colouring bound on the candidate set.
    class MaxClique {
    public:
        explicit MaxClique(const Graph & g) : g_(g) {}

        CliqueResult run()
        {
            std::vector<Vertex> candidates(g_.vertex_count());
            for (Vertex v = 0; v < g_.vertex_count(); ++v)
                candidates[v] = v;
            std::stable_sort(candidates.begin(), candidates.end(),
                [&](Vertex a, Vertex b) { return g_.degree(a) > g_.degree(b); });
            expand(candidates);
            std::sort(best_.begin(), best_.end());
            return CliqueResult{best_.size(), best_};
        }

    private:
        void expand(const std::vector<Vertex> & candidates)
        {
            std::vector<Vertex> order;
            std::vector<std::size_t> bound;
            colour_sort(candidates, order, bound);
            std::vector<Vertex> remaining = candidates;
            for (std::size_t i = order.size(); i-- > 0;) {
                if (current_.size() + bound[i] <= best_.size())
                    return;
                Vertex v = order[i];
                current_.push_back(v);
                std::vector<Vertex> next;
                for (Vertex w : remaining)
                    if (w != v && g_.adjacent(v, w))
                        next.push_back(w);
                if (next.empty()) {
                    if (current_.size() > best_.size())
                        best_ = current_;
                }
                else
                    expand(next);
                current_.pop_back();
                remaining.erase(std::find(remaining.begin(), remaining.end(), v));
            }
        }

        // Greedy colour classes; order lists vertices by class, bound[i] is
        // the class number (1-based) of order[i].
        void colour_sort(const std::vector<Vertex> & candidates, std::vector<Vertex> & order, std::vector<std::size_t> & bound)
        {
            std::vector<std::vector<Vertex>> classes;
            for (Vertex v : candidates) {
                auto it = std::find_if(classes.begin(), classes.end(), [&](const std::vector<Vertex> & cls) {
                    return std::none_of(cls.begin(), cls.end(), [&](Vertex w) { return g_.adjacent(v, w); });
                });
                if (it == classes.end())
                    classes.push_back({v});
                else
                    it->push_back(v);
            }
            for (std::size_t c = 0; c < classes.size(); ++c)
                for (Vertex v : classes[c]) {
                    order.push_back(v);
                    bound.push_back(c + 1);
                }
        }

        const Graph & g_;
        std::vector<Vertex> current_;
        std::vector<Vertex> best_;
    };

} // namespace detail

/// Exact clique number with a maximum clique as witness.
inline CliqueResult clique_number(const Graph & g)
{
    return detail::MaxClique(g).run();
}

inline bool is_clique(const Graph & g, std::span<const Vertex> vertices)
{
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (! g.adjacent(vertices[i], vertices[j]))
                return false;
    return true;
}

} // namespace chiforge

#endif // CHIFORGE_ORACLE_CLIQUE_HPP
