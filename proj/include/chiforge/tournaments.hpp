#ifndef CHIFORGE_TOURNAMENTS_HPP
#define CHIFORGE_TOURNAMENTS_HPP

#include "chiforge/errors.hpp"
#include "chiforge/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chiforge {

/// A tournament together with a total order of its vertices.
class OrderedTournament {
public:
    /// `arcs` must contain exactly one of (u, v), (v, u) for every pair.
    OrderedTournament(std::size_t n, std::span<const VertexPair> arcs, std::vector<Vertex> order) :
        n_(n), beats_(n * n, 0), order_(std::move(order))
    {
        for (auto [u, v] : arcs) {
            if (u >= n || v >= n || u == v)
                throw PreconditionError("bad tournament arc " + std::to_string(u) + " -> " + std::to_string(v));
            if (beats_[u * n + v] || beats_[v * n + u])
                throw PreconditionError("pair " + std::to_string(u) + ", " + std::to_string(v) + " has two arcs");
            beats_[u * n + v] = 1;
        }
        if (arcs.size() != n * (n - (n > 0)) / 2)
            throw PreconditionError("a tournament on " + std::to_string(n) + " vertices needs " + std::to_string(n * (n - (n > 0)) / 2) + " arcs");
        rank_ = order_ranks(order_, n);
    }

    OrderedTournament(std::size_t n, std::span<const VertexPair> arcs) : OrderedTournament(n, arcs, identity_order(n)) {}

    std::size_t vertex_count() const noexcept { return n_; }
    bool beats(Vertex u, Vertex v) const { return beats_[u * n_ + v] != 0; }
    const std::vector<Vertex> & order() const noexcept { return order_; }
    std::size_t rank(Vertex v) const { return rank_[v]; }

    std::vector<VertexPair> arcs() const
    {
        std::vector<VertexPair> out;
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v = 0; v < n_; ++v)
                if (beats(u, v))
                    out.emplace_back(u, v);
        return out;
    }

    friend bool operator==(const OrderedTournament & a, const OrderedTournament & b)
    {
        return a.n_ == b.n_ && a.beats_ == b.beats_ && a.order_ == b.order_;
    }

private:
    std::size_t n_;
    std::vector<std::uint8_t> beats_;
    std::vector<Vertex> order_;
    std::vector<std::size_t> rank_;
};

/// Edge {x, y} whenever the arc between them points from the later vertex
/// to the earlier one.
inline OrderedGraph back_edge_graph(const OrderedTournament & t)
{
    std::vector<VertexPair> edges;
    for (Vertex u = 0; u < t.vertex_count(); ++u)
        for (Vertex v = u + 1; v < t.vertex_count(); ++v) {
            bool u_first = t.rank(u) < t.rank(v);
            if (u_first ? t.beats(v, u) : t.beats(u, v))
                edges.emplace_back(u, v);
        }
    return {Graph(t.vertex_count(), std::span<const VertexPair>(edges)), t.order()};
}

/// Orients x -> y for x before y unless xy is an edge, in which case y -> x.
inline OrderedTournament tournament_from(const Graph & l, const std::vector<Vertex> & order)
{
    auto rank = order_ranks(order, l.vertex_count());
    std::vector<VertexPair> arcs;
    for (Vertex u = 0; u < l.vertex_count(); ++u)
        for (Vertex v = u + 1; v < l.vertex_count(); ++v) {
            auto [first, second] = rank[u] < rank[v] ? VertexPair{u, v} : VertexPair{v, u};
            if (l.adjacent(u, v))
                arcs.emplace_back(second, first);
            else
                arcs.emplace_back(first, second);
        }
    return OrderedTournament(l.vertex_count(), arcs, order);
}

inline OrderedTournament tournament_from(const OrderedGraph & l) { return tournament_from(l.graph, l.order); }

/// Transitive tournament on n vertices, u -> v for u < v.
inline OrderedTournament transitive_tournament(std::size_t n)
{
    std::vector<VertexPair> arcs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            arcs.emplace_back(u, v);
    return OrderedTournament(n, arcs);
}

/// Splits `seq` into increasing subsequences (with respect to `rank`) by
/// first-fit patience sorting. The number of parts equals the length of a
/// longest decreasing subsequence, which is the minimum possible.
inline std::vector<std::vector<Vertex>> dilworth_partition(std::span<const Vertex> seq, std::span<const std::size_t> rank)
{
    std::vector<Vertex> sorted(seq.begin(), seq.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("dilworth_partition: duplicate element");
    for (Vertex v : seq)
        if (v >= rank.size())
            throw PreconditionError("dilworth_partition: element without a rank");

    // Pile tops decrease from left to right, so the first pile with a
    // smaller top is found by binary search.
    std::vector<std::vector<Vertex>> piles;
    for (Vertex x : seq) {
        auto it = std::partition_point(piles.begin(), piles.end(), [&](const auto & pile) { return rank[pile.back()] > rank[x]; });
        if (it == piles.end())
            piles.push_back({x});
        else
            it->push_back(x);
    }
    return piles;
}

/// Natural order on the values themselves.
inline std::vector<std::vector<Vertex>> dilworth_partition(std::span<const Vertex> seq)
{
    std::size_t top = seq.empty() ? 0 : *std::max_element(seq.begin(), seq.end()) + 1;
    std::vector<std::size_t> rank(top);
    std::iota(rank.begin(), rank.end(), 0);
    return dilworth_partition(seq, rank);
}

struct TournamentColoring {
    std::size_t parts = 0;
    /// Each part induces a transitive subtournament.
    std::vector<std::vector<Vertex>> partition;
};

inline constexpr std::size_t tournament_exact_cap = 16;

/// A tournament is transitive iff its score sequence has no repeats.
inline bool is_transitive(const OrderedTournament & t, std::span<const Vertex> part)
{
    std::vector<std::size_t> score;
    for (Vertex u : part) {
        std::size_t s = 0;
        for (Vertex v : part)
            s += u != v && t.beats(u, v);
        score.push_back(s);
    }
    std::sort(score.begin(), score.end());
    return std::adjacent_find(score.begin(), score.end()) == score.end();
}

/// Fewest transitive parts, by dynamic programming over vertex subsets.
/// Above the cap, throws BudgetExceeded carrying the trivial lower bound
/// and a greedy upper bound.
inline TournamentColoring tournament_chromatic(const OrderedTournament & t)
{
    const std::size_t n = t.vertex_count();
    if (n > tournament_exact_cap) {
        std::vector<std::vector<Vertex>> greedy;
        for (Vertex v = 0; v < n; ++v) {
            bool placed = false;
            for (auto & part : greedy) {
                part.push_back(v);
                if (is_transitive(t, part)) {
                    placed = true;
                    break;
                }
                part.pop_back();
            }
            if (! placed)
                greedy.push_back({v});
        }
        std::vector<Vertex> all(n);
        std::iota(all.begin(), all.end(), 0);
        throw BudgetExceeded("tournament chromatic number is exact only up to " + std::to_string(tournament_exact_cap) + " vertices",
            is_transitive(t, all) ? 1 : 2, greedy.size());
    }
    if (n == 0)
        return {};

    const std::uint32_t full = (1u << n) - 1;
    std::vector<std::uint32_t> beats_mask(n, 0);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v && t.beats(u, v))
                beats_mask[u] |= 1u << v;

    std::vector<std::uint8_t> transitive(full + 1, 0);
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        std::uint32_t seen = 0;
        bool ok = true;
        for (std::uint32_t rest = mask; rest && ok; rest &= rest - 1) {
            auto u = static_cast<unsigned>(__builtin_ctz(rest));
            auto s = static_cast<unsigned>(__builtin_popcount(beats_mask[u] & mask));
            ok = ! (seen >> s & 1);
            seen |= 1u << s;
        }
        transitive[mask] = ok;
    }

    std::vector<std::uint8_t> best(full + 1, 0xff);
    std::vector<std::uint32_t> choice(full + 1, 0);
    best[0] = 0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::uint32_t low = mask & -mask;
        std::uint32_t rest = mask ^ low;
        // Parts containing the lowest vertex: low plus any subset of rest.
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            std::uint32_t part = sub | low;
            if (transitive[part] && best[mask ^ part] + 1 < best[mask]) {
                best[mask] = static_cast<std::uint8_t>(best[mask ^ part] + 1);
                choice[mask] = part;
            }
            if (sub == 0)
                break;
        }
    }

    TournamentColoring out;
    out.parts = best[full];
    for (std::uint32_t mask = full; mask; mask ^= choice[mask]) {
        std::vector<Vertex> part;
        for (Vertex v = 0; v < n; ++v)
            if (choice[mask] >> v & 1)
                part.push_back(v);
        out.partition.push_back(std::move(part));
    }
    return out;
}

struct RamseyCheck {
    bool holds = false;
    /// An ordering of f (smallest first) with no ordered induced copy.
    std::optional<std::vector<Vertex>> failing_order;
    std::size_t orderings_checked = 0;
};

inline constexpr std::size_t ramsey_vertex_cap = 8;

namespace detail {

    // Does f, read in `order`, contain b (read in b.order) as an ordered
    // induced subgraph? Positions are chosen increasingly.
    inline bool has_ordered_copy(const Graph & f, std::span<const Vertex> order, const OrderedGraph & b)
    {
        const std::size_t k = b.order.size();
        std::vector<Vertex> chosen;
        auto extend = [&](auto && self, std::size_t from) -> bool {
            if (chosen.size() == k)
                return true;
            for (std::size_t pos = from; pos + (k - chosen.size()) <= order.size(); ++pos) {
                Vertex cand = order[pos];
                Vertex pattern = b.order[chosen.size()];
                bool ok = true;
                for (std::size_t i = 0; i < chosen.size() && ok; ++i)
                    ok = f.adjacent(chosen[i], cand) == b.graph.adjacent(b.order[i], pattern);
                if (! ok)
                    continue;
                chosen.push_back(cand);
                if (self(self, pos + 1))
                    return true;
                chosen.pop_back();
            }
            return false;
        };
        return extend(extend, 0);
    }

} // namespace detail

/// Checks that every ordering of f contains (b, <) as an ordered induced
/// subgraph. Orderings are tried in lexicographic order.
inline RamseyCheck ordered_ramsey_check(const Graph & f, const OrderedGraph & b)
{
    if (f.vertex_count() > ramsey_vertex_cap)
        throw PreconditionError("ordered Ramsey check enumerates all orderings; at most " + std::to_string(ramsey_vertex_cap) + " vertices");
    if (b.order.size() != b.graph.vertex_count())
        throw PreconditionError("pattern order does not cover its vertices");
    RamseyCheck out;
    std::vector<Vertex> order(f.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    do {
        ++out.orderings_checked;
        if (! detail::has_ordered_copy(f, order, b)) {
            out.failing_order = order;
            return out;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    out.holds = true;
    return out;
}

} // namespace chiforge

#endif // CHIFORGE_TOURNAMENTS_HPP
