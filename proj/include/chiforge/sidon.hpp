#ifndef CHIFORGE_SIDON_HPP
#define CHIFORGE_SIDON_HPP

#include "chiforge/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chiforge {

using Value = std::int64_t;
using Multiset = std::vector<Value>;

struct BhCheck {
    bool ok = true;
    /// Two distinct h-multisets with the same sum, when !ok.
    std::optional<std::pair<Multiset, Multiset>> collision;
};

namespace detail {

    inline void require_increasing_positive(std::span<const Value> elements)
    {
        if (elements.empty())
            throw PreconditionError("B_h check needs a non-empty set");
        for (std::size_t i = 0; i < elements.size(); ++i) {
            if (elements[i] <= 0)
                throw PreconditionError("B_h elements must be positive");
            if (i > 0 && elements[i] <= elements[i - 1])
                throw PreconditionError("B_h elements must be strictly increasing");
        }
    }

    // Calls visit(indices) for every non-decreasing index tuple of length h
    // over [0, n), in lexicographic order; stops early if visit returns false.
    template <typename Visit>
    void for_each_multiset(std::size_t n, std::size_t h, Visit && visit)
    {
        std::vector<std::size_t> idx(h, 0);
        while (true) {
            if (! visit(std::as_const(idx)))
                return;
            std::size_t pos = h;
            while (pos > 0 && idx[pos - 1] == n - 1)
                --pos;
            if (pos == 0)
                return;
            ++idx[pos - 1];
            for (std::size_t q = pos; q < h; ++q)
                idx[q] = idx[pos - 1];
        }
    }

} // namespace detail

/// Whether all sums of h elements (repetition allowed) are distinct. On
/// failure returns the first colliding pair met in lexicographic order.
inline BhCheck is_bh_set(std::span<const Value> elements, std::size_t h)
{
    if (h < 2)
        throw PreconditionError("B_h needs h >= 2");
    detail::require_increasing_positive(elements);
    BhCheck result;
    std::unordered_map<Value, std::vector<std::size_t>> seen;
    detail::for_each_multiset(elements.size(), h, [&](const std::vector<std::size_t> & idx) {
        Value sum = 0;
        for (auto i : idx)
            sum += elements[i];
        auto [it, inserted] = seen.try_emplace(sum, idx);
        if (inserted)
            return true;
        Multiset a, b;
        for (auto i : it->second)
            a.push_back(elements[i]);
        for (auto i : idx)
            b.push_back(elements[i]);
        result.ok = false;
        result.collision = std::make_pair(std::move(a), std::move(b));
        return false;
    });
    return result;
}

inline BhCheck is_bh_set(std::initializer_list<Value> elements, std::size_t h)
{
    return is_bh_set(std::span<const Value>(elements.begin(), elements.size()), h);
}

/// A set certified, at construction, to be a B_h set inside [1, bound].
class BhSet {
public:
    BhSet(std::vector<Value> elements, std::size_t h, Value bound) : elements_(std::move(elements)), h_(h), bound_(bound)
    {
        auto check = is_bh_set(elements_, h_);
        if (! check.ok)
            throw PreconditionError("not a B_" + std::to_string(h_) + " set");
        if (elements_.back() > bound_)
            throw PreconditionError("B_h element " + std::to_string(elements_.back()) + " exceeds bound " + std::to_string(bound_));
    }

    const std::vector<Value> & elements() const noexcept { return elements_; }
    std::size_t h() const noexcept { return h_; }
    Value bound() const noexcept { return bound_; }
    std::size_t size() const noexcept { return elements_.size(); }
    Value operator[](std::size_t i) const { return elements_[i]; }

    bool contains(Value v) const { return std::binary_search(elements_.begin(), elements_.end(), v); }

    friend bool operator==(const BhSet &, const BhSet &) = default;

private:
    std::vector<Value> elements_;
    std::size_t h_;
    Value bound_;
};

/// Greedy B_h set: starting from `seed`, repeatedly appends the smallest
/// candidate that keeps the set B_h, until it has f elements. Throws
/// ExhaustionError when the candidates run past `bound`.
inline BhSet greedy_bh(std::size_t f, std::size_t h, Value bound, std::vector<Value> seed = {1, 2})
{
    if (f < 2 || bound < 2)
        throw PreconditionError("greedy B_h needs f >= 2 and bound >= 2");
    if (seed.size() > f)
        throw PreconditionError("seed larger than the requested size");
    std::vector<Value> current = seed;
    if (! current.empty() && ! is_bh_set(current, h).ok)
        throw PreconditionError("seed is not a B_h set");
    Value candidate = current.empty() ? 1 : current.back() + 1;
    while (current.size() < f) {
        if (candidate > bound)
            throw ExhaustionError("no B_" + std::to_string(h) + " set of size " + std::to_string(f)
                + " extends the seed within bound " + std::to_string(bound));
        current.push_back(candidate);
        if (! is_bh_set(current, h).ok)
            current.pop_back();
        ++candidate;
    }
    return BhSet(std::move(current), h, bound);
}

/// Positive pairwise differences of a set.
class DiffSet {
public:
    explicit DiffSet(std::span<const Value> elements)
    {
        for (std::size_t i = 0; i < elements.size(); ++i)
            for (std::size_t j = i + 1; j < elements.size(); ++j)
                values_.push_back(elements[j] - elements[i]);
        std::sort(values_.begin(), values_.end());
        values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    }

    const std::vector<Value> & values() const noexcept { return values_; }
    bool contains(Value d) const { return std::binary_search(values_.begin(), values_.end(), d); }

    friend bool operator==(const DiffSet &, const DiffSet &) = default;

private:
    std::vector<Value> values_;
};

inline DiffSet difference_set(const BhSet & s)
{
    if (s.size() < 2)
        throw PreconditionError("difference set needs at least two elements");
    return DiffSet(s.elements());
}

/// Raised when the hypothesis of the clique fact fails: some interval sum
/// d_first + ... + d_last (1-based, inclusive) is not a difference.
class HypothesisViolation : public PreconditionError {
public:
    HypothesisViolation(std::size_t first, std::size_t last, Value sum) :
        PreconditionError("interval sum d_" + std::to_string(first) + "..d_" + std::to_string(last) + " = "
            + std::to_string(sum) + " is not in the difference set"),
        first_(first), last_(last), sum_(sum)
    {
    }

    std::size_t first() const noexcept { return first_; }
    std::size_t last() const noexcept { return last_; }
    Value sum() const noexcept { return sum_; }

private:
    std::size_t first_, last_;
    Value sum_;
};

/// Given differences d_1..d_l of a B_3 set S whose every interval sum is
/// again a difference, returns b_1 < ... < b_{l+1} in S whose consecutive
/// gaps are d_1..d_l, or d_l..d_1. The search is exhaustive over S.
inline std::vector<Value> clique_fact_witness(const BhSet & s, std::span<const Value> gaps)
{
    if (gaps.empty())
        throw PreconditionError("clique fact needs at least one difference");
    if (s.h() < 3)
        throw PreconditionError("clique fact needs a B_3 set");
    DiffSet d = difference_set(s);
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        Value sum = 0;
        for (std::size_t j = i; j < gaps.size(); ++j) {
            sum += gaps[j];
            if (! d.contains(sum))
                throw HypothesisViolation(i + 1, j + 1, sum);
        }
    }
    auto realise = [&](bool reversed) -> std::optional<std::vector<Value>> {
        for (Value start : s.elements()) {
            std::vector<Value> b{start};
            for (std::size_t i = 0; i < gaps.size(); ++i) {
                Value next = b.back() + gaps[reversed ? gaps.size() - 1 - i : i];
                if (! s.contains(next))
                    break;
                b.push_back(next);
            }
            if (b.size() == gaps.size() + 1)
                return b;
        }
        return std::nullopt;
    };
    if (auto b = realise(false))
        return *b;
    if (auto b = realise(true))
        return *b;
    throw InternalContradiction("clique fact: no realisation of the differences in S");
}

/// Edge i of the multigraph (index into the difference sequence) traversed
/// from `from` to `to`.
struct OrientedEdge {
    std::size_t index = 0;
    Value from = 0;
    Value to = 0;

    friend bool operator==(const OrientedEdge &, const OrientedEdge &) = default;
};

/// A closed walk repeating no edge: edges[i].to == edges[i+1].from and the
/// last edge returns to the first edge's start.
using Circuit = std::vector<OrientedEdge>;

struct CircuitDecomposition {
    /// Edge i joins the unique pair of S at distance d_i, stored (low, high).
    std::vector<std::pair<Value, Value>> edges;
    std::vector<Circuit> circuits;
    /// Present when the number of edges is odd: an odd cycle (vertex
    /// sequence, started at its least vertex) of the simple graph underlying
    /// the multigraph.
    std::optional<std::vector<Value>> odd_cycle;
};

namespace detail {

    // An edge of the working multigraph: the pair (low, high) together with
    // the walk of original edges it stands for, running from low to high.
    struct WorkingEdge {
        Value low;
        Value high;
        std::vector<OrientedEdge> walk;
    };

    inline std::vector<OrientedEdge> reversed_walk(const std::vector<OrientedEdge> & walk)
    {
        std::vector<OrientedEdge> result;
        for (auto it = walk.rbegin(); it != walk.rend(); ++it)
            result.push_back(OrientedEdge{it->index, it->to, it->from});
        return result;
    }

    inline std::vector<OrientedEdge> joined(std::vector<OrientedEdge> a, const std::vector<OrientedEdge> & b)
    {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }

    // Induction of the cycle fact. The balance sum(left) = sum(right) holds
    // on entry. Take the first left edge (x1, y1); y1 is either the low end
    // of another left edge (merge the two into one longer left edge) or the
    // high end of a right edge (cancel, or replace both by their difference
    // on whichever side keeps it positive). Ties go to the smallest index.
    inline void decompose(std::vector<WorkingEdge> left, std::vector<WorkingEdge> right, std::vector<Circuit> & out)
    {
        while (! left.empty() || ! right.empty()) {
            if (left.empty() || right.empty())
                throw InternalContradiction("cycle fact: unbalanced side left over");
            WorkingEdge first = left.front();
            left.erase(left.begin());

            auto same_side = std::find_if(left.begin(), left.end(), [&](const WorkingEdge & e) { return e.low == first.high; });
            if (same_side != left.end()) {
                WorkingEdge merged{first.low, same_side->high, joined(first.walk, same_side->walk)};
                left.erase(same_side);
                left.insert(left.begin(), std::move(merged));
                continue;
            }

            auto other_side = std::find_if(right.begin(), right.end(), [&](const WorkingEdge & e) { return e.high == first.high; });
            if (other_side == right.end())
                throw InternalContradiction("cycle fact: sums balance but the multisets differ (set is not B_h?)");
            WorkingEdge partner = *other_side;
            right.erase(other_side);
            if (partner.low == first.low)
                out.push_back(joined(first.walk, reversed_walk(partner.walk)));
            else if (partner.low > first.low)
                left.insert(left.begin(), WorkingEdge{first.low, partner.low, joined(first.walk, reversed_walk(partner.walk))});
            else
                right.insert(right.begin(), WorkingEdge{partner.low, first.low, joined(partner.walk, reversed_walk(first.walk))});
        }
    }

    // Shrinks an odd closed walk (vertex sequence, implicitly closed) to an
    // odd cycle by splitting at repeated vertices and keeping an odd part.
    inline std::vector<Value> odd_cycle_in(std::vector<Value> walk)
    {
        while (true) {
            bool split = false;
            for (std::size_t i = 0; i < walk.size() && ! split; ++i)
                for (std::size_t j = i + 1; j < walk.size() && ! split; ++j)
                    if (walk[i] == walk[j]) {
                        std::vector<Value> inner(walk.begin() + i, walk.begin() + j);
                        std::vector<Value> outer(walk.begin(), walk.begin() + i);
                        outer.insert(outer.end(), walk.begin() + j, walk.end());
                        walk = inner.size() % 2 == 1 ? std::move(inner) : std::move(outer);
                        split = true;
                    }
            if (! split)
                break;
        }
        auto least = std::min_element(walk.begin(), walk.end());
        std::rotate(walk.begin(), least, walk.end());
        if (walk.size() > 2 && walk.back() < walk[1])
            std::reverse(walk.begin() + 1, walk.end());
        return walk;
    }

} // namespace detail

/// Decomposes the multigraph on S with one edge per difference d_i (joining
/// the unique pair of S at that distance) into circuits, following the
/// inductive argument step by step, given d_1 + ... + d_split equals
/// d_{split+1} + ... + d_l with 2 <= l <= h. When l is odd also returns an
/// odd cycle of length at most l.
inline CircuitDecomposition cycle_fact_decompose(const BhSet & s, std::span<const Value> gaps, std::size_t split)
{
    const std::size_t l = gaps.size();
    if (l < 2 || l > s.h())
        throw PreconditionError("cycle fact needs 2 <= l <= h (l = " + std::to_string(l) + ", h = " + std::to_string(s.h()) + ")");
    if (split < 1 || split >= l)
        throw PreconditionError("cycle fact split must lie in [1, l-1]");
    Value lhs = std::accumulate(gaps.begin(), gaps.begin() + split, Value{0});
    Value rhs = std::accumulate(gaps.begin() + split, gaps.end(), Value{0});
    if (lhs != rhs)
        throw PreconditionError("cycle fact balance fails: " + std::to_string(lhs) + " != " + std::to_string(rhs));

    CircuitDecomposition result;
    std::vector<detail::WorkingEdge> left, right;
    for (std::size_t i = 0; i < l; ++i) {
        std::optional<std::pair<Value, Value>> pair;
        for (Value x : s.elements())
            if (s.contains(x + gaps[i])) {
                pair = std::make_pair(x, x + gaps[i]);
                break;
            }
        if (! pair)
            throw PreconditionError("d_" + std::to_string(i + 1) + " = " + std::to_string(gaps[i]) + " is not in the difference set");
        result.edges.push_back(*pair);
        detail::WorkingEdge e{pair->first, pair->second, {OrientedEdge{i, pair->first, pair->second}}};
        (i < split ? left : right).push_back(std::move(e));
    }
    detail::decompose(std::move(left), std::move(right), result.circuits);

    if (l % 2 == 1) {
        auto odd = std::find_if(result.circuits.begin(), result.circuits.end(), [](const Circuit & c) { return c.size() % 2 == 1; });
        if (odd == result.circuits.end())
            throw InternalContradiction("cycle fact: odd edge count but every circuit is even");
        std::vector<Value> walk;
        for (const auto & e : *odd)
            walk.push_back(e.from);
        result.odd_cycle = detail::odd_cycle_in(std::move(walk));
    }
    return result;
}

} // namespace chiforge

#endif // CHIFORGE_SIDON_HPP
