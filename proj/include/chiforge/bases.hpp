#ifndef CHIFORGE_BASES_HPP
#define CHIFORGE_BASES_HPP

#include "chiforge/errors.hpp"
#include "chiforge/graph.hpp"
#include "chiforge/oracle/girth.hpp"
#include "chiforge/oracle/hypergraph.hpp"
#include "chiforge/random.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace chiforge {

// ---------------------------------------------------------------- Zykov

struct ZykovBase {
    std::size_t n = 1;
    Digraph digraph;
    /// Copy vertices read "c<i>.<label inside copy i>"; apexes read
    /// "a(<t_1>,...,<t_{n-1}>)" with t_i the vertex id inside copy i.
    std::vector<std::string> labels;
    /// Vertices per copy of Z_{n-1} (0 for n = 1).
    std::size_t copy_size = 0;
    std::size_t apex_count = 0;

    /// Id of copy `copy`'s (0-based) vertex `v`.
    Vertex copy_vertex(std::size_t copy, Vertex v) const { return static_cast<Vertex>(copy * copy_size + v); }

    /// Id of the apex over the tuple (t_1, ..., t_{n-1}) of copy-local ids.
    Vertex apex(std::span<const Vertex> tuple) const
    {
        if (tuple.size() + 1 != n)
            throw PreconditionError("apex tuple must have n-1 entries");
        std::size_t index = 0;
        for (Vertex t : tuple) {
            if (t >= copy_size)
                throw PreconditionError("apex tuple entry out of range");
            index = index * copy_size + t;
        }
        return static_cast<Vertex>((n - 1) * copy_size + index);
    }
};

/// The oriented Zykov graph Z_n: Z_1 is one vertex, and Z_{n+1} takes n
/// disjoint copies of Z_n plus, for every tuple (v_1, ..., v_n) with v_i in
/// copy i, a new vertex receiving an arc from each v_i. Copies come first,
/// then apexes in lexicographic tuple order.
inline ZykovBase build_zykov(std::size_t n)
{
    if (n < 1 || n > 4)
        throw PreconditionError("Zykov graphs are built for 1 <= n <= 4 only (Z_5 has about 8.3e10 vertices)");
    ZykovBase z;
    z.n = 1;
    z.digraph = Digraph(1);
    z.labels = {"v"};
    for (std::size_t next = 2; next <= n; ++next) {
        const std::size_t copies = next - 1;
        const std::size_t size = z.digraph.vertex_count();
        std::size_t apexes = 1;
        for (std::size_t i = 0; i < copies; ++i)
            apexes *= size;
        std::vector<VertexPair> arcs;
        std::vector<std::string> labels;
        for (std::size_t c = 0; c < copies; ++c) {
            for (auto [u, v] : z.digraph.arcs())
                arcs.emplace_back(static_cast<Vertex>(c * size + u), static_cast<Vertex>(c * size + v));
            for (const auto & l : z.labels)
                labels.push_back("c" + std::to_string(c + 1) + "." + l);
        }
        std::vector<Vertex> tuple(copies, 0);
        for (std::size_t a = 0; a < apexes; ++a) {
            auto apex = static_cast<Vertex>(copies * size + a);
            std::string label = "a(";
            for (std::size_t c = 0; c < copies; ++c) {
                arcs.emplace_back(static_cast<Vertex>(c * size + tuple[c]), apex);
                label += (c ? "," : "") + std::to_string(tuple[c]);
            }
            labels.push_back(label + ")");
            for (std::size_t c = copies; c-- > 0;) {
                if (++tuple[c] < size)
                    break;
                tuple[c] = 0;
            }
        }
        z.n = next;
        z.copy_size = size;
        z.apex_count = apexes;
        z.digraph = Digraph(copies * size + apexes, std::span<const VertexPair>(arcs));
        z.labels = std::move(labels);
    }
    return z;
}

// ----------------------------------------------------- Nesetril-Rodl bases

/// A template hypergraph handed to the Nesetril-Rodl recursion.
struct TemplateHypergraph {
    Hypergraph hypergraph;
    /// Whether chromatic number and girth were certified by an oracle.
    bool certified = false;
    std::string source;
};

/// Called with (stage i >= 1, required uniformity); must return a template
/// of that uniformity with girth >= g and chromatic number at least the
/// target.
using TemplateProvider = std::function<TemplateHypergraph(std::size_t stage, std::size_t uniformity)>;

struct StageRecord {
    std::size_t stage = 0;
    std::size_t uniformity = 0;
    std::size_t template_vertices = 0;
    std::size_t template_edges = 0;
    Extended template_girth;
    bool certified = false;
    std::string source;
};

/// A partite hypergraph as produced by the recursion: part[v] in [0, parts).
struct PartiteHypergraph {
    std::size_t parts = 0;
    std::vector<std::size_t> part;
    Hypergraph hypergraph;
    std::vector<StageRecord> stages;

    /// Part-major order, ties broken by vertex id.
    std::vector<Vertex> part_order() const
    {
        std::vector<Vertex> order(part.size());
        for (Vertex v = 0; v < order.size(); ++v)
            order[v] = v;
        std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return part[a] < part[b]; });
        return order;
    }
};

namespace detail {

    inline std::size_t binomial(std::size_t n, std::size_t k)
    {
        if (k > n)
            return 0;
        std::size_t r = 1;
        for (std::size_t i = 1; i <= k; ++i)
            r = r * (n - k + i) / i;
        return r;
    }

    // Stage 0: `parts` parts of size C(parts-1, k-1) and one edge through
    // every k-set of parts (in lexicographic order), edges pairwise disjoint.
    inline PartiteHypergraph nr_stage_zero(std::size_t k, std::size_t parts)
    {
        const std::size_t size = binomial(parts - 1, k - 1);
        PartiteHypergraph b;
        b.parts = parts;
        for (std::size_t j = 0; j < parts; ++j)
            for (std::size_t i = 0; i < size; ++i)
                b.part.push_back(j);
        std::vector<std::size_t> next_free(parts, 0);
        std::vector<Hypergraph::Edge> edges;
        std::vector<std::size_t> subset(k);
        for (std::size_t i = 0; i < k; ++i)
            subset[i] = i;
        while (true) {
            Hypergraph::Edge e;
            for (std::size_t j : subset)
                e.push_back(static_cast<Vertex>(j * size + next_free[j]++));
            edges.push_back(std::move(e));
            std::size_t pos = k;
            while (pos > 0 && subset[pos - 1] == parts - k + pos - 1)
                --pos;
            if (pos == 0)
                break;
            ++subset[pos - 1];
            for (std::size_t q = pos; q < k; ++q)
                subset[q] = subset[q - 1] + 1;
        }
        b.hypergraph = Hypergraph(parts * size, std::move(edges));
        return b;
    }

    // One amalgamation step: a copy of `b` for every edge e of the
    // template, with the copy's part `target` identified with e in order.
    inline PartiteHypergraph nr_amalgamate(const PartiteHypergraph & b, std::size_t target, const Hypergraph & h, std::size_t max_vertices)
    {
        std::vector<Vertex> target_part;
        for (Vertex v = 0; v < b.part.size(); ++v)
            if (b.part[v] == target)
                target_part.push_back(v);
        for (const auto & e : h.edges())
            if (e.size() != target_part.size())
                throw PreconditionError("template mismatch: needs a " + std::to_string(target_part.size())
                    + "-uniform hypergraph, got an edge of size " + std::to_string(e.size()));
        const std::size_t fresh = b.part.size() - target_part.size();
        const std::size_t total = h.vertex_count() + h.edge_count() * fresh;
        if (total > max_vertices)
            throw ExhaustionError("stage needs " + std::to_string(total) + " vertices, over the limit of " + std::to_string(max_vertices));

        PartiteHypergraph out;
        out.parts = b.parts;
        out.stages = b.stages;
        out.part.assign(h.vertex_count(), target);
        std::vector<Hypergraph::Edge> edges;
        std::vector<Vertex> map(b.part.size());
        for (const auto & e : h.edges()) {
            std::size_t k = 0;
            for (Vertex v = 0; v < b.part.size(); ++v) {
                if (b.part[v] == target)
                    map[v] = e[k++];
                else {
                    map[v] = static_cast<Vertex>(out.part.size());
                    out.part.push_back(b.part[v]);
                }
            }
            for (const auto & be : b.hypergraph.edges()) {
                Hypergraph::Edge copy;
                for (Vertex v : be)
                    copy.push_back(map[v]);
                edges.push_back(std::move(copy));
            }
        }
        out.hypergraph = Hypergraph(out.part.size(), std::move(edges));
        return out;
    }

    inline PartiteHypergraph nr_recursion(std::size_t k, std::size_t parts, std::size_t g, std::size_t stage, const TemplateProvider & provider, std::size_t max_vertices)
    {
        if (stage > parts)
            throw PreconditionError("stage must lie in [0, " + std::to_string(parts) + "]");
        PartiteHypergraph b = nr_stage_zero(k, parts);
        for (std::size_t i = 1; i <= stage; ++i) {
            std::size_t uniformity = std::count(b.part.begin(), b.part.end(), i - 1);
            TemplateHypergraph t = provider(i, uniformity);
            StageRecord record{i, uniformity, t.hypergraph.vertex_count(), t.hypergraph.edge_count(), Extended::infinite(), t.certified, t.source};
            if (uniformity >= 2 && t.hypergraph.edge_count() > 0) {
                for (const auto & e : t.hypergraph.edges())
                    if (e.size() != uniformity)
                        throw PreconditionError("template mismatch: stage " + std::to_string(i) + " needs a "
                            + std::to_string(uniformity) + "-uniform hypergraph");
                record.template_girth = hypergraph_girth(t.hypergraph);
                if (record.template_girth < Extended(g))
                    throw PreconditionError("template for stage " + std::to_string(i) + " has girth "
                        + record.template_girth.to_string() + " < " + std::to_string(g));
            }
            b = nr_amalgamate(b, i - 1, t.hypergraph, max_vertices);
            b.stages.push_back(std::move(record));
        }
        return b;
    }

} // namespace detail

inline constexpr std::size_t default_max_vertices = 5'000'000;

struct NrGraph {
    Digraph digraph;
    /// Part of each vertex, 0-based.
    std::vector<std::size_t> part;
    std::vector<StageRecord> stages;
};

/// Stage `stage` (0..n) of the oriented Nesetril-Rodl graph: n parts, arcs
/// always directed from the lower-numbered part to the higher one.
inline NrGraph build_nr(std::size_t n, std::size_t g, std::size_t stage, const TemplateProvider & provider, std::size_t max_vertices = default_max_vertices)
{
    if (n < 2 || g < 3)
        throw PreconditionError("Nesetril-Rodl graphs need n >= 2 and g >= 3");
    PartiteHypergraph b = detail::nr_recursion(2, n, g, stage, provider, max_vertices);
    std::vector<VertexPair> arcs;
    for (const auto & e : b.hypergraph.edges()) {
        auto [u, v] = std::make_pair(e[0], e[1]);
        arcs.push_back(b.part[u] < b.part[v] ? VertexPair{u, v} : VertexPair{v, u});
    }
    return NrGraph{Digraph(b.part.size(), std::span<const VertexPair>(arcs)), std::move(b.part), std::move(b.stages)};
}

struct NrHypergraph {
    OrderedHypergraph hypergraph;
    std::vector<std::size_t> part;
    std::vector<StageRecord> stages;
};

/// The hypergraph variant: k-uniform, m = (k-1)(n-1)+1 parts of size
/// C(m-1, k-1), ordered part-major (then by id).
inline NrHypergraph build_nr_hypergraph(std::size_t k, std::size_t n, std::size_t g, std::size_t stage, const TemplateProvider & provider, std::size_t max_vertices = default_max_vertices)
{
    if (k < 2 || n < 2 || g < 3)
        throw PreconditionError("hypergraph recursion needs k >= 2, n >= 2 and g >= 3");
    const std::size_t m = (k - 1) * (n - 1) + 1;
    PartiteHypergraph b = detail::nr_recursion(k, m, g, stage, provider, max_vertices);
    auto order = b.part_order();
    return NrHypergraph{OrderedHypergraph(std::move(b.hypergraph), std::move(order)), std::move(b.part), std::move(b.stages)};
}

/// A provider handing out the odd cycle C_length (as a 2-uniform template)
/// at every stage; any other uniformity is a mismatch.
inline TemplateProvider odd_cycle_provider(std::size_t length)
{
    if (length < 3 || length % 2 == 0)
        throw PreconditionError("odd cycle template needs an odd length >= 3");
    return [length](std::size_t, std::size_t uniformity) {
        if (uniformity != 2)
            throw PreconditionError("template mismatch: the cycle template is 2-uniform, stage needs "
                + std::to_string(uniformity) + "-uniform");
        std::vector<Hypergraph::Edge> edges;
        for (Vertex i = 0; i < length; ++i)
            edges.push_back({i, static_cast<Vertex>((i + 1) % length)});
        return TemplateHypergraph{Hypergraph(length, std::move(edges)), false, "cycle:" + std::to_string(length)};
    };
}

// -------------------------------------------------- Erdos-Hajnal templates

enum class TemplateMode { verified, assumed };

struct TemplateSpec {
    std::size_t uniformity = 2;
    std::size_t chromatic_target = 3;
    std::size_t girth_target = 3;
    std::size_t vertices = 15;
    /// Edges sampled before short cycles are deleted.
    std::size_t sampled_edges = 40;
    std::uint64_t seed = 1;
    TemplateMode mode = TemplateMode::verified;
    std::size_t attempts = 64;
    std::uint64_t search_budget = 50'000'000;
};

struct EhTemplate {
    Hypergraph hypergraph;
    bool verified = false;
    std::uint64_t seed = 0;
    std::size_t attempt = 0;
    Extended girth;
};

struct TemplateCertificate {
    Extended girth;
    bool girth_ok = false;
    /// True when (k-1)-colourability was refuted, false when a colouring
    /// exists, empty when the search ran out of budget.
    std::optional<bool> chromatic_ok;

    bool ok() const { return girth_ok && chromatic_ok == true; }
};

inline TemplateCertificate certify_template(const Hypergraph & h, const TemplateSpec & spec)
{
    TemplateCertificate c;
    c.girth = hypergraph_girth(h);
    c.girth_ok = ! (c.girth < Extended(spec.girth_target));
    WorkBudget budget(spec.search_budget);
    auto outcome = hypergraph_k_colorable(h, spec.chromatic_target - 1, budget);
    if (outcome != SearchOutcome::budget_exhausted)
        c.chromatic_ok = outcome == SearchOutcome::refuted;
    return c;
}

/// Seeded sampling of an s-uniform hypergraph, then deletion of the
/// highest-index edge on a shortest cycle until the girth target holds. In
/// verified mode the chromatic target is certified by refuting
/// (k-1)-colourability; failed attempts move on to the next sample.
inline EhTemplate gen_eh_hypergraph(const TemplateSpec & spec)
{
    if (spec.uniformity < 2 || spec.chromatic_target < 2 || spec.girth_target < 2)
        throw PreconditionError("template spec needs s >= 2, k >= 2 and g >= 2");
    if (spec.vertices < spec.uniformity)
        throw PreconditionError("template spec has fewer vertices than the uniformity");
    Rng rng(spec.seed);
    for (std::size_t attempt = 0; attempt < spec.attempts; ++attempt) {
        std::set<Hypergraph::Edge> chosen;
        std::vector<Vertex> pool(spec.vertices);
        for (Vertex v = 0; v < pool.size(); ++v)
            pool[v] = v;
        for (std::size_t i = 0; i < spec.sampled_edges; ++i) {
            rng.shuffle(pool);
            Hypergraph::Edge e(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(spec.uniformity));
            std::sort(e.begin(), e.end());
            chosen.insert(std::move(e));
        }
        Hypergraph h(spec.vertices, std::vector<Hypergraph::Edge>(chosen.begin(), chosen.end()));
        while (true) {
            auto cycle = shortest_hypergraph_cycle(h);
            if (! cycle || cycle->size() >= spec.girth_target)
                break;
            std::size_t drop = *std::max_element(cycle->begin(), cycle->end());
            auto edges = h.edges();
            edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(drop));
            h = Hypergraph(spec.vertices, std::move(edges));
        }
        EhTemplate out{h, false, spec.seed, attempt, hypergraph_girth(h)};
        if (spec.mode == TemplateMode::assumed)
            return out;
        if (certify_template(h, spec).ok()) {
            out.verified = true;
            return out;
        }
    }
    throw ExhaustionError("no template with chromatic number >= " + std::to_string(spec.chromatic_target) + " and girth >= "
        + std::to_string(spec.girth_target) + " in " + std::to_string(spec.attempts) + " attempts");
}

/// A provider drawing each stage's template from gen_eh_hypergraph with the
/// given spec (uniformity overridden per stage, seed offset by stage).
inline TemplateProvider eh_provider(TemplateSpec spec)
{
    return [spec](std::size_t stage, std::size_t uniformity) {
        TemplateSpec s = spec;
        s.uniformity = uniformity;
        s.seed = spec.seed + stage;
        if (uniformity < 2) {
            // A single 1-vertex edge: monochromatic under any colouring.
            return TemplateHypergraph{Hypergraph(1, {{0}}), true, "singleton"};
        }
        auto t = gen_eh_hypergraph(s);
        return TemplateHypergraph{std::move(t.hypergraph), t.verified, "eh:seed=" + std::to_string(s.seed)};
    };
}

// ------------------------------------------------------- plumbing bases

/// Directed path 0 -> 1 -> ... -> N.
inline Digraph build_path_base(std::size_t length)
{
    if (length < 1)
        throw PreconditionError("path base needs N >= 1");
    std::vector<VertexPair> arcs;
    for (Vertex i = 0; i < length; ++i)
        arcs.emplace_back(i, i + 1);
    return Digraph(length + 1, std::span<const VertexPair>(arcs));
}

/// m-uniform loose path with `length` edges; edge i is
/// {i(m-1), ..., i(m-1)+m-1}, ordered left to right.
inline OrderedHypergraph build_loose_hyperpath(std::size_t m, std::size_t length)
{
    if (m < 2 || length < 1)
        throw PreconditionError("loose path needs m >= 2 and length >= 1");
    std::vector<Hypergraph::Edge> edges;
    for (std::size_t i = 0; i < length; ++i) {
        Hypergraph::Edge e;
        for (std::size_t j = 0; j < m; ++j)
            e.push_back(static_cast<Vertex>(i * (m - 1) + j));
        edges.push_back(std::move(e));
    }
    return OrderedHypergraph(Hypergraph(length * (m - 1) + 1, std::move(edges)));
}

struct PrecDigraph {
    Digraph digraph;
    /// Edge index of the hypergraph each arc (in digraph.arcs() order) comes from.
    std::vector<std::size_t> arc_source;
    /// Set when two edges produce the same arc, so arcs no longer determine
    /// their edge.
    bool collision = false;
    std::vector<VertexPair> collided_arcs;
};

/// Chains the vertices of every edge in order: v_1 -> v_2 -> ... -> v_a.
inline PrecDigraph prec_digraph(const OrderedHypergraph & oh)
{
    std::map<VertexPair, std::size_t> source;
    PrecDigraph out;
    const auto & h = oh.hypergraph();
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        auto e = oh.ordered_edge(i);
        for (std::size_t j = 0; j + 1 < e.size(); ++j) {
            VertexPair arc{e[j], e[j + 1]};
            if (! source.emplace(arc, i).second) {
                out.collision = true;
                out.collided_arcs.push_back(arc);
            }
        }
    }
    std::vector<VertexPair> arcs;
    for (const auto & [arc, edge] : source)
        arcs.push_back(arc);
    out.digraph = Digraph(h.vertex_count(), std::span<const VertexPair>(arcs));
    for (auto arc : out.digraph.arcs())
        out.arc_source.push_back(source.at(arc));
    return out;
}

} // namespace chiforge

#endif // CHIFORGE_BASES_HPP
