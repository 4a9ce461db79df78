#ifndef CHIFORGE_TOOLS_CLI_HPP
#define CHIFORGE_TOOLS_CLI_HPP

#include "chiforge/chiforge.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace chiforge::cli {

inline constexpr const char * version = "0.1.0";

enum class Status { ok = 0, violation = 1, budget_exceeded = 2, error = 3 };

inline std::string to_string(Status s)
{
    switch (s) {
    case Status::ok: return "ok";
    case Status::violation: return "violation";
    case Status::budget_exceeded: return "budget_exceeded";
    case Status::error: return "error";
    }
    return "error";
}

struct CommandResult {
    Status status = Status::ok;
    Json report = Json::object();
    /// Plain text for --help; printed instead of the report when set.
    std::string text;

    int exit_code() const { return static_cast<int>(status); }
};

/// Raised by handlers for a failed expectation; carries the counterexample.
struct Violation {
    Json result;
    Json counterexample;
};

struct Options {
    std::size_t n = 3;
    std::size_t g = 3;
    std::size_t h = 3;
    std::size_t k = 2;
    std::size_t m = 3;
    std::size_t stage = 1;
    std::size_t chi = 3;
    std::size_t vertices = 15;
    std::size_t edges = 40;
    std::size_t trials = 100;
    std::size_t min_changes = 3;
    std::optional<std::size_t> max_length;
    std::string template_kind = "cycle";
    std::size_t template_length = 5;
    std::string mode = "verified";
    std::string theorem = "clique";
    std::string base, plan, target, in, out;
    std::optional<std::string> expect;
    std::optional<std::string> expect_odd;
    std::vector<Vertex> roots;
    std::optional<std::uint64_t> p;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> budget;
    bool no_shortcut = false;
};

namespace detail {

    inline std::uint64_t parse_budget(const std::string & text, const char * origin)
    {
        try {
            std::size_t used = 0;
            auto value = std::stoull(text, &used);
            if (used == text.size() && value > 0)
                return value;
        }
        catch (const std::exception &) {
        }
        throw PreconditionError(std::string(origin) + " must be a positive integer, got \"" + text + "\"");
    }

    inline bool looks_like_dimacs(const std::string & path, const std::string & text)
    {
        if (path.ends_with(".col") || path.ends_with(".dimacs"))
            return true;
        auto first = text.find_first_not_of(" \t\r\n");
        return first != std::string::npos && (text[first] == 'p' || text[first] == 'c');
    }

    inline Json load_json(const std::string & path) { return parse_json(read_file(path)); }

    inline Instance load_instance(const std::string & path)
    {
        std::string text = read_file(path);
        if (looks_like_dimacs(path, text))
            return graph_from_dimacs(text);
        return instance_from_json(parse_json(text));
    }

    /// A graph view of an instance: digraphs by their underlying graph.
    inline Graph as_graph(const Instance & instance)
    {
        if (auto g = std::get_if<Graph>(&instance))
            return *g;
        if (auto d = std::get_if<Digraph>(&instance))
            return d->underlying();
        if (auto t = std::get_if<OrderedTournament>(&instance))
            return back_edge_graph(*t).graph;
        throw PreconditionError("expected a graph or digraph instance");
    }

    // Targets are either files or names: Pn, Kn, Cn, path:n, cycle:n,
    // complete:n, petersen, fano, edge:m (one m-edge).
    inline std::variant<Graph, Hypergraph> load_target(const std::string & spec)
    {
        std::smatch match;
        static const std::regex short_form("([PKC])([0-9]+)");
        static const std::regex long_form("(path|cycle|complete|edge):([0-9]+)");
        auto build = [](const std::string & kind, std::size_t size) -> std::variant<Graph, Hypergraph> {
            if (kind == "P" || kind == "path")
                return named::path(size);
            if (kind == "C" || kind == "cycle") {
                if (size < 3)
                    throw PreconditionError("cycles need at least 3 vertices");
                return named::cycle(size);
            }
            if (kind == "K" || kind == "complete")
                return named::complete(size);
            Hypergraph::Edge e(size);
            for (Vertex v = 0; v < size; ++v)
                e[v] = v;
            return Hypergraph(size, {e});
        };
        if (std::regex_match(spec, match, short_form) || std::regex_match(spec, match, long_form))
            return build(match[1].str(), std::stoul(match[2].str()));
        if (spec == "petersen")
            return named::petersen();
        if (spec == "fano")
            return named::fano();
        auto instance = load_instance(spec);
        if (auto oh = std::get_if<OrderedHypergraph>(&instance))
            return oh->hypergraph();
        return as_graph(instance);
    }

    inline Json coloring_json(const Coloring & c) { return {{"colors_used", c.colors_used}, {"color", c.color}}; }

    inline std::optional<std::size_t> expected_number(const Options & o, const std::optional<std::string> & text)
    {
        if (! text)
            return std::nullopt;
        if (*text == "inf")
            return std::numeric_limits<std::size_t>::max();
        try {
            std::size_t used = 0;
            auto value = std::stoull(*text, &used);
            if (used == text->size())
                return value;
        }
        catch (const std::exception &) {
        }
        (void)o;
        throw PreconditionError("--expect must be a non-negative integer or inf, got \"" + *text + "\"");
    }

    inline Json extended_json(const Extended & e)
    {
        if (e.is_infinite())
            return "inf";
        return e.value();
    }

    inline bool extended_equals(const Extended & e, std::size_t expected)
    {
        return e.is_infinite() ? expected == std::numeric_limits<std::size_t>::max() : e.value() == expected;
    }

    inline std::optional<std::vector<Vertex>> directed_cycle(const Digraph & d)
    {
        std::vector<int> state(d.vertex_count(), 0);
        std::vector<Vertex> stack;
        std::optional<std::vector<Vertex>> found;
        auto dfs = [&](auto && self, Vertex v) -> bool {
            state[v] = 1;
            stack.push_back(v);
            for (Vertex w : d.out(v)) {
                if (state[w] == 1) {
                    found = std::vector<Vertex>(std::find(stack.begin(), stack.end(), w), stack.end());
                    return true;
                }
                if (state[w] == 0 && self(self, w))
                    return true;
            }
            state[v] = 2;
            stack.pop_back();
            return false;
        };
        for (Vertex v = 0; v < d.vertex_count() && ! found; ++v)
            if (state[v] == 0)
                dfs(dfs, v);
        return found;
    }

    // Two distinct directed paths with common ends, in an acyclic digraph
    // that lacks the unique-path property.
    inline std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> two_paths(const Digraph & d)
    {
        constexpr Vertex none = std::numeric_limits<Vertex>::max();
        for (Vertex s = 0; s < d.vertex_count(); ++s) {
            std::vector<Vertex> parent(d.vertex_count(), none);
            std::vector<Vertex> queue{s};
            parent[s] = s;
            for (std::size_t i = 0; i < queue.size(); ++i)
                for (Vertex w : d.out(queue[i])) {
                    if (parent[w] == none) {
                        parent[w] = queue[i];
                        queue.push_back(w);
                        continue;
                    }
                    auto chain = [&](Vertex end) {
                        std::vector<Vertex> path{end};
                        while (path.back() != s)
                            path.push_back(parent[path.back()]);
                        std::reverse(path.begin(), path.end());
                        return path;
                    };
                    auto first = chain(w);
                    auto second = chain(queue[i]);
                    second.push_back(w);
                    if (first != second)
                        return std::make_pair(first, second);
                }
        }
        return std::nullopt;
    }

    inline Json stage_json(const std::vector<StageRecord> & stages)
    {
        Json out = Json::array();
        for (const auto & s : stages)
            out.push_back({{"stage", s.stage}, {"uniformity", s.uniformity}, {"template_vertices", s.template_vertices},
                {"template_edges", s.template_edges}, {"template_girth", extended_json(s.template_girth)}, {"certified", s.certified},
                {"source", s.source}});
        return out;
    }

    inline TemplateSpec template_spec(const Options & o)
    {
        TemplateSpec spec;
        spec.uniformity = o.k;
        spec.chromatic_target = o.chi;
        spec.girth_target = o.g;
        spec.vertices = o.vertices;
        spec.sampled_edges = o.edges;
        spec.seed = o.seed;
        if (o.mode == "assumed")
            spec.mode = TemplateMode::assumed;
        else if (o.mode != "verified")
            throw PreconditionError("--mode must be verified or assumed");
        return spec;
    }

    // ------------------------------------------------------------ handlers

    inline Json build_zykov_cmd(const Options & o)
    {
        auto z = build_zykov(o.n);
        Json file = to_json(z.digraph);
        file["labels"] = z.labels;
        file["provenance"] = {{"construction", "zykov"}, {"n", o.n}};
        write_file_atomic(o.out, dump(file));
        return {{"vertices", z.digraph.vertex_count()}, {"arcs", z.digraph.arc_count()}};
    }

    inline Json build_nr_cmd(const Options & o)
    {
        TemplateProvider provider;
        Json templ;
        if (o.template_kind == "cycle") {
            provider = odd_cycle_provider(o.template_length);
            templ = {{"kind", "cycle"}, {"length", o.template_length}};
        }
        else if (o.template_kind == "eh") {
            auto spec = template_spec(o);
            provider = eh_provider(spec);
            templ = {{"kind", "eh"}, {"seed", o.seed}, {"vertices", o.vertices}, {"edges", o.edges}, {"chi", o.chi}, {"mode", o.mode}};
        }
        else
            throw PreconditionError("--template must be cycle or eh");
        Json provenance{{"construction", "nr"}, {"n", o.n}, {"g", o.g}, {"k", o.k}, {"stage", o.stage}, {"template", templ}};
        Json file;
        Json result;
        if (o.k == 2) {
            auto nr = build_nr(o.n, o.g, o.stage, provider);
            file = to_json(nr.digraph);
            file["part"] = nr.part;
            provenance["stages"] = stage_json(nr.stages);
            result = {{"vertices", nr.digraph.vertex_count()}, {"arcs", nr.digraph.arc_count()}, {"parts", o.n}};
        }
        else {
            auto nr = build_nr_hypergraph(o.k, o.n, o.g, o.stage, provider);
            file = to_json(nr.hypergraph);
            file["part"] = nr.part;
            provenance["stages"] = stage_json(nr.stages);
            result = {{"vertices", nr.hypergraph.hypergraph().vertex_count()}, {"edges", nr.hypergraph.hypergraph().edge_count()}};
        }
        file["provenance"] = provenance;
        write_file_atomic(o.out, dump(file));
        result["stages"] = provenance["stages"];
        return result;
    }

    inline Json build_eh_cmd(const Options & o)
    {
        auto spec = template_spec(o);
        auto t = gen_eh_hypergraph(spec);
        Json file = to_json(t.hypergraph);
        file["provenance"] = {{"construction", "eh"}, {"seed", t.seed}, {"attempt", t.attempt}, {"verified", t.verified}, {"k", o.k},
            {"chi", o.chi}, {"g", o.g}, {"vertices", o.vertices}, {"sampled_edges", o.edges}};
        write_file_atomic(o.out, dump(file));
        return {{"vertices", t.hypergraph.vertex_count()}, {"edges", t.hypergraph.edge_count()}, {"girth", extended_json(t.girth)},
            {"verified", t.verified}, {"attempt", t.attempt}};
    }

    inline Json build_path_cmd(const Options & o)
    {
        auto d = build_path_base(o.n);
        Json file = to_json(d);
        file["provenance"] = {{"construction", "path"}, {"length", o.n}};
        write_file_atomic(o.out, dump(file));
        return {{"vertices", d.vertex_count()}, {"arcs", d.arc_count()}};
    }

    inline Json build_loosepath_cmd(const Options & o)
    {
        auto h = build_loose_hyperpath(o.m, o.n);
        Json file = to_json(h);
        file["provenance"] = {{"construction", "loosepath"}, {"m", o.m}, {"length", o.n}};
        write_file_atomic(o.out, dump(file));
        return {{"vertices", h.hypergraph().vertex_count()}, {"edges", h.hypergraph().edge_count()}};
    }

    inline Json plan_cmd(const Options & o)
    {
        auto target = load_target(o.target);
        EmbedPlan plan;
        if (auto h = std::get_if<Hypergraph>(&target)) {
            if (o.theorem != "hypergraph")
                throw PreconditionError("hypergraph targets need --theorem hypergraph");
            plan = plan_embedding(*h, o.p);
        }
        else {
            Theorem t = o.theorem == "clique" ? Theorem::clique : o.theorem == "odd-girth" ? Theorem::odd_girth : Theorem::hypergraph;
            if (t == Theorem::hypergraph) {
                // A graph target read as a 2-uniform hypergraph.
                const auto & graph = std::get<Graph>(target);
                std::vector<Hypergraph::Edge> edges;
                for (auto [u, v] : graph.edges())
                    edges.push_back({u, v});
                plan = plan_embedding(Hypergraph(graph.vertex_count(), edges), o.p);
            }
            else
                plan = plan_embedding(std::get<Graph>(target), t, o.p);
        }
        validate_plan(plan);
        Json file = to_json(plan);
        if (! o.out.empty())
            write_file_atomic(o.out, dump(file));
        return {{"plan", file}, {"bound", plan.colouring_bound()}};
    }

    inline EmbedPlan load_plan(const std::string & path)
    {
        auto plan = plan_from_json(load_json(path));
        validate_plan(plan);
        return plan;
    }

    inline Json base_provenance(const Json & base)
    {
        Json out{{"type", base.value("type", "")}, {"n", base.value("n", 0)}};
        if (base.contains("provenance"))
            out["provenance"] = base["provenance"];
        return out;
    }

    inline Json derive_graph_cmd(const Options & o)
    {
        auto plan = load_plan(o.plan);
        Json base_json = load_json(o.base);
        Digraph base = digraph_from_json(base_json);
        auto dg = derive_graph(base, plan, ! o.no_shortcut);
        Json file = to_json(dg.digraph);
        std::vector<std::uint64_t> colour;
        for (auto [u, v] : dg.digraph.arcs())
            colour.push_back(dg.colour(u, v));
        file["edge_color"] = std::move(colour);
        file["plan"] = to_json(plan);
        file["base"] = base_provenance(base_json);
        write_file_atomic(o.out, dump(file));
        return {{"vertices", dg.digraph.vertex_count()}, {"arcs", dg.digraph.arc_count()}, {"p", plan.p}, {"bound", dg.bound()}};
    }

    inline Json derive_hypergraph_cmd(const Options & o)
    {
        auto plan = load_plan(o.plan);
        Json base_json = load_json(o.base);
        auto base = hypergraph_from_json(base_json);
        auto dh = derive_hypergraph(base, plan);
        if (auto bad = residue_separation_violation(dh))
            throw Violation{Json::object(), {{"kind", "residue_separation"}, {"pair", {bad->first, bad->second}}}};
        Json file = to_json(OrderedHypergraph(dh.hypergraph, base.order()));
        std::vector<int> added(dh.added.begin(), dh.added.end());
        file["added"] = added;
        file["plan"] = to_json(plan);
        file["base"] = base_provenance(base_json);
        write_file_atomic(o.out, dump(file));
        return {{"vertices", dh.hypergraph.vertex_count()}, {"edges", dh.hypergraph.edge_count()},
            {"added_edges", std::count(dh.added.begin(), dh.added.end(), true)}, {"cover_arcs", dh.cover.arc_count()}, {"p", plan.p},
            {"residue_separation", true}};
    }

    inline Json verify_chromatic_cmd(const Options & o, std::uint64_t budget)
    {
        auto instance = load_instance(o.in);
        ChromaticResult r;
        Json result;
        if (auto oh = std::get_if<OrderedHypergraph>(&instance)) {
            r = hypergraph_chromatic(oh->hypergraph(), budget);
            result["kind"] = "weak hypergraph";
        }
        else
            r = chromatic_number(as_graph(instance), budget);
        result["chromatic_number"] = r.chromatic_number;
        result["witness"] = coloring_json(r.witness);
        result["work"] = r.work;
        if (auto e = expected_number(o, o.expect); e && *e != r.chromatic_number)
            throw Violation{result, {{"expected", *e}, {"actual", r.chromatic_number}, {"coloring", coloring_json(r.witness)}}};
        return result;
    }

    inline Json verify_clique_cmd(const Options & o)
    {
        auto g = as_graph(load_instance(o.in));
        auto c = clique_number(g);
        Json result{{"clique_number", c.size}, {"clique", c.vertices}};
        if (auto e = expected_number(o, o.expect); e && *e != c.size)
            throw Violation{result, {{"expected", *e}, {"actual", c.size}, {"clique", c.vertices}}};
        return result;
    }

    inline Json verify_girth_cmd(const Options & o)
    {
        auto instance = load_instance(o.in);
        Json result;
        if (auto oh = std::get_if<OrderedHypergraph>(&instance)) {
            auto girth = hypergraph_girth(oh->hypergraph());
            result["girth"] = extended_json(girth);
            if (auto c = shortest_hypergraph_cycle(oh->hypergraph()))
                result["cycle_edges"] = *c;
            if (auto e = expected_number(o, o.expect); e && ! extended_equals(girth, *e))
                throw Violation{result, {{"expected", *o.expect}, {"actual", extended_json(girth)}, {"cycle_edges", result.value("cycle_edges", Json::array())}}};
            return result;
        }
        Graph g = as_graph(instance);
        GirthStats stats = o.roots.empty() ? girth_stats(g) : girth_stats(g, o.roots);
        result["girth"] = extended_json(stats.girth);
        result["odd_girth"] = extended_json(stats.odd_girth);
        if (! o.roots.empty())
            result["roots"] = o.roots;
        else if (auto c = shortest_cycle(g))
            result["cycle"] = *c;
        Json counter = Json::object();
        if (auto e = expected_number(o, o.expect); e && ! extended_equals(stats.girth, *e))
            counter = {{"quantity", "girth"}, {"expected", *o.expect}, {"actual", result["girth"]}, {"cycle", result.value("cycle", Json::array())}};
        if (auto e = expected_number(o, o.expect_odd); e && ! extended_equals(stats.odd_girth, *e))
            counter = {{"quantity", "odd_girth"}, {"expected", *o.expect_odd}, {"actual", result["odd_girth"]}};
        if (! counter.empty())
            throw Violation{result, counter};
        return result;
    }

    inline Json verify_induced_cmd(const Options & o)
    {
        auto host = load_instance(o.in);
        auto pattern = load_target(o.target);
        std::optional<Embedding> found;
        if (auto oh = std::get_if<OrderedHypergraph>(&host)) {
            auto p = std::get_if<Hypergraph>(&pattern);
            if (! p)
                throw PreconditionError("a hypergraph host needs a hypergraph target");
            found = contains_induced(oh->hypergraph(), *p);
        }
        else {
            auto p = std::get_if<Graph>(&pattern);
            if (! p)
                throw PreconditionError("a graph host needs a graph target");
            found = contains_induced(as_graph(host), *p);
        }
        Json result{{"found", found.has_value()}};
        if (found)
            result["embedding"] = *found;
        if (o.expect) {
            if (*o.expect != "present" && *o.expect != "absent")
                throw PreconditionError("--expect must be present or absent");
            if (*o.expect == "absent" && found)
                throw Violation{result, {{"expected", "absent"}, {"embedding", *found}}};
            if (*o.expect == "present" && ! found)
                throw Violation{result, {{"expected", "present"}, {"search", "exhaustive"}, {"found", false}}};
        }
        return result;
    }

    inline Digraph base_digraph(const Instance & instance)
    {
        if (auto d = std::get_if<Digraph>(&instance))
            return *d;
        if (auto oh = std::get_if<OrderedHypergraph>(&instance))
            return prec_digraph(*oh).digraph;
        throw PreconditionError("base properties need a digraph or an ordered hypergraph");
    }

    inline Json verify_base_props_cmd(const Options & o)
    {
        auto d = base_digraph(load_instance(o.in));
        auto r = check_base_properties(d);
        Json result{{"acyclic", r.acyclic}, {"unique_paths", r.unique_paths}, {"vertices", d.vertex_count()}, {"arcs", d.arc_count()}};
        if (! r.acyclic)
            throw Violation{result, {{"kind", "directed_cycle"}, {"cycle", *directed_cycle(d)}}};
        if (! r.unique_paths) {
            auto paths = two_paths(d);
            throw Violation{result, {{"kind", "two_paths"}, {"paths", {paths->first, paths->second}}}};
        }
        return result;
    }

    inline Json verify_direction_changes_cmd(const Options & o, std::uint64_t budget)
    {
        auto d = base_digraph(load_instance(o.in));
        CycleEnumerationLimits limits;
        limits.max_length = o.max_length;
        limits.work = budget;
        auto r = verify_direction_changes(d, o.min_changes, limits);
        Json result{{"minimum_required", o.min_changes}, {"cycles_examined", r.cycles_examined}, {"partial", r.partial}};
        if (std::holds_alternative<NoCycle>(*r.min_direction_changes))
            result["min_direction_changes"] = "no_cycle";
        else
            result["min_direction_changes"] = std::get<std::size_t>(*r.min_direction_changes);
        if (! r.witness_cycle.empty())
            result["witness_cycle"] = r.witness_cycle;
        if (o.max_length)
            result["max_length"] = *o.max_length;
        if (r.meets_minimum == false)
            throw Violation{result, {{"cycle", r.witness_cycle}, {"direction_changes", result["min_direction_changes"]}}};
        if (! r.meets_minimum)
            throw BudgetExceeded("cycle enumeration ran out of budget", 0, 0);
        return result;
    }

    inline Json verify_facts_cmd(const Options & o)
    {
        auto r = run_fact_trials(o.h, o.trials, o.seed);
        Json result{{"h", r.h}, {"trials", o.trials}, {"seed", o.seed}, {"clique_trials", r.clique_trials},
            {"clique_witnesses", r.clique_witnesses}, {"cycle_trials", r.cycle_trials}, {"odd_trials", r.odd_trials},
            {"odd_cycles", r.odd_cycles}, {"contradictions", r.contradictions}};
        if (r.first_failure) {
            const auto & f = *r.first_failure;
            throw Violation{result, {{"fact", f.fact}, {"set", f.set}, {"gaps", f.gaps}, {"split", f.split}, {"reason", f.reason}}};
        }
        return result;
    }

    inline Json verify_tournament_cmd(const Options & o)
    {
        auto instance = load_instance(o.in);
        auto t = std::get_if<OrderedTournament>(&instance);
        if (! t)
            throw PreconditionError("expected a tournament instance");
        auto c = tournament_chromatic(*t);
        auto back = back_edge_graph(*t);
        Json result{{"tournament_chromatic", c.parts}, {"partition", c.partition}, {"back_edges", pairs_json(back.graph.edges())},
            {"roundtrip", tournament_from(back) == *t}};
        if (auto e = expected_number(o, o.expect); e && *e != c.parts)
            throw Violation{result, {{"expected", *e}, {"actual", c.parts}, {"partition", c.partition}}};
        return result;
    }

    inline Json export_cmd(const Options & o, bool dimacs)
    {
        auto instance = load_instance(o.in);
        if (dimacs) {
            Graph g = as_graph(instance);
            write_file_atomic(o.out, to_dimacs(g));
            return {{"format", "dimacs"}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
        }
        write_file_atomic(o.out, dump(to_json(instance)));
        return {{"format", "json"}};
    }

} // namespace detail

/// Runs one command line (without the program name). `env_budget` is the
/// value of CHIFORGE_BUDGET, if set.
inline CommandResult run(const std::vector<std::string> & args, std::optional<std::string> env_budget = std::nullopt)
{
    CLI::App app{"chiforge: build, derive and certify the constructions", "chiforge"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);
    Options o;
    std::function<Json(std::uint64_t)> handler;
    std::string command;

    auto add_budget = [&](CLI::App * sub) {
        sub->add_option("--budget", o.budget, "Search work budget (default: CHIFORGE_BUDGET or 2e9)");
    };
    auto leaf = [&](CLI::App * parent, const std::string & name, const std::string & help, auto body) {
        auto * sub = parent->add_subcommand(name, help);
        sub->callback([&, name, parent, body] {
            command = (parent == &app ? "" : parent->get_name() + " ") + name;
            handler = [&, body](std::uint64_t budget) { return body(budget); };
        });
        return sub;
    };

    auto * build = app.add_subcommand("build", "Build a base instance");
    build->require_subcommand(1);
    {
        auto * s = leaf(build, "zykov", "Oriented Zykov graph Z_n (n <= 4)", [&](std::uint64_t) { return detail::build_zykov_cmd(o); });
        s->add_option("--n", o.n, "Order n")->required();
        s->add_option("--out", o.out, "Output JSON")->required();

        s = leaf(build, "nr", "Oriented Nesetril-Rodl graph or hypergraph, one stage", [&](std::uint64_t) { return detail::build_nr_cmd(o); });
        s->add_option("--n", o.n, "Number of parts (graph) or target chromatic number (hypergraph)")->required();
        s->add_option("--g", o.g, "Girth target")->required();
        s->add_option("--k", o.k, "Uniformity (2 = graph)")->capture_default_str();
        s->add_option("--stage", o.stage, "Stage to stop at")->capture_default_str();
        s->add_option("--template", o.template_kind, "Template provider: cycle or eh")->capture_default_str();
        s->add_option("--template-length", o.template_length, "Odd cycle length for the cycle template")->capture_default_str();
        s->add_option("--chi", o.chi, "Template chromatic target (eh)")->capture_default_str();
        s->add_option("--vertices", o.vertices, "Template vertices (eh)")->capture_default_str();
        s->add_option("--edges", o.edges, "Template sampled edges (eh)")->capture_default_str();
        s->add_option("--mode", o.mode, "Template mode: verified or assumed")->capture_default_str();
        s->add_option("--seed", o.seed, "Random seed")->capture_default_str();
        s->add_option("--out", o.out, "Output JSON")->required();

        s = leaf(build, "eh", "Random hypergraph template (generate and verify)", [&](std::uint64_t) { return detail::build_eh_cmd(o); });
        s->add_option("--k", o.k, "Uniformity")->capture_default_str();
        s->add_option("--chi", o.chi, "Chromatic target")->capture_default_str();
        s->add_option("--g", o.g, "Girth target")->capture_default_str();
        s->add_option("--vertices", o.vertices, "Vertices")->capture_default_str();
        s->add_option("--edges", o.edges, "Edges sampled before pruning")->capture_default_str();
        s->add_option("--mode", o.mode, "verified or assumed")->capture_default_str();
        s->add_option("--seed", o.seed, "Random seed")->capture_default_str();
        s->add_option("--out", o.out, "Output JSON")->required();

        s = leaf(build, "path", "Directed path 0 -> 1 -> ... -> N", [&](std::uint64_t) { return detail::build_path_cmd(o); });
        s->add_option("--n", o.n, "Length N (N+1 vertices)")->required();
        s->add_option("--out", o.out, "Output JSON")->required();

        s = leaf(build, "loosepath", "Loose m-uniform path", [&](std::uint64_t) { return detail::build_loosepath_cmd(o); });
        s->add_option("--m", o.m, "Uniformity")->capture_default_str();
        s->add_option("--n", o.n, "Number of edges")->required();
        s->add_option("--out", o.out, "Output JSON")->required();
    }

    {
        auto * s = leaf(&app, "plan", "Compute an embedding plan for a target", [&](std::uint64_t) { return detail::plan_cmd(o); });
        s->add_option("--target", o.target, "Target: file, Pn, Kn, Cn, path:n, cycle:n, complete:n, edge:m, petersen, fano")->required();
        s->add_option("--theorem", o.theorem, "clique, odd-girth or hypergraph")
            ->check(CLI::IsMember({"clique", "odd-girth", "hypergraph"}))
            ->capture_default_str();
        s->add_option("--p", o.p, "Override the prime (validated)");
        s->add_option("--out", o.out, "Output plan JSON");
    }

    auto * derive = app.add_subcommand("derive", "Build the derived graph or hypergraph");
    derive->require_subcommand(1);
    {
        auto * s = leaf(derive, "graph", "Derived graph from a digraph base", [&](std::uint64_t) { return detail::derive_graph_cmd(o); });
        s->add_option("--base", o.base, "Base digraph JSON")->required();
        s->add_option("--plan", o.plan, "Plan JSON")->required();
        s->add_option("--out", o.out, "Output JSON")->required();
        s->add_flag("--no-shortcut", o.no_shortcut, "Walk descendants even for directed-path bases");

        s = leaf(derive, "hypergraph", "Derived hypergraph from an ordered hypergraph base",
            [&](std::uint64_t) { return detail::derive_hypergraph_cmd(o); });
        s->add_option("--base", o.base, "Base hypergraph JSON")->required();
        s->add_option("--plan", o.plan, "Plan JSON")->required();
        s->add_option("--out", o.out, "Output JSON")->required();
    }

    auto * verify = app.add_subcommand("verify", "Certify a property");
    verify->require_subcommand(1);
    {
        auto * s = leaf(verify, "chromatic", "Exact chromatic number", [&](std::uint64_t b) { return detail::verify_chromatic_cmd(o, b); });
        s->add_option("--in", o.in, "Instance")->required();
        s->add_option("--expect", o.expect, "Expected value");
        add_budget(s);

        s = leaf(verify, "clique", "Exact clique number", [&](std::uint64_t) { return detail::verify_clique_cmd(o); });
        s->add_option("--in", o.in, "Instance")->required();
        s->add_option("--expect", o.expect, "Expected value");

        s = leaf(verify, "girth", "Girth and odd girth", [&](std::uint64_t) { return detail::verify_girth_cmd(o); });
        s->add_option("--in", o.in, "Instance")->required();
        s->add_option("--expect", o.expect, "Expected girth (integer or inf)");
        s->add_option("--expect-odd", o.expect_odd, "Expected odd girth (integer or inf)");
        s->add_option("--roots", o.roots, "Search roots (exact only if they meet a shortest cycle)");

        s = leaf(verify, "induced", "Induced copy of a target", [&](std::uint64_t) { return detail::verify_induced_cmd(o); });
        s->add_option("--in", o.in, "Host instance")->required();
        s->add_option("--target", o.target, "Target (file or name)")->required();
        s->add_option("--expect", o.expect, "present or absent");

        s = leaf(verify, "base-props", "Acyclicity and unique directed paths", [&](std::uint64_t) { return detail::verify_base_props_cmd(o); });
        s->add_option("--in", o.in, "Digraph or ordered hypergraph")->required();

        s = leaf(verify, "direction-changes", "Fewest direction changes over all cycles",
            [&](std::uint64_t b) { return detail::verify_direction_changes_cmd(o, b); });
        s->add_option("--in", o.in, "Digraph or ordered hypergraph")->required();
        s->add_option("--min", o.min_changes, "Required minimum")->capture_default_str();
        s->add_option("--max-length", o.max_length, "Longest cycle to enumerate");
        add_budget(s);

        s = leaf(verify, "facts", "Randomised clique-fact and cycle-fact trials", [&](std::uint64_t) { return detail::verify_facts_cmd(o); });
        s->set_help_flag("--help", "Print this help message and exit");
        s->add_option("--h", o.h, "h of the B_h sets")->capture_default_str();
        s->add_option("--trials", o.trials, "Number of trials")->capture_default_str();
        s->add_option("--seed", o.seed, "Random seed")->capture_default_str();

        s = leaf(verify, "tournament", "Tournament chromatic number", [&](std::uint64_t) { return detail::verify_tournament_cmd(o); });
        s->add_option("--in", o.in, "Tournament JSON")->required();
        s->add_option("--expect", o.expect, "Expected value");
    }

    auto * exp = app.add_subcommand("export", "Convert formats");
    exp->require_subcommand(1);
    {
        auto * s = leaf(exp, "dimacs", "Write DIMACS .col", [&](std::uint64_t) { return detail::export_cmd(o, true); });
        s->add_option("--in", o.in, "Instance")->required();
        s->add_option("--out", o.out, "Output file")->required();
        s = leaf(exp, "json", "Write canonical JSON", [&](std::uint64_t) { return detail::export_cmd(o, false); });
        s->add_option("--in", o.in, "Instance (JSON or DIMACS)")->required();
        s->add_option("--out", o.out, "Output file")->required();
    }

    CommandResult result;
    auto finish = [&](Status status, Json body) {
        result.status = status;
        result.report = std::move(body);
        result.report["status"] = to_string(status);
        result.report["command"] = command;
        result.report["provenance"] = {{"tool", "chiforge"}, {"version", version}, {"arguments", args}};
        return result;
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::Success & e) {
        std::ostringstream out, err;
        app.exit(e, out, err);
        result.text = out.str() + err.str();
        return result;
    }
    catch (const CLI::ParseError & e) {
        std::ostringstream out, err;
        app.exit(e, out, err);
        return finish(Status::error, {{"error", {{"kind", "usage"}, {"message", e.what()}}}});
    }

    try {
        std::uint64_t budget = default_search_budget;
        if (o.budget)
            budget = *o.budget;
        else if (env_budget)
            budget = detail::parse_budget(*env_budget, "CHIFORGE_BUDGET");
        if (budget == 0)
            throw PreconditionError("--budget must be positive");
        return finish(Status::ok, {{"result", handler(budget)}});
    }
    catch (const Violation & v) {
        return finish(Status::violation, {{"result", v.result}, {"counterexample", v.counterexample}});
    }
    catch (const BudgetExceeded & e) {
        return finish(Status::budget_exceeded, {{"error", {{"kind", "budget"}, {"message", e.what()}, {"lower", e.lower()}, {"upper", e.upper()}}}});
    }
    catch (const ParseError & e) {
        return finish(Status::error, {{"error", {{"kind", "parse"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}}}});
    }
    catch (const InducedCopyFound & e) {
        return finish(Status::violation, {{"counterexample", {{"embedding", e.witness()}}}});
    }
    catch (const PreconditionError & e) {
        return finish(Status::error, {{"error", {{"kind", "precondition"}, {"message", e.what()}}}});
    }
    catch (const std::exception & e) {
        return finish(Status::error, {{"error", {{"kind", "internal"}, {"message", e.what()}}}});
    }
}

} // namespace chiforge::cli

#endif // CHIFORGE_TOOLS_CLI_HPP
