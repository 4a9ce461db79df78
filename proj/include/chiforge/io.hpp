#ifndef CHIFORGE_IO_HPP
#define CHIFORGE_IO_HPP

#include "chiforge/derive.hpp"
#include "chiforge/errors.hpp"
#include "chiforge/graph.hpp"
#include "chiforge/sidon.hpp"
#include "chiforge/tournaments.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace chiforge {

using Json = nlohmann::json;

// ------------------------------------------------------------- writing

inline Json pairs_json(const std::vector<VertexPair> & pairs)
{
    Json out = Json::array();
    for (auto [u, v] : pairs)
        out.push_back({u, v});
    return out;
}

inline Json to_json(const Graph & g)
{
    return {{"type", "graph"}, {"n", g.vertex_count()}, {"edges", pairs_json(g.edges())}};
}

/// Arcs are written [tail, head], sorted.
inline Json to_json(const Digraph & d)
{
    return {{"type", "digraph"}, {"n", d.vertex_count()}, {"edges", pairs_json(d.arcs())}};
}

inline Json to_json(const Hypergraph & h)
{
    Json edges = Json::array();
    for (const auto & e : h.edges())
        edges.push_back(e);
    return {{"type", "hypergraph"}, {"n", h.vertex_count()}, {"edges", std::move(edges)}};
}

inline Json to_json(const OrderedHypergraph & oh)
{
    Json out = to_json(oh.hypergraph());
    out["order"] = oh.order();
    return out;
}

inline Json to_json(const OrderedTournament & t)
{
    return {{"type", "tournament"}, {"n", t.vertex_count()}, {"arcs", pairs_json(t.arcs())}, {"order", t.order()}};
}

inline Json to_json(const OrderedGraph & g)
{
    Json out = to_json(g.graph);
    out["order"] = g.order;
    return out;
}

inline Json to_json(const BhSet & s)
{
    return {{"h", s.h()}, {"elements", s.elements()}, {"bound", s.bound()}};
}

inline Json to_json(const EmbedPlan & plan)
{
    Json fstar = Json::object();
    for (std::size_t x = 0; x < plan.fstar.size(); ++x)
        fstar[std::to_string(x)] = plan.fstar[x];
    Json out{{"theorem", to_string(plan.theorem)}, {"p", plan.p}, {"h", plan.h}, {"f", plan.f}, {"base_set", plan.base_set},
        {"S", plan.S}, {"Fstar", std::move(fstar)}};
    if (plan.theorem == Theorem::hypergraph) {
        out["m"] = plan.m;
        out["E"] = plan.E_tuples;
        out["target"] = to_json(*plan.target_hypergraph);
    }
    else {
        out["E"] = plan.E;
        out["target"] = to_json(*plan.target_graph);
    }
    return out;
}

/// DIMACS ".col": header "p edge n m", then 1-indexed "e u v" lines.
inline std::string to_dimacs(const Graph & g)
{
    std::ostringstream out;
    out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges())
        out << "e " << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

// ------------------------------------------------------------- reading

namespace detail {

    inline std::pair<std::size_t, std::size_t> line_column(const std::string & text, std::size_t offset)
    {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            }
            else
                ++column;
        }
        return {line, column};
    }

    inline const Json & field(const Json & j, const char * name)
    {
        if (! j.is_object())
            throw ParseError("expected a JSON object");
        auto it = j.find(name);
        if (it == j.end())
            throw ParseError(std::string("missing field \"") + name + "\"");
        return *it;
    }

    template <typename T>
    T get_field(const Json & j, const char * name)
    {
        try {
            return field(j, name).get<T>();
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError(std::string("field \"") + name + "\": " + e.what());
        }
    }

    inline std::vector<VertexPair> get_pairs(const Json & j, const char * name)
    {
        std::vector<VertexPair> out;
        for (auto & [a, b] : get_field<std::vector<std::array<Vertex, 2>>>(j, name))
            out.emplace_back(a, b);
        return out;
    }

    // Wraps constructor preconditions as parse errors naming the field.
    template <typename Build>
    auto build(const char * what, Build && b)
    {
        try {
            return b();
        }
        catch (const PreconditionError & e) {
            throw ParseError(std::string(what) + ": " + e.what());
        }
    }

} // namespace detail

inline Json parse_json(const std::string & text)
{
    try {
        return Json::parse(text);
    }
    catch (const nlohmann::json::parse_error & e) {
        auto [line, column] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string what = e.what();
        auto colon = what.rfind(": ");
        throw ParseError("malformed JSON (" + (colon == std::string::npos ? what : what.substr(colon + 2)) + ")", line, column);
    }
}

inline std::string type_of(const Json & j) { return detail::get_field<std::string>(j, "type"); }

inline Graph graph_from_json(const Json & j)
{
    if (type_of(j) != "graph")
        throw ParseError("expected type \"graph\", got \"" + type_of(j) + "\"");
    auto n = detail::get_field<std::size_t>(j, "n");
    auto edges = detail::get_pairs(j, "edges");
    return detail::build("edges", [&] { return Graph(n, std::span<const VertexPair>(edges)); });
}

inline Digraph digraph_from_json(const Json & j)
{
    if (type_of(j) != "digraph")
        throw ParseError("expected type \"digraph\", got \"" + type_of(j) + "\"");
    auto n = detail::get_field<std::size_t>(j, "n");
    auto arcs = detail::get_pairs(j, "edges");
    return detail::build("edges", [&] { return Digraph(n, std::span<const VertexPair>(arcs)); });
}

inline OrderedHypergraph hypergraph_from_json(const Json & j)
{
    if (type_of(j) != "hypergraph")
        throw ParseError("expected type \"hypergraph\", got \"" + type_of(j) + "\"");
    auto n = detail::get_field<std::size_t>(j, "n");
    auto edges = detail::get_field<std::vector<Hypergraph::Edge>>(j, "edges");
    Hypergraph h = detail::build("edges", [&] { return Hypergraph(n, edges); });
    if (! j.contains("order"))
        return OrderedHypergraph(std::move(h));
    auto order = detail::get_field<std::vector<Vertex>>(j, "order");
    return detail::build("order", [&] { return OrderedHypergraph(h, order); });
}

inline OrderedTournament tournament_from_json(const Json & j)
{
    if (type_of(j) != "tournament")
        throw ParseError("expected type \"tournament\", got \"" + type_of(j) + "\"");
    auto n = detail::get_field<std::size_t>(j, "n");
    auto arcs = detail::get_pairs(j, "arcs");
    auto order = j.contains("order") ? detail::get_field<std::vector<Vertex>>(j, "order") : identity_order(n);
    return detail::build("arcs", [&] { return OrderedTournament(n, arcs, order); });
}

inline BhSet bh_set_from_json(const Json & j)
{
    auto h = detail::get_field<std::size_t>(j, "h");
    auto elements = detail::get_field<std::vector<Value>>(j, "elements");
    auto bound = detail::get_field<Value>(j, "bound");
    return detail::build("elements", [&] { return BhSet(elements, h, bound); });
}

/// Reads a plan back; the caller is expected to run validate_plan on it.
inline EmbedPlan plan_from_json(const Json & j)
{
    EmbedPlan plan;
    auto theorem = detail::get_field<std::string>(j, "theorem");
    if (theorem == "clique")
        plan.theorem = Theorem::clique;
    else if (theorem == "odd-girth")
        plan.theorem = Theorem::odd_girth;
    else if (theorem == "hypergraph")
        plan.theorem = Theorem::hypergraph;
    else
        throw ParseError("field \"theorem\": unknown value \"" + theorem + "\"");
    plan.p = detail::get_field<std::uint64_t>(j, "p");
    plan.h = detail::get_field<std::size_t>(j, "h");
    plan.f = detail::get_field<std::size_t>(j, "f");
    plan.base_set = detail::get_field<std::vector<Value>>(j, "base_set");
    plan.S = detail::get_field<std::vector<Value>>(j, "S");
    auto fstar = detail::get_field<std::map<std::string, Value>>(j, "Fstar");
    plan.fstar.assign(plan.f, 0);
    if (fstar.size() != plan.f)
        throw ParseError("field \"Fstar\": expected " + std::to_string(plan.f) + " entries");
    for (auto & [key, value] : fstar) {
        std::size_t x = 0;
        try {
            x = std::stoul(key);
        }
        catch (const std::exception &) {
            throw ParseError("field \"Fstar\": key \"" + key + "\" is not a vertex");
        }
        if (x >= plan.f)
            throw ParseError("field \"Fstar\": vertex " + key + " out of range");
        plan.fstar[x] = value;
    }
    const Json & target = detail::field(j, "target");
    if (plan.theorem == Theorem::hypergraph) {
        plan.m = detail::get_field<std::size_t>(j, "m");
        plan.E_tuples = detail::get_field<std::vector<std::vector<Value>>>(j, "E");
        plan.target_hypergraph = hypergraph_from_json(target).hypergraph();
    }
    else {
        plan.E = detail::get_field<std::vector<Value>>(j, "E");
        plan.target_graph = graph_from_json(target);
    }
    return plan;
}

inline Graph graph_from_dimacs(const std::string & text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> n, m;
    std::vector<VertexPair> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream words(line);
        std::string tag;
        if (! (words >> tag) || tag == "c")
            continue;
        auto fail = [&](const std::string & what) {
            throw ParseError("DIMACS: " + what, line_no, line.find_first_not_of(" \t") + 1);
        };
        if (tag == "p") {
            std::string format;
            std::size_t nv = 0, ne = 0;
            if (n || ! (words >> format >> nv >> ne) || (format != "edge" && format != "col"))
                fail("bad problem line");
            n = nv;
            m = ne;
        }
        else if (tag == "e") {
            std::size_t u = 0, v = 0;
            if (! n || ! (words >> u >> v) || u < 1 || v < 1 || u > *n || v > *n || u == v)
                fail("bad edge line");
            edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
        }
        else
            fail("unknown line tag \"" + tag + "\"");
    }
    if (! n)
        throw ParseError("DIMACS: missing problem line");
    Graph g = detail::build("DIMACS edges", [&] { return Graph(*n, std::span<const VertexPair>(edges)); });
    if (g.edge_count() != *m)
        throw ParseError("DIMACS: header says " + std::to_string(*m) + " edges, found " + std::to_string(g.edge_count()));
    return g;
}

using Instance = std::variant<Graph, Digraph, OrderedHypergraph, OrderedTournament>;

inline Instance instance_from_json(const Json & j)
{
    auto type = type_of(j);
    if (type == "graph")
        return graph_from_json(j);
    if (type == "digraph")
        return digraph_from_json(j);
    if (type == "hypergraph")
        return hypergraph_from_json(j);
    if (type == "tournament")
        return tournament_from_json(j);
    throw ParseError("unknown instance type \"" + type + "\"");
}

inline Json to_json(const Instance & instance)
{
    return std::visit([](const auto & x) { return to_json(x); }, instance);
}

// ---------------------------------------------------------------- files

inline std::string read_file(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Writes to a sibling temporary file and renames it into place.
inline void write_file_atomic(const std::string & path, const std::string & contents)
{
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (! out)
            throw Error("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (! out)
            throw Error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot move " + tmp.string() + " to " + path);
    }
}

/// Canonical text form: keys sorted (nlohmann's default), two-space indent.
inline std::string dump(const Json & j) { return j.dump(2) + "\n"; }

} // namespace chiforge

#endif // CHIFORGE_IO_HPP
