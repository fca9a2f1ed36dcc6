#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tlabel/graph.hpp"
#include "tlabel/labeling.hpp"

namespace tlabel {

/// A graph read from text together with the labels its vertices had there.
/// names[id] is the label of vertex id.
struct GraphFile {
    Graph graph;
    std::optional<std::vector<std::vector<Vertex>>> rotation;
    std::vector<std::string> names;

    std::optional<Vertex> id_of(const std::string& name) const {
        for (Vertex v = 0; v < static_cast<Vertex>(names.size()); ++v)
            if (names[v] == name)
                return v;
        return std::nullopt;
    }

    /// The stored embedding; without rotation lines, neighbors in id order
    /// (a valid rotation system that need not be planar).
    PlaneGraph plane(bool require_rotation) const {
        if (!rotation && require_rotation)
            throw InputError("graph file has no rotation lines (r ...) so it carries no embedding");
        std::vector<std::vector<Vertex>> rot(graph.num_vertices());
        for (Vertex v = 0; v < graph.num_vertices(); ++v) {
            if (rotation)
                rot[v] = (*rotation)[v];
            else
                rot[v].assign(graph.neighbors(v).begin(), graph.neighbors(v).end());
        }
        auto edges = graph.edges();
        return build_plane_graph(graph.num_vertices(), std::span<const Edge>(edges), std::move(rot));
    }
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;)
        out.push_back(tok);
    return out;
}

inline std::optional<long long> parse_int(const std::string& s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

inline bool is_comment(const std::vector<std::string>& tok) {
    return tok.empty() || tok[0] == "c" || tok[0][0] == '#';
}

inline std::string where(int line) { return "line " + std::to_string(line) + ": "; }

} // namespace detail

/// Parses `p tlabel <n> <m>`, `e <u> <v>` and `r <v> <w1> ... <wk>` lines.
/// Labels that are all integers in [0, n) are used as ids directly; any
/// other labels are numbered in order of first appearance.
inline GraphFile parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<std::pair<long long, long long>> header;
    std::vector<std::pair<std::string, std::string>> edge_labels;
    std::vector<std::pair<int, std::vector<std::string>>> rot_lines;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = detail::split_ws(line);
        if (detail::is_comment(tok))
            continue;
        if (tok[0] == "p") {
            if (header)
                throw InputError(detail::where(lineno) + "second header line");
            if (tok.size() != 4 || tok[1] != "tlabel")
                throw InputError(detail::where(lineno) + "expected 'p tlabel <n> <m>'");
            auto n = detail::parse_int(tok[2]), m = detail::parse_int(tok[3]);
            if (!n || !m || *n < 0 || *m < 0)
                throw InputError(detail::where(lineno) + "bad vertex or edge count");
            header = {*n, *m};
        } else if (tok[0] == "e") {
            if (!header)
                throw InputError(detail::where(lineno) + "edge before header");
            if (tok.size() != 3)
                throw InputError(detail::where(lineno) + "expected 'e <u> <v>'");
            edge_labels.emplace_back(tok[1], tok[2]);
        } else if (tok[0] == "r") {
            if (!header)
                throw InputError(detail::where(lineno) + "rotation before header");
            if (tok.size() < 2)
                throw InputError(detail::where(lineno) + "expected 'r <v> <w1> ... <wk>'");
            rot_lines.emplace_back(lineno, std::vector<std::string>(tok.begin() + 1, tok.end()));
        } else {
            throw InputError(detail::where(lineno) + "unknown record '" + tok[0] + "'");
        }
    }
    if (!header)
        throw InputError("missing 'p tlabel <n> <m>' header");
    const long long n = header->first;
    if (static_cast<long long>(edge_labels.size()) != header->second)
        throw InputError("header declares " + std::to_string(header->second) + " edges but file has " +
                         std::to_string(edge_labels.size()));

    std::vector<std::string> all;
    for (const auto& [a, b] : edge_labels) {
        all.push_back(a);
        all.push_back(b);
    }
    for (const auto& [ln, toks] : rot_lines)
        all.insert(all.end(), toks.begin(), toks.end());
    bool identity = true;
    for (const auto& s : all) {
        auto v = detail::parse_int(s);
        identity = identity && v && *v >= 0 && *v < n;
    }

    GraphFile gf;
    std::map<std::string, Vertex> ids;
    if (identity) {
        for (Vertex v = 0; v < n; ++v) {
            gf.names.push_back(std::to_string(v));
            ids[gf.names.back()] = v;
        }
    } else {
        for (const auto& s : all) {
            if (ids.count(s))
                continue;
            if (static_cast<long long>(ids.size()) == n)
                throw InputError("more distinct vertex labels than the " + std::to_string(n) + " declared");
            ids[s] = static_cast<Vertex>(gf.names.size());
            gf.names.push_back(s);
        }
        // Declared vertices that never appear are isolated; give them fresh names.
        for (long long extra = 0; static_cast<long long>(gf.names.size()) < n; ++extra) {
            std::string name = "_" + std::to_string(extra);
            if (!ids.count(name)) {
                ids[name] = static_cast<Vertex>(gf.names.size());
                gf.names.push_back(name);
            }
        }
    }
    auto id = [&](const std::string& s) {
        auto it = ids.find(s);
        if (it == ids.end())
            throw InputError("unknown vertex label '" + s + "'");
        return it->second;
    };

    std::vector<Edge> edges;
    for (const auto& [a, b] : edge_labels) {
        const Vertex u = id(a), v = id(b);
        if (u == v)
            throw InputError("self-loop at vertex '" + a + "'");
        edges.emplace_back(u, v);
    }
    gf.graph = Graph::from_edges(static_cast<int>(n), edges);

    if (!rot_lines.empty()) {
        std::vector<std::vector<Vertex>> rot(n);
        std::vector<char> given(n, 0);
        for (const auto& [ln, toks] : rot_lines) {
            const Vertex v = id(toks[0]);
            if (given[v])
                throw InputError(detail::where(ln) + "second rotation line for vertex '" + toks[0] + "'");
            given[v] = 1;
            for (std::size_t i = 1; i < toks.size(); ++i)
                rot[v].push_back(id(toks[i]));
        }
        for (Vertex v = 0; v < n; ++v)
            if (!given[v] && gf.graph.degree(v) > 0)
                throw InputError("vertex '" + gf.names[v] + "' has no rotation line");
        gf.rotation = std::move(rot);
        gf.plane(true); // validates the rotation against the edge set
    }
    return gf;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << text;
}

inline GraphFile load_graph(const std::string& path) { return parse_graph(read_file(path)); }

/// Header, edges in sorted order, then one rotation line per non-isolated
/// vertex when an embedding is given.
inline std::string serialize_graph(const Graph& g, const std::vector<std::vector<Vertex>>* rotation = nullptr) {
    std::ostringstream out;
    out << "p tlabel " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges())
        out << "e " << e.u << ' ' << e.v << '\n';
    if (rotation) {
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            if ((*rotation)[v].empty())
                continue;
            out << "r " << v;
            for (Vertex w : (*rotation)[v])
                out << ' ' << w;
            out << '\n';
        }
    }
    return out.str();
}

inline std::string serialize_graph(const PlaneGraph& pg) { return serialize_graph(pg.graph(), &pg.rotations()); }

/// `v <id> <color>` and `e <u> <w> <color>` lines, in terms of the graph
/// file's vertex labels. Missing elements are fine (partial labelings).
inline PartialLabeling parse_labeling(const std::string& text, const GraphFile& gf) {
    PartialLabeling phi(gf.graph.num_vertices());
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto id = [&](const std::string& s, int ln) {
        auto v = gf.id_of(s);
        if (!v)
            throw InputError(detail::where(ln) + "unknown vertex '" + s + "'");
        return *v;
    };
    auto color = [&](const std::string& s, int ln) {
        auto c = detail::parse_int(s);
        if (!c || *c < 0 || *c > 1'000'000'000)
            throw InputError(detail::where(ln) + "bad color '" + s + "'");
        return static_cast<int>(*c);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = detail::split_ws(line);
        if (detail::is_comment(tok))
            continue;
        if (tok[0] == "v" && tok.size() == 3) {
            const Vertex v = id(tok[1], lineno);
            if (phi.vertex(v))
                throw InputError(detail::where(lineno) + "vertex '" + tok[1] + "' colored twice");
            phi.set_vertex(v, color(tok[2], lineno));
        } else if (tok[0] == "e" && tok.size() == 4) {
            const Vertex u = id(tok[1], lineno), w = id(tok[2], lineno);
            if (u == w || !gf.graph.adjacent(u, w))
                throw InputError(detail::where(lineno) + "'" + tok[1] + " " + tok[2] + "' is not an edge");
            if (phi.edge(Edge(u, w)))
                throw InputError(detail::where(lineno) + "edge colored twice");
            phi.set_edge(Edge(u, w), color(tok[3], lineno));
        } else {
            throw InputError(detail::where(lineno) + "expected 'v <id> <color>' or 'e <u> <w> <color>'");
        }
    }
    return phi;
}

inline std::string serialize_labeling(const PartialLabeling& phi, const std::vector<std::string>* names = nullptr) {
    auto name = [&](Vertex v) { return names ? (*names)[v] : std::to_string(v); };
    std::ostringstream out;
    for (Vertex v = 0; v < phi.num_vertices(); ++v)
        if (auto c = phi.vertex(v))
            out << "v " << name(v) << ' ' << *c << '\n';
    for (const auto& [e, c] : phi.edge_colors())
        out << "e " << name(e.u) << ' ' << name(e.v) << ' ' << c << '\n';
    return out.str();
}

} // namespace tlabel
