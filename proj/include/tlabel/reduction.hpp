#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tlabel/exact.hpp"
#include "tlabel/graph.hpp"
#include "tlabel/labeling.hpp"
#include "tlabel/list_edge_coloring.hpp"

namespace tlabel {

// ---------------------------------------------------------------------------
// Configurations
// ---------------------------------------------------------------------------

enum class ConfigKind {
    SparseEdge, ///< d(u) + d(v) <= M - 2
    LightEdge,  ///< min degree <= floor((M+2)/4) and d(u) + d(v) <= M + 1
    Deg4LowNbr, ///< 4-vertex with a neighbor of degree <= 7
    TwoDeg2,    ///< vertex with two 2-neighbors
    TwinLowNbr, ///< two neighbors of degree M + 2 - d(v) in {2,3}, one on a triangle with v
    Face566,    ///< triangle with degrees 5, 6, 6
    Face567,    ///< triangle 5, 6, 7 whose 5-vertex has a second 6-neighbor
    Alternator, ///< k-alternator B(X, Y)
};

inline std::string to_string(ConfigKind k) {
    switch (k) {
    case ConfigKind::SparseEdge: return "SparseEdge";
    case ConfigKind::LightEdge: return "LightEdge";
    case ConfigKind::Deg4LowNbr: return "Deg4LowNbr";
    case ConfigKind::TwoDeg2: return "TwoDeg2";
    case ConfigKind::TwinLowNbr: return "TwinLowNbr";
    case ConfigKind::Face566: return "Face566";
    case ConfigKind::Face567: return "Face567";
    case ConfigKind::Alternator: return "Alternator";
    }
    return "?";
}

/// Bipartite subgraph B(X, Y) with d_B(x) = d_G(x) <= k on X and
/// d_B(y) >= d_G(y) + k - M on Y.
struct Alternator {
    int k = 0;
    std::vector<Vertex> x;
    std::vector<Vertex> y;
    std::vector<Edge> edges;

    friend bool operator==(const Alternator&, const Alternator&) = default;
};

/// A reducible configuration and the vertices realizing it. Witness order:
///   SparseEdge {u, v}           LightEdge {u (light end), v}
///   Deg4LowNbr {u (degree 4), v}
///   TwoDeg2    {v, x, y, x', y'} where x', y' are the other neighbors of x, y
///   TwinLowNbr {v, v1, v2, u}   with u adjacent to both v and v1
///   Face566    {v1 (deg 5), v2, v3}
///   Face567    {v1 (deg 5), v2 (deg 6), v3 (deg 7), v4 (second 6-neighbor)}
///   Alternator uses `alternator`; witness lists X then Y.
struct ReducibleConfig {
    ConfigKind kind = ConfigKind::SparseEdge;
    std::vector<Vertex> witness;
    /// TwoDeg2 only: 1 when x' == y' (4-cycle), 3 when neither vx' nor vy' is
    /// an edge, 2 for the remaining case (never produced for the labeler).
    int variant = 0;
    Alternator alternator;
};

inline ReducibleConfig make_config(ConfigKind kind, std::vector<Vertex> witness) {
    ReducibleConfig c;
    c.kind = kind;
    c.witness = std::move(witness);
    return c;
}

inline int light_degree(int M) { return (M + 2) / 4; }

namespace detail {

inline bool on_triangle_with(const Graph& g, Vertex a, Vertex b, Vertex c) {
    return g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c);
}

} // namespace detail

inline std::optional<ReducibleConfig> find_sparse_edge(const Graph& g, int M) {
    for (const Edge& e : g.edges())
        if (g.degree(e.u) + g.degree(e.v) <= M - 2)
            return make_config(ConfigKind::SparseEdge, {e.u, e.v});
    return std::nullopt;
}

inline std::optional<ReducibleConfig> find_light_edge(const Graph& g, int M) {
    for (const Edge& e : g.edges()) {
        const int du = g.degree(e.u), dv = g.degree(e.v);
        if (std::min(du, dv) <= light_degree(M) && du + dv <= M + 1) {
            const bool u_light = du <= dv;
            return make_config(ConfigKind::LightEdge, {u_light ? e.u : e.v, u_light ? e.v : e.u});
        }
    }
    return std::nullopt;
}

inline std::optional<ReducibleConfig> find_deg4_low_nbr(const Graph& g, int) {
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        if (g.degree(u) != 4)
            continue;
        for (Vertex v : g.neighbors(u))
            if (g.degree(v) <= 7)
                return make_config(ConfigKind::Deg4LowNbr, {u, v});
    }
    return std::nullopt;
}

/// `vertex_degree`, when set, restricts v to that degree. With
/// `contractible_only` the variant-2 case (vx' or vy' already an edge) is
/// skipped; that situation is a TwinLowNbr configuration instead.
inline std::optional<ReducibleConfig> find_two_deg2(const Graph& g, int, bool contractible_only = true,
                                                    std::optional<int> vertex_degree = std::nullopt) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (vertex_degree && g.degree(v) != *vertex_degree)
            continue;
        std::vector<Vertex> twos;
        for (Vertex w : g.neighbors(v))
            if (g.degree(w) == 2)
                twos.push_back(w);
        for (std::size_t i = 0; i < twos.size(); ++i) {
            for (std::size_t j = i + 1; j < twos.size(); ++j) {
                const Vertex x = twos[i], y = twos[j];
                if (g.adjacent(x, y))
                    continue;
                const Vertex xo = g.neighbors(x)[0] == v ? g.neighbors(x)[1] : g.neighbors(x)[0];
                const Vertex yo = g.neighbors(y)[0] == v ? g.neighbors(y)[1] : g.neighbors(y)[0];
                int variant = 2;
                if (xo == yo)
                    variant = 1;
                else if (!g.adjacent(v, xo) && !g.adjacent(v, yo))
                    variant = 3;
                if (variant == 2 && contractible_only)
                    continue;
                ReducibleConfig cfg = make_config(ConfigKind::TwoDeg2, {v, x, y, xo, yo});
                cfg.variant = variant;
                return cfg;
            }
        }
    }
    return std::nullopt;
}

/// Uses 3-cycles rather than facial triangles: the extension never needs the
/// triangle to bound a face, only the edge uv1.
inline std::optional<ReducibleConfig> find_twin_low_nbr(const Graph& g, int M) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        const int t = M + 2 - g.degree(v);
        if (t < 2 || t > 3)
            continue;
        std::vector<Vertex> twins;
        for (Vertex w : g.neighbors(v))
            if (g.degree(w) == t)
                twins.push_back(w);
        for (std::size_t i = 0; i < twins.size(); ++i) {
            for (std::size_t j = i + 1; j < twins.size(); ++j) {
                for (auto [a, b] : {std::pair{twins[i], twins[j]}, std::pair{twins[j], twins[i]}}) {
                    for (Vertex u : common_neighbors(g, v, a)) {
                        if (u == b)
                            continue;
                        return make_config(ConfigKind::TwinLowNbr, {v, a, b, u});
                    }
                }
            }
        }
    }
    return std::nullopt;
}

inline std::optional<ReducibleConfig> find_face566(const Graph& g, int) {
    for (Vertex v1 = 0; v1 < g.num_vertices(); ++v1) {
        if (g.degree(v1) != 5)
            continue;
        auto nb = g.neighbors(v1);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (g.degree(nb[i]) != 6)
                continue;
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (g.degree(nb[j]) == 6 && g.adjacent(nb[i], nb[j]))
                    return make_config(ConfigKind::Face566, {v1, nb[i], nb[j]});
        }
    }
    return std::nullopt;
}

inline std::optional<ReducibleConfig> find_face567(const Graph& g, int) {
    for (Vertex v1 = 0; v1 < g.num_vertices(); ++v1) {
        if (g.degree(v1) != 5)
            continue;
        auto nb = g.neighbors(v1);
        for (Vertex v2 : nb) {
            if (g.degree(v2) != 6)
                continue;
            for (Vertex v3 : nb) {
                if (g.degree(v3) != 7 || !g.adjacent(v2, v3))
                    continue;
                for (Vertex v4 : nb)
                    if (v4 != v2 && g.degree(v4) == 6)
                        return make_config(ConfigKind::Face567, {v1, v2, v3, v4});
            }
        }
    }
    return std::nullopt;
}

/// Maximal k-alternator by peeling: start from all vertices of degree 1..k
/// as X and their other neighbors as Y, then drop X-vertices with a neighbor
/// outside Y and Y-vertices with d_B(y) < d_G(y) + k - M until stable.
inline std::optional<Alternator> find_k_alternator(const Graph& g, int M, int k) {
    if (k < 3 || k > light_degree(M))
        throw InputError("alternator parameter k=" + std::to_string(k) + " outside 3.." +
                         std::to_string(light_degree(M)));
    const int n = g.num_vertices();
    std::vector<char> in_x(n, 0), in_y(n, 0);
    for (Vertex v = 0; v < n; ++v)
        in_x[v] = g.degree(v) >= 1 && g.degree(v) <= k;
    for (Vertex v = 0; v < n; ++v) {
        if (in_x[v])
            continue;
        for (Vertex w : g.neighbors(v))
            if (in_x[w])
                in_y[v] = 1;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex x = 0; x < n; ++x) {
            if (!in_x[x])
                continue;
            for (Vertex w : g.neighbors(x)) {
                if (!in_y[w]) {
                    in_x[x] = 0;
                    changed = true;
                    break;
                }
            }
        }
        for (Vertex y = 0; y < n; ++y) {
            if (!in_y[y])
                continue;
            int db = 0;
            for (Vertex w : g.neighbors(y))
                db += in_x[w];
            if (db == 0 || db < g.degree(y) + k - M) {
                in_y[y] = 0;
                changed = true;
            }
        }
    }
    Alternator alt;
    alt.k = k;
    for (Vertex v = 0; v < n; ++v) {
        if (in_x[v])
            alt.x.push_back(v);
        if (in_y[v])
            alt.y.push_back(v);
    }
    if (alt.x.empty())
        return std::nullopt;
    for (Vertex x : alt.x)
        for (Vertex w : g.neighbors(x))
            alt.edges.emplace_back(x, w);
    std::sort(alt.edges.begin(), alt.edges.end());
    return alt;
}

inline std::optional<ReducibleConfig> find_alternator_config(const Graph& g, int M) {
    for (int k = 3; k <= light_degree(M); ++k) {
        if (auto alt = find_k_alternator(g, M, k)) {
            ReducibleConfig cfg = make_config(ConfigKind::Alternator, {});
            cfg.witness = alt->x;
            cfg.witness.insert(cfg.witness.end(), alt->y.begin(), alt->y.end());
            cfg.alternator = std::move(*alt);
            return cfg;
        }
    }
    return std::nullopt;
}

/// Re-checks the defining conditions of a configuration against g.
inline bool config_holds(const Graph& g, int M, const ReducibleConfig& cfg) {
    const auto& w = cfg.witness;
    auto deg = [&](Vertex v) { return g.degree(v); };
    auto valid = [&](Vertex v) { return v >= 0 && v < g.num_vertices(); };
    for (Vertex v : w)
        if (!valid(v))
            return false;
    switch (cfg.kind) {
    case ConfigKind::SparseEdge:
        return w.size() == 2 && g.adjacent(w[0], w[1]) && deg(w[0]) + deg(w[1]) <= M - 2;
    case ConfigKind::LightEdge:
        return w.size() == 2 && g.adjacent(w[0], w[1]) && deg(w[0]) <= light_degree(M) &&
               deg(w[0]) + deg(w[1]) <= M + 1;
    case ConfigKind::Deg4LowNbr:
        return w.size() == 2 && g.adjacent(w[0], w[1]) && deg(w[0]) == 4 && deg(w[1]) <= 7;
    case ConfigKind::TwoDeg2: {
        if (w.size() != 5)
            return false;
        const Vertex v = w[0], x = w[1], y = w[2], xo = w[3], yo = w[4];
        if (x == y || deg(x) != 2 || deg(y) != 2 || !g.adjacent(v, x) || !g.adjacent(v, y) ||
            g.adjacent(x, y) || !g.adjacent(x, xo) || !g.adjacent(y, yo) || xo == v || yo == v)
            return false;
        if (cfg.variant == 1)
            return xo == yo;
        if (cfg.variant == 3)
            return xo != yo && !g.adjacent(v, xo) && !g.adjacent(v, yo);
        return cfg.variant == 2 && xo != yo && (g.adjacent(v, xo) || g.adjacent(v, yo));
    }
    case ConfigKind::TwinLowNbr: {
        if (w.size() != 4)
            return false;
        const Vertex v = w[0], v1 = w[1], v2 = w[2], u = w[3];
        const int t = M + 2 - deg(v);
        return t >= 2 && t <= 3 && v1 != v2 && deg(v1) == t && deg(v2) == t && g.adjacent(v, v1) &&
               g.adjacent(v, v2) && u != v2 && detail::on_triangle_with(g, v, v1, u);
    }
    case ConfigKind::Face566:
        return w.size() == 3 && deg(w[0]) == 5 && deg(w[1]) == 6 && deg(w[2]) == 6 &&
               detail::on_triangle_with(g, w[0], w[1], w[2]);
    case ConfigKind::Face567:
        return w.size() == 4 && deg(w[0]) == 5 && deg(w[1]) == 6 && deg(w[2]) == 7 &&
               detail::on_triangle_with(g, w[0], w[1], w[2]) && w[3] != w[1] && deg(w[3]) == 6 &&
               g.adjacent(w[0], w[3]);
    case ConfigKind::Alternator: {
        const auto& a = cfg.alternator;
        if (a.k < 3 || a.k > light_degree(M) || a.x.empty())
            return false;
        std::vector<char> in_x(g.num_vertices(), 0), in_y(g.num_vertices(), 0);
        for (Vertex x : a.x)
            in_x[x] = 1;
        for (Vertex y : a.y) {
            if (in_x[y])
                return false;
            in_y[y] = 1;
        }
        std::map<Vertex, int> db;
        for (const Edge& e : a.edges) {
            if (!g.has_edge(e))
                return false;
            const bool ux = in_x[e.u] && in_y[e.v], vx = in_x[e.v] && in_y[e.u];
            if (!ux && !vx)
                return false;
            ++db[e.u];
            ++db[e.v];
        }
        for (Vertex x : a.x)
            if (deg(x) > a.k || db[x] != deg(x))
                return false;
        for (Vertex y : a.y)
            if (db[y] < deg(y) + a.k - M)
                return false;
        return true;
    }
    }
    return false;
}

/// Cheapest checks first. Throws IrreducibleError when nothing applies,
/// which for a plane graph with Δ <= M, M >= 12 means the Δ+2 bound the
/// labeler is built on has a counterexample or the library has a bug.
inline ReducibleConfig find_configuration(const Graph& g, int M) {
    if (auto c = find_sparse_edge(g, M))
        return *c;
    if (auto c = find_light_edge(g, M))
        return *c;
    if (auto c = find_deg4_low_nbr(g, M))
        return *c;
    if (auto c = find_two_deg2(g, M))
        return *c;
    if (auto c = find_twin_low_nbr(g, M))
        return *c;
    if (auto c = find_face566(g, M))
        return *c;
    if (auto c = find_face567(g, M))
        return *c;
    if (auto c = find_alternator_config(g, M))
        return *c;
    std::ostringstream msg;
    msg << "no reducible configuration in a graph with " << g.num_vertices() << " vertices, "
        << g.num_edges() << " edges, max degree " << g.max_degree() << ", M=" << M;
    throw IrreducibleError(msg.str());
}

inline ReducibleConfig find_configuration(const PlaneGraph& g, int M) { return find_configuration(g.graph(), M); }

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

namespace detail {

/// Rebuilds a plane graph after removing `removed` and renaming rotation
/// entries: each (at, from, to) replaces neighbor `from` by `to` in the
/// rotation at `at`, keeping its position.
inline PlaneGraph reshape(const PlaneGraph& pg, std::vector<Edge> removed,
                          const std::vector<std::tuple<Vertex, Vertex, Vertex>>& renames = {}) {
    std::sort(removed.begin(), removed.end());
    auto gone = [&](Vertex a, Vertex b) { return std::binary_search(removed.begin(), removed.end(), Edge(a, b)); };
    std::vector<std::vector<Vertex>> rotation(pg.num_vertices());
    for (Vertex v = 0; v < pg.num_vertices(); ++v) {
        for (Vertex w : pg.rotation(v)) {
            Vertex target = w;
            bool renamed = false;
            for (const auto& [at, from, to] : renames)
                if (at == v && from == w) {
                    target = to;
                    renamed = true;
                }
            if (renamed || !gone(v, w))
                rotation[v].push_back(target);
        }
    }
    std::vector<Edge> edges;
    for (Vertex v = 0; v < pg.num_vertices(); ++v)
        for (Vertex w : rotation[v])
            if (v < w)
                edges.emplace_back(v, w);
    return build_plane_graph(pg.num_vertices(), edges, std::move(rotation));
}

inline std::vector<Edge> incident_edges(const Graph& g, Vertex v) {
    std::vector<Edge> out;
    for (Vertex w : g.neighbors(v))
        out.emplace_back(v, w);
    return out;
}

} // namespace detail

/// The smaller plane graph the extension starts from. Vertex ids never
/// change; deleted vertices stay behind as isolated vertices.
inline PlaneGraph reduce(const PlaneGraph& g, const ReducibleConfig& cfg) {
    const auto& w = cfg.witness;
    switch (cfg.kind) {
    case ConfigKind::SparseEdge:
    case ConfigKind::LightEdge:
    case ConfigKind::Deg4LowNbr:
        return detail::reshape(g, {Edge(w[0], w[1])});
    case ConfigKind::Face566:
    case ConfigKind::Face567:
        return detail::reshape(g, {Edge(w[0], w[1]), Edge(w[0], w[2])});
    case ConfigKind::TwinLowNbr:
        return detail::reshape(g, {Edge(w[0], w[1]), Edge(w[0], w[2])});
    case ConfigKind::TwoDeg2: {
        const Vertex v = w[0], x = w[1], y = w[2], xo = w[3], yo = w[4];
        std::vector<Edge> removed{Edge(v, x), Edge(x, xo), Edge(v, y), Edge(y, yo)};
        if (cfg.variant == 1)
            return detail::reshape(g, removed);
        if (cfg.variant == 3)
            // Contract x and y into v: the path v-x-x' becomes the edge v-x'.
            return detail::reshape(g, removed, {{v, x, xo}, {xo, x, v}, {v, y, yo}, {yo, y, v}});
        throw InputError("TwoDeg2 variant 2 is handled as TwinLowNbr");
    }
    case ConfigKind::Alternator:
        return detail::reshape(g, cfg.alternator.edges);
    }
    throw InputError("unknown configuration kind");
}

// ---------------------------------------------------------------------------
// Extension
// ---------------------------------------------------------------------------

struct TraceEntry {
    enum class Op { Erase, Check, Assign };
    Op op = Op::Assign;
    Element element = Vertex{0};
    int color = -1;    ///< assigned color; erased color for Erase
    int available = 0; ///< measured availability-set size (Check, Assign)
    int bound = 0;     ///< lower bound the extension argument claims; 0 if none
    std::string step;
};

inline std::string to_string(TraceEntry::Op op) {
    switch (op) {
    case TraceEntry::Op::Erase: return "erase";
    case TraceEntry::Op::Check: return "check";
    case TraceEntry::Op::Assign: return "assign";
    }
    return "?";
}

using ExtensionTrace = std::vector<TraceEntry>;

struct Extension {
    PartialLabeling labeling;
    ExtensionTrace trace;
    std::string branch; ///< which case of the extension argument ran
};

/// Replays a trace on top of the starting labeling.
inline PartialLabeling replay(PartialLabeling start, const ExtensionTrace& trace) {
    for (const auto& t : trace) {
        if (t.op == TraceEntry::Op::Erase)
            start.erase(t.element);
        else if (t.op == TraceEntry::Op::Assign)
            start.set(t.element, t.color);
    }
    return start;
}

/// Restriction of a labeling of the reduced graph to the elements of g.
inline PartialLabeling restrict_to(const Graph& g, const PartialLabeling& sub) {
    PartialLabeling phi(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (auto c = sub.vertex(v))
            phi.set_vertex(v, *c);
    for (const auto& [e, c] : sub.edge_colors())
        if (g.has_edge(e))
            phi.set_edge(e, c);
    return phi;
}

namespace detail {

class Extender {
public:
    Extender(const Graph& g, const PartialLabeling& sub, const ColorInterval& c, bool strict)
        : g_(g), c_(c), strict_(strict), phi_(restrict_to(g, sub)) {}

    const Graph& graph() const { return g_; }
    const PartialLabeling& phi() const { return phi_; }
    int colors() const { return c_.size(); }
    int deg(Vertex v) const { return g_.degree(v); }

    ColorSet avail(const Element& x) const { return available(g_, phi_, x, c_); }
    ColorSet forbidden(Vertex v) const { return forbidden_vertex_set(g_, phi_, v, c_); }
    ColorSet edge_colors(Vertex v) const { return incident_edge_colors(g_, phi_, v, c_); }
    std::optional<int> color(const Element& x) const { return phi_.get(x); }

    void erase(const Element& x, const std::string& step) {
        auto old = phi_.get(x);
        if (!old)
            return;
        phi_.erase(x);
        trace_.push_back({TraceEntry::Op::Erase, x, *old, 0, 0, step});
    }

    /// Records a measured availability size against the claimed bound.
    int check(const Element& x, int measured, int bound, const std::string& step) {
        trace_.push_back({TraceEntry::Op::Check, x, -1, measured, bound, step});
        enforce(measured, bound, step);
        return measured;
    }

    int check(const Element& x, int bound, const std::string& step) {
        return check(x, avail(x).size(), bound, step);
    }

    /// Assigns `color` to the uncolored element x; the color must be available.
    void put(const Element& x, int color, int bound, const std::string& step) {
        ColorSet a = avail(x);
        trace_.push_back({TraceEntry::Op::Assign, x, color, a.size(), bound, step});
        enforce(a.size(), bound, step);
        if (!a.contains(color))
            fail("color " + std::to_string(color) + " is not available for " + to_string(x) + " at step " + step);
        phi_.set(x, color);
    }

    /// Assigns the smallest available color outside `exclude`.
    int put_min(const Element& x, int bound, const std::string& step, const std::vector<int>& exclude = {}) {
        ColorSet a = avail(x);
        for (int c : exclude)
            a.erase(c);
        auto c = a.min();
        if (!c) {
            trace_.push_back({TraceEntry::Op::Assign, x, -1, 0, bound, step});
            fail("no color available for " + to_string(x) + " at step " + step);
        }
        put(x, *c, bound, step);
        return *c;
    }

    /// Colors two uncolored edges sharing an endpoint; the one with fewer
    /// options goes first (ties: `a`).
    void put_pair(const Edge& a, int bound_a, const Edge& b, int bound_b, const std::string& step) {
        const int sa = avail(a).size(), sb = avail(b).size();
        if (sb < sa) {
            put_min(b, bound_b, step);
            put_min(a, 1, step);
        } else {
            put_min(a, bound_a, step);
            put_min(b, 1, step);
        }
    }

    /// Colors the uncolored elements by deterministic backtracking (elements
    /// in the given order, colors ascending). Returns false when none of
    /// the combinations works or the node budget runs out.
    bool solve_local(const std::vector<Element>& elems, const std::string& step, long budget = 200'000) {
        std::vector<int> chosen(elems.size(), -1);
        auto rec = [&](auto&& self, std::size_t i) -> bool {
            if (i == elems.size())
                return true;
            for (int c : avail(elems[i]).values()) {
                if (--budget < 0)
                    return false;
                phi_.set(elems[i], c);
                chosen[i] = c;
                if (self(self, i + 1))
                    return true;
                phi_.erase(elems[i]);
            }
            return false;
        };
        const bool ok = rec(rec, 0);
        for (std::size_t i = 0; i < elems.size(); ++i)
            phi_.erase(elems[i]);
        if (!ok)
            return false;
        for (std::size_t i = 0; i < elems.size(); ++i)
            put(elems[i], chosen[i], 0, step);
        return true;
    }

    /// Adjacent vertices a and b may share a color when the edge ab was
    /// absent from the reduced graph. Recolors one of them (a first): alone
    /// if possible, else together with its incident edges.
    void repair_clash(Vertex a, Vertex b) {
        if (color(a) != color(b))
            return;
        const std::string step = "repair: v" + std::to_string(a) + " and v" + std::to_string(b) + " share a color";
        for (Vertex w : {a, b}) {
            const ExtensionTrace saved_trace = trace_;
            const PartialLabeling saved = phi_;
            erase(w, step);
            if (solve_local({w}, step))
                return;
            std::vector<Element> local{w};
            for (Vertex x : g_.neighbors(w)) {
                erase(Edge(w, x), step);
                local.push_back(Edge(w, x));
            }
            if (solve_local(local, step))
                return;
            trace_ = saved_trace;
            phi_ = saved;
        }
        fail("could not separate the colors of v" + std::to_string(a) + " and v" + std::to_string(b));
    }

    Extension finish(std::string branch) {
        return Extension{std::move(phi_), std::move(trace_), std::move(branch)};
    }

    [[noreturn]] void fail(const std::string& why) const {
        std::ostringstream msg;
        msg << "extension failed: " << why << "\ntrace:";
        for (const auto& t : trace_)
            msg << "\n  " << to_string(t.op) << ' ' << to_string(t.element) << " color=" << t.color
                << " available=" << t.available << " bound=" << t.bound << " [" << t.step << "]";
        throw InvariantError(msg.str());
    }

private:
    void enforce(int measured, int bound, const std::string& step) const {
        if (strict_ && measured < bound)
            fail("availability " + std::to_string(measured) + " below claimed bound " + std::to_string(bound) +
                 " at step " + step);
    }

    const Graph& g_;
    ColorInterval c_;
    bool strict_;
    PartialLabeling phi_;
    ExtensionTrace trace_;
};

inline int overlap(const ColorSet& a, const ColorSet& b) {
    int n = 0;
    for (int c : a.values())
        n += b.contains(c) ? 1 : 0;
    return n;
}

inline Extension extend_sparse_edge(Extender& ex, const std::vector<Vertex>& w) {
    const Edge uv(w[0], w[1]);
    ex.put_min(uv, ex.colors() - (ex.deg(w[0]) + ex.deg(w[1]) + 4), "edge uv");
    if (ex.color(w[0]) == ex.color(w[1])) {
        ex.repair_clash(w[0], w[1]);
        return ex.finish("sparse + repair");
    }
    return ex.finish("sparse");
}

inline Extension extend_light_edge(Extender& ex, const std::vector<Vertex>& w) {
    const Vertex u = w[0], v = w[1];
    ex.erase(u, "erase light vertex");
    ex.put_min(Edge(u, v), ex.colors() - (ex.deg(u) + ex.deg(v) + 1), "edge uv");
    ex.put_min(u, ex.colors() - 4 * ex.deg(u), "vertex u");
    return ex.finish("light");
}

inline Extension extend_deg4(Extender& ex, const std::vector<Vertex>& w) {
    const Vertex u = w[0], v = w[1];
    const Edge uv(u, v);
    ex.erase(u, "erase 4-vertex");
    ColorSet au = ex.avail(u);
    ColorSet auv = ex.avail(uv);
    ex.check(u, au.size(), ex.colors() - 13, "A(u)");
    ex.check(uv, auv.size(), ex.colors() - 12, "A(uv)");
    const auto cand = au.values();
    for (std::size_t i = 0; i < cand.size() && i < 2; ++i) {
        ColorSet rest = auv;
        rest.erase_near(cand[i], 2);
        if (rest.empty())
            continue;
        ex.put(u, cand[i], 1, i == 0 ? "vertex u (first choice)" : "vertex u (second choice)");
        ex.put_min(uv, 1, "edge uv");
        return ex.finish(i == 0 ? "first-choice" : "swap");
    }
    ex.fail("neither of the first two colors of A(u) leaves a color for uv");
}

/// Final step shared by the triangle configurations: color v1a and v1b,
/// where the arguments give the bound claimed for each edge.
inline void finish_triangle(Extender& ex, Vertex v1, Vertex a, int bound_a, Vertex b, int bound_b,
                            const std::string& step) {
    ex.check(Edge(v1, a), bound_a, step + ": A(v1" + std::to_string(a) + ")");
    ex.check(Edge(v1, b), bound_b, step + ": A(v1" + std::to_string(b) + ")");
    ex.put_pair(Edge(v1, a), bound_a, Edge(v1, b), bound_b, step);
}

/// The reduced graph lacked v1v2 and v1v3, so v1 may share its color with
/// v2 or v3.
inline Extension close_triangle(Extender& ex, const std::vector<Vertex>& w, std::string branch) {
    if (ex.color(w[0]) == ex.color(w[1]) || ex.color(w[0]) == ex.color(w[2])) {
        ex.repair_clash(w[0], w[1]);
        ex.repair_clash(w[0], w[2]);
        branch += " + repair";
    }
    return ex.finish(std::move(branch));
}

inline Extension extend_face566(Extender& ex, const std::vector<Vertex>& w) {
    const Vertex v1 = w[0], v2 = w[1], v3 = w[2];
    const int C = ex.colors();
    const int c1 = *ex.color(v1);
    if (ex.forbidden(v2).contains(c1)) {
        finish_triangle(ex, v1, v2, C - 13, v3, C - 14, "case 1");
        return close_triangle(ex, w, "case 1");
    }
    if (ex.forbidden(v3).contains(c1)) {
        finish_triangle(ex, v1, v3, C - 13, v2, C - 14, "case 1");
        return close_triangle(ex, w, "case 1");
    }
    // phi(v1) lies outside F(v2) and F(v3): move it onto v2v3.
    const Edge e23(v2, v3);
    ex.erase(e23, "case 2: recolor v2v3");
    ex.put(e23, c1, 1, "case 2: v2v3 := phi(v1)");
    finish_triangle(ex, v1, v2, C - 13, v3, C - 14, "case 2");
    return close_triangle(ex, w, "case 2");
}

inline Extension extend_face567(Extender& ex, const std::vector<Vertex>& w) {
    const Vertex v1 = w[0], v2 = w[1], v3 = w[2], v4 = w[3];
    const int C = ex.colors();
    const Edge e23(v2, v3);
    const int c1 = *ex.color(v1);
    if (ex.color(e23) == c1) {
        finish_triangle(ex, v1, v2, C - 13, v3, C - 14, "v2v3 has phi(v1)");
        return close_triangle(ex, w, "v2v3 has phi(v1)");
    }
    ColorSet e1 = ex.edge_colors(v1);
    ColorSet f2 = ex.forbidden(v2), f3 = ex.forbidden(v3);
    for (int alpha : e1.values()) {
        if (f2.contains(alpha) || f3.contains(alpha))
            continue;
        ex.erase(e23, "move: recolor v2v3");
        ex.put(e23, alpha, 1, "move: v2v3 := alpha");
        finish_triangle(ex, v1, v2, C - 13, v3, C - 14, "move");
        return close_triangle(ex, w, "move");
    }
    const int in_f2 = overlap(e1, f2), in_f3 = overlap(e1, f3);
    if (in_f2 < e1.size()) {
        // Some edge color at v1 lies in F(v3) only.
        if (in_f3 == e1.size()) {
            finish_triangle(ex, v1, v3, C - 12, v2, C - 14, "one-sided");
            return close_triangle(ex, w, "one-sided (E(v1) in F(v3))");
        }
        finish_triangle(ex, v1, v2, C - 13, v3, C - 14, "one-sided");
        return close_triangle(ex, w, "one-sided (split)");
    }
    if (in_f3 != 0) {
        // E(v1) inside F(v2) and meeting F(v3): both unions shrink.
        finish_triangle(ex, v1, v3, C - 14, v2, C - 11, "one-sided");
        return close_triangle(ex, w, "one-sided (E(v1) in F(v2))");
    }

    // E(v1) inside F(v2), disjoint from F(v3): free the color of v1v4 for v1v3.
    // The witness 6-neighbor carries the bound; other neighbors outside
    // {v2, v3} are fallbacks with no claimed bound.
    std::vector<Vertex> candidates{v4};
    for (Vertex x : ex.graph().neighbors(v1))
        if (x != v2 && x != v3 && x != v4)
            candidates.push_back(x);
    for (Vertex x : candidates) {
        const Edge e(v1, x);
        const std::string name = "v1v" + std::to_string(x);
        const int old = *ex.color(e);
        ex.erase(e, "recolor " + name);
        ColorSet a = ex.avail(e);
        a.erase(old);
        ex.check(e, a.size(), x == v4 ? C - 14 : 0, "A(" + name + ") without its old color");
        if (a.empty()) {
            ex.put(e, old, 0, "restore " + name);
            continue;
        }
        ex.put(e, *a.min(), 1, name + " := new color");
        ex.check(Edge(v1, v2), C - 12, "A'(v1v2)");
        ex.put(Edge(v1, v3), old, 1, "v1v3 := old color of " + name);
        ex.put_min(Edge(v1, v2), C - 13, "edge v1v2");
        return close_triangle(ex, w, x == v4 ? "recolor v1v4" : "recolor other neighbor");
    }
    ex.fail("no edge at v1 outside the triangle admits a new color");
}

inline Extension extend_twin(Extender& ex, const std::vector<Vertex>& w) {
    const Vertex v = w[0], v1 = w[1], v2 = w[2], u = w[3];
    const int C = ex.colors();
    const Edge e1(v, v1), e2(v, v2);
    ex.erase(v1, "erase v1");
    ex.erase(v2, "erase v2");
    const ColorSet a1 = ex.avail(e1), a2 = ex.avail(e2);
    ex.check(e1, a1.size(), C - (ex.deg(v1) + ex.deg(v)), "A(vv1)");
    ex.check(e2, a2.size(), C - (ex.deg(v2) + ex.deg(v)), "A(vv2)");
    std::string branch = "case 1";
    if (a1.size() >= 2 || a2.size() >= 2 || !(a1 == a2)) {
        ex.put_pair(e1, 1, e2, 1, "case 1");
    } else {
        branch = "case 2";
        const Edge uv1(u, v1), uv(u, v);
        const int c_uv1 = *ex.color(uv1), c_uv = *ex.color(uv);
        ex.erase(uv1, "case 2: exchange uv1 and uv");
        ex.erase(uv, "case 2: exchange uv1 and uv");
        ex.put(uv1, c_uv, 1, "case 2: uv1 := phi(uv)");
        ex.put(uv, c_uv1, 1, "case 2: uv := phi(uv1)");
        ex.check(e1, 1, "case 2: A'(vv1)");
        ex.check(e2, 2, "case 2: A'(vv2)");
        ex.put_pair(e1, 1, e2, 2, "case 2");
    }
    ex.put_min(v1, C - 4 * ex.deg(v1), "vertex v1");
    ex.put_min(v2, C - 4 * ex.deg(v2), "vertex v2");
    return ex.finish(branch);
}

inline Extension extend_two_deg2(Extender& ex, const ReducibleConfig& cfg, const PartialLabeling& sub) {
    const auto& w = cfg.witness;
    const Vertex v = w[0], x = w[1], y = w[2], xo = w[3], yo = w[4];
    const int C = ex.colors();
    ex.erase(x, "erase x");
    ex.erase(y, "erase y");
    if (cfg.variant == 1) {
        std::vector<Edge> ring{Edge(v, x), Edge(x, xo), Edge(v, y), Edge(y, xo)};
        std::vector<std::vector<int>> lists;
        for (const Edge& e : ring) {
            const Vertex far = e.has(v) ? v : xo;
            lists.push_back(ex.avail(e).values());
            ex.check(e, static_cast<int>(lists.back().size()), C - (ex.deg(far) + 1), "4-cycle list");
        }
        auto colors = list_edge_color_bipartite(ring, lists);
        for (std::size_t i = 0; i < ring.size(); ++i)
            ex.put(ring[i], colors[i], 1, "4-cycle edge");
    } else {
        auto a = sub.edge(Edge(v, xo));
        auto b = sub.edge(Edge(v, yo));
        if (!a || !b)
            ex.fail("reduced labeling lacks the contracted edges vx' and vy'");
        ex.put(Edge(x, xo), *a, 1, "xx' := phi(vx')");
        ex.put(Edge(v, y), *a, 1, "vy := phi(vx')");
        ex.put(Edge(y, yo), *b, 1, "yy' := phi(vy')");
        ex.put(Edge(v, x), *b, 1, "vx := phi(vy')");
    }
    ex.put_min(x, C - 4 * ex.deg(x), "vertex x");
    ex.put_min(y, C - 4 * ex.deg(y), "vertex y");
    return ex.finish(cfg.variant == 1 ? "case 1 (4-cycle)" : "case 3 (contraction)");
}

inline Extension extend_alternator(Extender& ex, const Alternator& alt) {
    const int C = ex.colors();
    std::map<Vertex, int> db;
    for (const Edge& e : alt.edges) {
        ++db[e.u];
        ++db[e.v];
    }
    for (Vertex x : alt.x)
        ex.erase(x, "erase X");
    std::vector<char> in_x(ex.graph().num_vertices(), 0);
    for (Vertex x : alt.x)
        in_x[x] = 1;
    std::vector<std::vector<int>> lists;
    for (const Edge& e : alt.edges) {
        const Vertex y = in_x[e.u] ? e.v : e.u;
        lists.push_back(ex.avail(e).values());
        ex.check(e, static_cast<int>(lists.back().size()), std::max(db[y], alt.k), "A(xy)");
    }
    auto colors = list_edge_color_bipartite(alt.edges, lists);
    for (std::size_t i = 0; i < alt.edges.size(); ++i)
        ex.put(alt.edges[i], colors[i], 1, "B edge");
    for (Vertex x : alt.x)
        ex.put_min(x, C - 4 * ex.deg(x), "vertex x");
    return ex.finish("list edge coloring");
}

} // namespace detail

/// Extends a total labeling of reduce(g, cfg) to a total labeling of g,
/// following the extension argument for the configuration's kind. With
/// `strict`, any availability below the claimed bound is an InvariantError.
inline Extension extend(const PlaneGraph& g, const PartialLabeling& sub, const ReducibleConfig& cfg,
                        const ColorInterval& c, bool strict = true) {
    if (c.d != 2)
        throw InputError("reduction extensions are defined for d = 2");
    detail::Extender ex(g.graph(), sub, c, strict);
    switch (cfg.kind) {
    case ConfigKind::SparseEdge: return detail::extend_sparse_edge(ex, cfg.witness);
    case ConfigKind::LightEdge: return detail::extend_light_edge(ex, cfg.witness);
    case ConfigKind::Deg4LowNbr: return detail::extend_deg4(ex, cfg.witness);
    case ConfigKind::Face566: return detail::extend_face566(ex, cfg.witness);
    case ConfigKind::Face567: return detail::extend_face567(ex, cfg.witness);
    case ConfigKind::TwinLowNbr: return detail::extend_twin(ex, cfg.witness);
    case ConfigKind::TwoDeg2: return detail::extend_two_deg2(ex, cfg, sub);
    case ConfigKind::Alternator: return detail::extend_alternator(ex, cfg.alternator);
    }
    throw InputError("unknown configuration kind");
}

// ---------------------------------------------------------------------------
// Labeler
// ---------------------------------------------------------------------------

struct LabelerOptions {
    int base_threshold = 12;             ///< |V| + |E| (non-isolated) handed to the exact solver
    std::uint64_t base_budget = 5'000'000;
    bool strict_bounds = true;
    bool keep_trace = true;
};

struct ReductionStep {
    ReducibleConfig config;
    Extension extension;
};

struct LabelingRun {
    PartialLabeling labeling;
    std::vector<ReductionStep> steps; ///< outermost reduction first
    int base_elements = 0;
    std::uint64_t bound_checks = 0;
    std::uint64_t bound_shortfalls = 0;
    std::map<std::string, int> kind_counts;
};

inline int active_elements(const Graph& g) {
    int n = g.num_edges();
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        n += g.degree(v) > 0 ? 1 : 0;
    return n;
}

/// (2,1)-total labeling of a connected plane graph with Δ <= M, M >= 12,
/// using colors {0..M+2}: reduce until the graph is tiny, label that
/// exactly, then extend back out through every reduction.
inline LabelingRun label_planar(const PlaneGraph& g, int M, const LabelerOptions& opt = {}) {
    if (M < 12)
        throw InputError("label_planar needs M >= 12, got " + std::to_string(M));
    if (g.graph().max_degree() > M)
        throw InputError("maximum degree " + std::to_string(g.graph().max_degree()) + " exceeds M=" +
                         std::to_string(M));
    if (!g.graph().connected())
        throw InputError("label_planar needs a connected graph");
    const ColorInterval colors{M + 2, 2};

    std::vector<PlaneGraph> graphs{g};
    std::vector<ReducibleConfig> configs;
    while (active_elements(graphs.back().graph()) > opt.base_threshold) {
        configs.push_back(find_configuration(graphs.back(), M));
        graphs.push_back(reduce(graphs.back(), configs.back()));
        if (active_elements(graphs.back().graph()) >= active_elements(graphs[graphs.size() - 2].graph()))
            throw InvariantError("reduction did not shrink the graph");
    }

    LabelingRun run;
    run.base_elements = active_elements(graphs.back().graph());
    auto base = label_with_k(graphs.back().graph(), 2, colors.k, opt.base_budget);
    if (!base)
        throw InvariantError("exact solver found no labeling of the base graph with k=" + std::to_string(colors.k));
    PartialLabeling current = std::move(*base);

    std::vector<ReductionStep> unwound;
    for (std::size_t i = configs.size(); i-- > 0;) {
        Extension ext = extend(graphs[i], current, configs[i], colors, opt.strict_bounds);
        for (const auto& t : ext.trace) {
            if (t.bound > 0) {
                ++run.bound_checks;
                if (t.available < t.bound)
                    ++run.bound_shortfalls;
            }
        }
        ++run.kind_counts[to_string(configs[i].kind)];
        current = ext.labeling;
        if (opt.keep_trace)
            unwound.push_back({configs[i], std::move(ext)});
    }
    std::reverse(unwound.begin(), unwound.end());
    run.steps = std::move(unwound);
    run.labeling = std::move(current);

    auto violations = validate(g.graph(), run.labeling, colors);
    if (!violations.empty() || !run.labeling.is_total_on(g.graph()))
        throw InvariantError("labeler produced an invalid labeling (" + std::to_string(violations.size()) +
                             " violations)");
    return run;
}

} // namespace tlabel
