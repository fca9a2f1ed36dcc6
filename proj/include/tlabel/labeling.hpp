#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tlabel/graph.hpp"

namespace tlabel {

/// Colors {0, ..., k}; incident vertex/edge colors must differ by at least d.
struct ColorInterval {
    int k = 0;
    int d = 2;

    int size() const { return k + 1; }
    bool contains(int c) const { return c >= 0 && c <= k; }
};

/// Subset of a color interval.
class ColorSet {
public:
    ColorSet() = default;
    explicit ColorSet(int k, bool full = false) : bits_(static_cast<std::size_t>(k + 1), full) {
        count_ = full ? k + 1 : 0;
    }

    static ColorSet full(const ColorInterval& c) { return ColorSet(c.k, true); }

    int max_color() const { return static_cast<int>(bits_.size()) - 1; }
    int size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(int c) const {
        return c >= 0 && c < static_cast<int>(bits_.size()) && bits_[c];
    }

    void insert(int c) {
        if (c < 0 || c >= static_cast<int>(bits_.size()) || bits_[c])
            return;
        bits_[c] = true;
        ++count_;
    }

    void erase(int c) {
        if (!contains(c))
            return;
        bits_[c] = false;
        --count_;
    }

    /// Removes every color within distance `radius - 1` of c.
    void erase_near(int c, int radius) {
        for (int x = c - radius + 1; x <= c + radius - 1; ++x)
            erase(x);
    }

    std::optional<int> min() const {
        for (std::size_t c = 0; c < bits_.size(); ++c)
            if (bits_[c])
                return static_cast<int>(c);
        return std::nullopt;
    }

    std::vector<int> values() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count_));
        for (std::size_t c = 0; c < bits_.size(); ++c)
            if (bits_[c])
                out.push_back(static_cast<int>(c));
        return out;
    }

    ColorSet& operator|=(const ColorSet& o) {
        for (int c : o.values())
            insert(c);
        return *this;
    }

    friend bool operator==(const ColorSet& a, const ColorSet& b) { return a.values() == b.values(); }

private:
    std::vector<bool> bits_;
    int count_ = 0;
};

/// A vertex or an edge.
using Element = std::variant<Vertex, Edge>;

inline std::string to_string(const Element& x) {
    if (const Vertex* v = std::get_if<Vertex>(&x))
        return "v" + std::to_string(*v);
    return "e" + to_string(std::get<Edge>(x));
}

/// Partial map from elements to colors. Uncolored elements are simply absent.
class PartialLabeling {
public:
    PartialLabeling() = default;
    explicit PartialLabeling(int num_vertices) : vertex_(static_cast<std::size_t>(num_vertices), -1) {}

    int num_vertices() const { return static_cast<int>(vertex_.size()); }

    std::optional<int> vertex(Vertex v) const {
        if (v < 0 || v >= num_vertices() || vertex_[v] < 0)
            return std::nullopt;
        return vertex_[v];
    }

    std::optional<int> edge(const Edge& e) const {
        auto it = edge_.find(e);
        if (it == edge_.end())
            return std::nullopt;
        return it->second;
    }

    std::optional<int> get(const Element& x) const {
        if (const Vertex* v = std::get_if<Vertex>(&x))
            return vertex(*v);
        return edge(std::get<Edge>(x));
    }

    void set_vertex(Vertex v, int color) {
        if (v >= num_vertices())
            vertex_.resize(static_cast<std::size_t>(v) + 1, -1);
        vertex_[v] = color;
    }
    void set_edge(const Edge& e, int color) { edge_[e] = color; }

    void set(const Element& x, int color) {
        if (const Vertex* v = std::get_if<Vertex>(&x))
            set_vertex(*v, color);
        else
            set_edge(std::get<Edge>(x), color);
    }

    void erase(const Element& x) {
        if (const Vertex* v = std::get_if<Vertex>(&x)) {
            if (*v < num_vertices())
                vertex_[*v] = -1;
        } else {
            edge_.erase(std::get<Edge>(x));
        }
    }

    const std::map<Edge, int>& edge_colors() const { return edge_; }

    int colored_count() const {
        int n = static_cast<int>(edge_.size());
        for (int c : vertex_)
            n += c >= 0 ? 1 : 0;
        return n;
    }

    int max_color() const {
        int best = -1;
        for (int c : vertex_)
            best = std::max(best, c);
        for (const auto& [e, c] : edge_)
            best = std::max(best, c);
        return best;
    }

    /// True when every vertex and edge of g carries a color.
    bool is_total_on(const Graph& g) const {
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            if (!vertex(v))
                return false;
        for (const Edge& e : g.edges())
            if (!edge(e))
                return false;
        return true;
    }

    friend bool operator==(const PartialLabeling& a, const PartialLabeling& b) {
        const int n = std::max(a.num_vertices(), b.num_vertices());
        for (Vertex v = 0; v < n; ++v)
            if (a.vertex(v) != b.vertex(v))
                return false;
        return a.edge_ == b.edge_;
    }

private:
    std::vector<int> vertex_;
    std::map<Edge, int> edge_;
};

enum class Rule {
    OutOfRange,       ///< color outside {0..k}
    AdjacentVertices, ///< adjacent vertices share a color
    AdjacentEdges,    ///< edges sharing an endpoint share a color
    Incidence,        ///< incident vertex and edge closer than d
};

inline std::string to_string(Rule r) {
    switch (r) {
    case Rule::OutOfRange: return "out-of-range";
    case Rule::AdjacentVertices: return "adjacent-vertices";
    case Rule::AdjacentEdges: return "adjacent-edges";
    case Rule::Incidence: return "incidence";
    }
    return "?";
}

struct Violation {
    Rule rule;
    Element first;
    Element second; ///< equals `first` for OutOfRange
};

inline std::string to_string(const Violation& v) {
    if (v.rule == Rule::OutOfRange)
        return to_string(v.rule) + " " + to_string(v.first);
    return to_string(v.rule) + " " + to_string(v.first) + " " + to_string(v.second);
}

/// Every violated constraint of phi; never stops at the first one.
/// Throws InputError if phi colors an element that is not in g.
inline std::vector<Violation> validate(const Graph& g, const PartialLabeling& phi, const ColorInterval& c) {
    for (Vertex v = g.num_vertices(); v < phi.num_vertices(); ++v)
        if (phi.vertex(v))
            throw InputError("labeling colors vertex " + std::to_string(v) + " which is not in the graph");
    for (const auto& [e, col] : phi.edge_colors())
        if (!g.has_edge(e))
            throw InputError("labeling colors edge " + to_string(e) + " which is not in the graph");

    std::vector<Violation> out;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (auto col = phi.vertex(v); col && !c.contains(*col))
            out.push_back({Rule::OutOfRange, v, v});
    for (const auto& [e, col] : phi.edge_colors())
        if (!c.contains(col))
            out.push_back({Rule::OutOfRange, e, e});

    for (const Edge& e : g.edges()) {
        auto cu = phi.vertex(e.u);
        auto cv = phi.vertex(e.v);
        if (cu && cv && *cu == *cv)
            out.push_back({Rule::AdjacentVertices, e.u, e.v});
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        auto nb = g.neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            auto ci = phi.edge(Edge(v, nb[i]));
            if (!ci)
                continue;
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                auto cj = phi.edge(Edge(v, nb[j]));
                if (cj && *ci == *cj)
                    out.push_back({Rule::AdjacentEdges, Edge(v, nb[i]), Edge(v, nb[j])});
            }
        }
    }
    for (const auto& [e, col] : phi.edge_colors()) {
        for (Vertex end : {e.u, e.v}) {
            auto cv = phi.vertex(end);
            if (cv && std::abs(*cv - col) < c.d)
                out.push_back({Rule::Incidence, end, e});
        }
    }
    return out;
}

/// Colors of the colored edges at v.
inline ColorSet incident_edge_colors(const Graph& g, const PartialLabeling& phi, Vertex v,
                                     const ColorInterval& c) {
    ColorSet s(c.k);
    for (Vertex w : g.neighbors(v))
        if (auto col = phi.edge(Edge(v, w)))
            s.insert(*col);
    return s;
}

/// Colors within distance d-1 of phi(x), clipped to the interval; empty when
/// x is uncolored.
inline ColorSet near_colors(const PartialLabeling& phi, const Element& x, const ColorInterval& c) {
    ColorSet s(c.k);
    if (auto col = phi.get(x))
        for (int y = *col - c.d + 1; y <= *col + c.d - 1; ++y)
            s.insert(y);
    return s;
}

/// Colors an edge at v may not take: incident edge colors plus the colors too
/// close to v's own color.
inline ColorSet forbidden_vertex_set(const Graph& g, const PartialLabeling& phi, Vertex v,
                                     const ColorInterval& c) {
    ColorSet s = incident_edge_colors(g, phi, v, c);
    s |= near_colors(phi, v, c);
    return s;
}

/// Colors that extend phi validly to the uncolored edge uv.
inline ColorSet available_edge(const Graph& g, const PartialLabeling& phi, const Edge& uv,
                               const ColorInterval& c) {
    if (!g.has_edge(uv))
        throw InputError("edge " + to_string(uv) + " is not in the graph");
    if (phi.edge(uv))
        throw InputError("edge " + to_string(uv) + " is already colored");
    ColorSet s = ColorSet::full(c);
    for (Vertex end : {uv.u, uv.v}) {
        if (auto col = phi.vertex(end))
            s.erase_near(*col, c.d);
        for (Vertex w : g.neighbors(end))
            if (auto col = phi.edge(Edge(end, w)))
                s.erase(*col);
    }
    return s;
}

/// Colors that extend phi validly to the uncolored vertex u.
inline ColorSet available_vertex(const Graph& g, const PartialLabeling& phi, Vertex u,
                                 const ColorInterval& c) {
    if (u < 0 || u >= g.num_vertices())
        throw InputError("vertex " + std::to_string(u) + " is not in the graph");
    if (phi.vertex(u))
        throw InputError("vertex " + std::to_string(u) + " is already colored");
    ColorSet s = ColorSet::full(c);
    for (Vertex w : g.neighbors(u)) {
        if (auto col = phi.vertex(w))
            s.erase(*col);
        if (auto col = phi.edge(Edge(u, w)))
            s.erase_near(*col, c.d);
    }
    return s;
}

inline ColorSet available(const Graph& g, const PartialLabeling& phi, const Element& x,
                          const ColorInterval& c) {
    if (const Vertex* v = std::get_if<Vertex>(&x))
        return available_vertex(g, phi, *v, c);
    return available_edge(g, phi, std::get<Edge>(x), c);
}

} // namespace tlabel
