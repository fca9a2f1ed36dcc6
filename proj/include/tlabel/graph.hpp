#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tlabel/error.hpp"

namespace tlabel {

using Vertex = int;

/// Undirected edge, always stored with `u < v`.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    constexpr Edge() = default;
    constexpr Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    constexpr Vertex other(Vertex w) const { return w == u ? v : u; }
    constexpr bool has(Vertex w) const { return w == u || w == v; }

    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string to_string(const Edge& e) {
    return std::to_string(e.u) + "-" + std::to_string(e.v);
}

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adjacency_(static_cast<std::size_t>(n)) {}

    /// Throws InputError on self-loops, parallel edges and out-of-range ends.
    static Graph from_edges(int n, std::span<const Edge> edges) {
        if (n < 0)
            throw InputError("negative vertex count");
        Graph g(n);
        for (const Edge& e : edges) {
            if (e.u == e.v)
                throw InputError("self-loop at vertex " + std::to_string(e.u));
            if (e.u < 0 || e.v >= n)
                throw InputError("edge " + to_string(e) + " references a vertex outside 0.." +
                                 std::to_string(n - 1));
            g.adjacency_[e.u].push_back(e.v);
            g.adjacency_[e.v].push_back(e.u);
        }
        for (Vertex v = 0; v < n; ++v) {
            auto& adj = g.adjacency_[v];
            std::sort(adj.begin(), adj.end());
            auto dup = std::adjacent_find(adj.begin(), adj.end());
            if (dup != adj.end())
                throw InputError("duplicate edge " + to_string(Edge(v, *dup)));
        }
        g.edges_.assign(edges.begin(), edges.end());
        std::sort(g.edges_.begin(), g.edges_.end());
        return g;
    }

    static Graph from_edges(int n, std::initializer_list<Edge> edges) {
        return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
    }

    int num_vertices() const { return static_cast<int>(adjacency_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }

    bool adjacent(Vertex a, Vertex b) const {
        if (a < 0 || b < 0 || a >= num_vertices() || b >= num_vertices())
            return false;
        const auto& adj = adjacency_[a];
        return std::binary_search(adj.begin(), adj.end(), b);
    }
    bool has_edge(const Edge& e) const { return adjacent(e.u, e.v); }

    /// Edges sorted lexicographically; position in this list is the edge id.
    std::span<const Edge> edges() const { return edges_; }

    std::optional<int> edge_id(const Edge& e) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e)
            return std::nullopt;
        return static_cast<int>(it - edges_.begin());
    }

    int max_degree() const {
        int best = 0;
        for (const auto& adj : adjacency_)
            best = std::max(best, static_cast<int>(adj.size()));
        return best;
    }

    int min_degree() const {
        if (adjacency_.empty())
            return 0;
        int best = static_cast<int>(adjacency_.front().size());
        for (const auto& adj : adjacency_)
            best = std::min(best, static_cast<int>(adj.size()));
        return best;
    }

    bool is_regular() const { return max_degree() == min_degree(); }

    /// Connected components, each sorted, ordered by smallest vertex.
    std::vector<std::vector<Vertex>> components() const {
        const int n = num_vertices();
        std::vector<int> comp(n, -1);
        std::vector<std::vector<Vertex>> out;
        std::vector<Vertex> stack;
        for (Vertex s = 0; s < n; ++s) {
            if (comp[s] >= 0)
                continue;
            const int id = static_cast<int>(out.size());
            out.emplace_back();
            comp[s] = id;
            stack.push_back(s);
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                out[id].push_back(v);
                for (Vertex w : adjacency_[v]) {
                    if (comp[w] < 0) {
                        comp[w] = id;
                        stack.push_back(w);
                    }
                }
            }
            std::sort(out[id].begin(), out[id].end());
        }
        return out;
    }

    bool connected() const { return components().size() <= 1; }

private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<Edge> edges_;
};

/// Common neighbors of a and b in increasing order.
inline std::vector<Vertex> common_neighbors(const Graph& g, Vertex a, Vertex b) {
    std::vector<Vertex> out;
    auto na = g.neighbors(a);
    auto nb = g.neighbors(b);
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(out));
    return out;
}

/// A face of a plane graph: the closed walk of vertices met while tracing it.
/// A cut edge is traversed twice, so it contributes two to `degree()`.
struct Face {
    std::vector<Vertex> boundary;

    int degree() const { return static_cast<int>(boundary.size()); }
};

/// Graph together with a rotation system: for every vertex, the clockwise
/// cyclic order of its neighbors.
class PlaneGraph {
public:
    PlaneGraph() = default;

    const Graph& graph() const { return graph_; }
    std::span<const Vertex> rotation(Vertex v) const { return rotation_[v]; }
    const std::vector<std::vector<Vertex>>& rotations() const { return rotation_; }

    int num_vertices() const { return graph_.num_vertices(); }
    int num_edges() const { return graph_.num_edges(); }
    int degree(Vertex v) const { return graph_.degree(v); }

    /// Neighbor that follows `from` in the clockwise order around `at`.
    Vertex successor(Vertex at, Vertex from) const {
        const auto& rot = rotation_[at];
        auto it = std::find(rot.begin(), rot.end(), from);
        if (it == rot.end())
            throw InputError("vertex " + std::to_string(from) + " is not a neighbor of " +
                             std::to_string(at));
        ++it;
        return it == rot.end() ? rot.front() : *it;
    }

    friend PlaneGraph build_plane_graph(int n, std::span<const Edge> edges,
                                        std::vector<std::vector<Vertex>> rotation);

private:
    Graph graph_;
    std::vector<std::vector<Vertex>> rotation_;
};

/// Validates the rotation against the edge list. Face tracing and the Euler
/// check happen in trace_faces.
inline PlaneGraph build_plane_graph(int n, std::span<const Edge> edges,
                                    std::vector<std::vector<Vertex>> rotation) {
    PlaneGraph pg;
    pg.graph_ = Graph::from_edges(n, edges);
    if (static_cast<int>(rotation.size()) != n)
        throw InputError("rotation system lists " + std::to_string(rotation.size()) +
                         " vertices, graph has " + std::to_string(n));
    for (Vertex v = 0; v < n; ++v) {
        std::vector<Vertex> sorted = rotation[v];
        std::sort(sorted.begin(), sorted.end());
        auto nb = pg.graph_.neighbors(v);
        if (!std::equal(sorted.begin(), sorted.end(), nb.begin(), nb.end())) {
            std::vector<Vertex> missing, extra;
            std::set_difference(nb.begin(), nb.end(), sorted.begin(), sorted.end(),
                                std::back_inserter(missing));
            std::set_difference(sorted.begin(), sorted.end(), nb.begin(), nb.end(),
                                std::back_inserter(extra));
            std::ostringstream msg;
            msg << "rotation at vertex " << v << " does not match its edges";
            if (!missing.empty())
                msg << "; missing edge " << to_string(Edge(v, missing.front()));
            if (!extra.empty())
                msg << "; extra or repeated neighbor " << extra.front();
            if (missing.empty() && extra.empty())
                msg << "; repeated neighbor";
            throw InputError(msg.str());
        }
    }
    pg.rotation_ = std::move(rotation);
    return pg;
}

inline PlaneGraph build_plane_graph(int n, std::initializer_list<Edge> edges,
                                    std::vector<std::vector<Vertex>> rotation) {
    return build_plane_graph(n, std::span<const Edge>(edges.begin(), edges.size()),
                             std::move(rotation));
}

/// Builds a plane graph from its faces, each given as the closed walk that
/// face tracing would produce (consistently oriented). Edges are read off the
/// walks; the rotation at each vertex is assembled from consecutive triples.
inline PlaneGraph plane_graph_from_faces(int n, const std::vector<std::vector<Vertex>>& faces) {
    std::vector<Edge> edges;
    // succ[v] holds (from, to) pairs: dart from->v is followed by v->to.
    std::vector<std::vector<std::pair<Vertex, Vertex>>> succ(n);
    for (const auto& f : faces) {
        const std::size_t len = f.size();
        for (std::size_t i = 0; i < len; ++i) {
            Vertex prev = f[(i + len - 1) % len];
            Vertex cur = f[i];
            Vertex next = f[(i + 1) % len];
            if (cur < next)
                edges.emplace_back(cur, next);
            else if (cur == next)
                throw InputError("face walk repeats vertex " + std::to_string(cur));
            succ[cur].emplace_back(prev, next);
        }
    }
    // Each undirected edge is walked once in each direction; keep one copy.
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<std::vector<Vertex>> rotation(n);
    for (Vertex v = 0; v < n; ++v) {
        auto& s = succ[v];
        if (s.empty())
            continue;
        std::sort(s.begin(), s.end());
        Vertex start = s.front().first;
        Vertex cur = start;
        for (std::size_t step = 0; step < s.size(); ++step) {
            rotation[v].push_back(cur);
            auto it = std::lower_bound(s.begin(), s.end(), std::make_pair(cur, Vertex{-1}));
            if (it == s.end() || it->first != cur)
                throw InputError("face walks do not close up around vertex " + std::to_string(v));
            cur = it->second;
        }
        if (cur != start)
            throw InputError("face walks around vertex " + std::to_string(v) +
                             " form more than one cycle");
    }
    return build_plane_graph(n, edges, std::move(rotation));
}

/// Traces the faces of a connected plane graph and checks Euler's formula.
inline std::vector<Face> trace_faces(const PlaneGraph& pg) {
    const Graph& g = pg.graph();
    const int n = g.num_vertices();
    auto comps = g.components();
    if (comps.size() > 1) {
        std::ostringstream msg;
        msg << "plane graph is disconnected (" << comps.size() << " components, first vertices";
        for (const auto& c : comps)
            msg << ' ' << c.front();
        msg << ")";
        throw InputError(msg.str());
    }
    if (n == 0)
        return {};
    if (g.num_edges() == 0)
        return {Face{{0}}};

    // Dart (v, i) is the half-edge leaving v towards rotation(v)[i].
    std::vector<std::size_t> offset(n + 1, 0);
    for (Vertex v = 0; v < n; ++v)
        offset[v + 1] = offset[v] + pg.rotation(v).size();
    // position[dart of v->w] = index of v in rotation(w), so the next dart
    // after v->w is w->successor(w, v) without a linear search.
    std::vector<std::size_t> back_index(offset[n]);
    for (Vertex v = 0; v < n; ++v) {
        auto rot = pg.rotation(v);
        for (std::size_t i = 0; i < rot.size(); ++i) {
            Vertex w = rot[i];
            auto rw = pg.rotation(w);
            auto it = std::find(rw.begin(), rw.end(), v);
            back_index[offset[v] + i] = static_cast<std::size_t>(it - rw.begin());
        }
    }

    std::vector<char> used(offset[n], 0);
    std::vector<Face> faces;
    for (Vertex v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < pg.rotation(v).size(); ++i) {
            if (used[offset[v] + i])
                continue;
            Face f;
            Vertex a = v;
            std::size_t ai = i;
            while (!used[offset[a] + ai]) {
                used[offset[a] + ai] = 1;
                f.boundary.push_back(a);
                Vertex b = pg.rotation(a)[ai];
                std::size_t bi = (back_index[offset[a] + ai] + 1) % pg.rotation(b).size();
                a = b;
                ai = bi;
            }
            faces.push_back(std::move(f));
        }
    }

    const long euler = static_cast<long>(n) - g.num_edges() + static_cast<long>(faces.size());
    if (euler != 2)
        throw InputError("rotation system is not a plane embedding: V - E + F = " +
                         std::to_string(euler));
    return faces;
}

/// Removes the given edges from a plane graph, keeping the induced rotation.
inline PlaneGraph without_edges(const PlaneGraph& pg, const std::vector<Edge>& removed) {
    std::vector<Edge> sorted_removed = removed;
    std::sort(sorted_removed.begin(), sorted_removed.end());
    auto gone = [&](Vertex a, Vertex b) {
        return std::binary_search(sorted_removed.begin(), sorted_removed.end(), Edge(a, b));
    };
    std::vector<Edge> edges;
    for (const Edge& e : pg.graph().edges())
        if (!gone(e.u, e.v))
            edges.push_back(e);
    std::vector<std::vector<Vertex>> rotation(pg.num_vertices());
    for (Vertex v = 0; v < pg.num_vertices(); ++v)
        for (Vertex w : pg.rotation(v))
            if (!gone(v, w))
                rotation[v].push_back(w);
    return build_plane_graph(pg.num_vertices(), edges, std::move(rotation));
}

} // namespace tlabel
