#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tlabel/graph.hpp"

namespace tlabel {

namespace detail {

/// Uniform index in [0, n). Plain modulo keeps the stream identical across
/// standard libraries; the bias is irrelevant for corpus generation.
inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

inline bool coin(std::mt19937_64& rng, double p) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

} // namespace detail

/// Grows a triangulation by repeatedly inserting a vertex into a triangular
/// face. Faces are kept as oriented triples so the embedding falls out of
/// plane_graph_from_faces.
class TriangulationBuilder {
public:
    TriangulationBuilder() : degree_{2, 2, 2}, faces_{{0, 1, 2}, {0, 2, 1}} {}

    int num_vertices() const { return static_cast<int>(degree_.size()); }
    int degree(Vertex v) const { return degree_[v]; }
    const std::vector<std::array<Vertex, 3>>& faces() const { return faces_; }

    /// Inserts a new vertex into face `f`; returns the new vertex.
    Vertex stack(std::size_t f) {
        auto [a, b, c] = faces_.at(f);
        const Vertex w = num_vertices();
        degree_.push_back(3);
        ++degree_[a];
        ++degree_[b];
        ++degree_[c];
        faces_[f] = {a, b, w};
        faces_.push_back({b, c, w});
        faces_.push_back({c, a, w});
        return w;
    }

    /// Inserts into the face whose boundary is {a, b, c} in either orientation
    /// listed; throws if no such face exists.
    Vertex stack(Vertex a, Vertex b, Vertex c) {
        for (std::size_t f = 0; f < faces_.size(); ++f) {
            const auto& t = faces_[f];
            for (int r = 0; r < 3; ++r) {
                if (t[r] == a && t[(r + 1) % 3] == b && t[(r + 2) % 3] == c)
                    return stack(f);
                if (t[r] == a && t[(r + 1) % 3] == c && t[(r + 2) % 3] == b)
                    return stack(f);
            }
        }
        throw InputError("no face with boundary " + std::to_string(a) + "," + std::to_string(b) +
                         "," + std::to_string(c));
    }

    PlaneGraph build() const {
        std::vector<std::vector<Vertex>> walks;
        walks.reserve(faces_.size());
        for (const auto& t : faces_)
            walks.push_back({t[0], t[1], t[2]});
        return plane_graph_from_faces(num_vertices(), walks);
    }

private:
    std::vector<int> degree_;
    std::vector<std::array<Vertex, 3>> faces_;
};

/// Hub 0 joined to the cycle 1..n.
inline PlaneGraph wheel(int n) {
    if (n < 3)
        throw InputError("wheel needs at least 3 rim vertices, got " + std::to_string(n));
    std::vector<std::vector<Vertex>> faces;
    std::vector<Vertex> outer;
    for (int i = 1; i <= n; ++i) {
        faces.push_back({0, i, i % n + 1});
        outer.push_back(n + 1 - i);
    }
    faces.push_back(outer);
    return plane_graph_from_faces(n + 1, faces);
}

inline PlaneGraph cycle(int n) {
    if (n < 3)
        throw InputError("cycle needs at least 3 vertices, got " + std::to_string(n));
    std::vector<Vertex> inner(n), outer(n);
    for (int i = 0; i < n; ++i) {
        inner[i] = i;
        outer[i] = n - 1 - i;
    }
    return plane_graph_from_faces(n, {inner, outer});
}

/// Center 0 with leaves 1..n.
inline PlaneGraph star(int n) {
    if (n < 1)
        throw InputError("star needs at least 1 leaf, got " + std::to_string(n));
    std::vector<Vertex> walk;
    for (int i = 1; i <= n; ++i) {
        walk.push_back(0);
        walk.push_back(i);
    }
    return plane_graph_from_faces(n + 1, {walk});
}

/// Stacked (Apollonian) triangulation on n vertices. With `max_degree` set,
/// faces that would push a vertex past the cap are rejected.
inline PlaneGraph stacked_triangulation(int n, std::uint64_t seed = 0,
                                        std::optional<int> max_degree = std::nullopt) {
    if (n < 3)
        throw InputError("stacked triangulation needs at least 3 vertices, got " + std::to_string(n));
    if (max_degree && *max_degree < 4 && n > 3)
        throw InputError("degree cap below 4 cannot hold a stacked triangulation");
    std::mt19937_64 rng(seed);
    TriangulationBuilder tb;
    while (tb.num_vertices() < n) {
        const auto& faces = tb.faces();
        auto fits = [&](std::size_t f) {
            if (!max_degree)
                return true;
            for (Vertex v : faces[f])
                if (tb.degree(v) + 1 > *max_degree)
                    return false;
            return true;
        };
        std::optional<std::size_t> chosen;
        for (int attempt = 0; attempt < 64 && !chosen; ++attempt) {
            std::size_t f = detail::pick(rng, faces.size());
            if (fits(f))
                chosen = f;
        }
        if (!chosen) {
            std::vector<std::size_t> open;
            for (std::size_t f = 0; f < faces.size(); ++f)
                if (fits(f))
                    open.push_back(f);
            if (open.empty())
                throw InputError("degree cap " + std::to_string(*max_degree) +
                                 " leaves no face to stack into at " +
                                 std::to_string(tb.num_vertices()) + " vertices");
            chosen = open[detail::pick(rng, open.size())];
        }
        tb.stack(*chosen);
    }
    return tb.build();
}

/// Random stacked triangulation followed by deletion of a random edge subset
/// (each edge considered once, in random order, with probability
/// `delete_probability`); deletions that would disconnect the graph are skipped.
inline PlaneGraph random_planar(int n, std::uint64_t seed, std::optional<int> max_degree = std::nullopt,
                                double delete_probability = 0.35) {
    if (n < 3)
        throw InputError("random_planar needs at least 3 vertices, got " + std::to_string(n));
    PlaneGraph base = stacked_triangulation(n, seed, max_degree);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);

    std::vector<Edge> order(base.graph().edges().begin(), base.graph().edges().end());
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[detail::pick(rng, i)]);

    // Live adjacency for the connectivity checks.
    std::vector<std::vector<Vertex>> adj(n);
    for (const Edge& e : order) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    auto erase_arc = [&](Vertex a, Vertex b) {
        auto& l = adj[a];
        l.erase(std::find(l.begin(), l.end(), b));
    };
    auto reachable = [&](Vertex from, Vertex to) {
        std::vector<char> seen(n, 0);
        std::vector<Vertex> stack{from};
        seen[from] = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            if (v == to)
                return true;
            for (Vertex w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        return false;
    };

    std::vector<Edge> removed;
    for (const Edge& e : order) {
        if (!detail::coin(rng, delete_probability))
            continue;
        erase_arc(e.u, e.v);
        erase_arc(e.v, e.u);
        if (reachable(e.u, e.v)) {
            removed.push_back(e);
        } else {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    }
    return without_edges(base, removed);
}

/// Hub triangulation on `hubs` vertices decorated with low-degree vertices
/// so that most hubs reach `max_degree` exactly: 3-vertices are stacked
/// into hub triangles (each with probability `stack_probability`), then
/// the remaining degree of the hubs is filled with 2-vertices on paths
/// parallel to hub edges. Finally hub edges carrying a path are replaced by
/// one more path with probability `convert_probability`, which keeps every
/// degree unchanged.
inline PlaneGraph decorated_triangulation(int hubs, std::uint64_t seed, int max_degree,
                                          double stack_probability = 0.5, double convert_probability = 0.2) {
    if (hubs < 4)
        throw InputError("decorated triangulation needs at least 4 hubs, got " + std::to_string(hubs));
    if (max_degree < 8)
        throw InputError("decorated triangulation needs a degree cap of at least 8");
    std::mt19937_64 rng(seed);
    TriangulationBuilder tb;
    while (tb.num_vertices() < hubs) {
        std::size_t best = detail::pick(rng, tb.faces().size());
        auto corner_max = [&](std::size_t f) {
            int m = 0;
            for (Vertex v : tb.faces()[f])
                m = std::max(m, tb.degree(v));
            return m;
        };
        for (int i = 0; i < 4; ++i) {
            std::size_t f = detail::pick(rng, tb.faces().size());
            if (corner_max(f) < corner_max(best))
                best = f;
        }
        tb.stack(best);
    }

    std::vector<std::vector<Vertex>> faces;
    for (const auto& t : tb.faces())
        faces.push_back({t[0], t[1], t[2]});
    std::vector<int> degree(hubs);
    for (Vertex v = 0; v < hubs; ++v)
        degree[v] = tb.degree(v);
    std::vector<std::vector<char>> adj(hubs, std::vector<char>(hubs, 0));
    for (const auto& t : faces)
        for (int i = 0; i < 3; ++i)
            adj[t[i]][t[(i + 1) % 3]] = adj[t[(i + 1) % 3]][t[i]] = 1;

    // Even out hub degrees with edge flips: triangles (a,b,c), (b,a,d)
    // become (a,d,c), (b,c,d) when that lowers the degree spread.
    for (int round = 0; round < 8 * hubs; ++round) {
        const std::size_t f = detail::pick(rng, faces.size());
        const int i = static_cast<int>(detail::pick(rng, 3));
        const Vertex a = faces[f][i], b = faces[f][(i + 1) % 3], c = faces[f][(i + 2) % 3];
        std::size_t g = faces.size();
        int j = 0;
        for (std::size_t h = 0; h < faces.size() && g == faces.size(); ++h)
            for (int k = 0; k < 3; ++k)
                if (faces[h][k] == b && faces[h][(k + 1) % 3] == a) {
                    g = h;
                    j = k;
                }
        const Vertex d = faces[g][(j + 2) % 3];
        if (c == d || adj[c][d] || degree[a] <= 3 || degree[b] <= 3 ||
            degree[a] + degree[b] - degree[c] - degree[d] < 3)
            continue;
        faces[f] = {a, d, c};
        faces[g] = {b, c, d};
        adj[a][b] = adj[b][a] = 0;
        adj[c][d] = adj[d][c] = 1;
        --degree[a];
        --degree[b];
        ++degree[c];
        ++degree[d];
    }

    // 3-vertices, leaving at least two units of room at every hub.
    for (std::size_t f = 0, count = faces.size(); f < count; ++f) {
        const auto t = faces[f];
        if (!detail::coin(rng, stack_probability))
            continue;
        if (degree[t[0]] + 2 >= max_degree || degree[t[1]] + 2 >= max_degree || degree[t[2]] + 2 >= max_degree)
            continue;
        const Vertex x = static_cast<Vertex>(degree.size());
        faces[f] = {t[0], t[1], x};
        faces.push_back({t[1], t[2], x});
        faces.push_back({t[2], t[0], x});
        degree.push_back(3);
        for (Vertex v : t)
            ++degree[v];
    }

    // Path counts per hub edge: most-constrained hub first, random partner;
    // the attempt leaving the fewest unfilled hubs wins.
    std::vector<Edge> hub_edges;
    for (Vertex u = 0; u < hubs; ++u)
        for (Vertex v = u + 1; v < hubs; ++v)
            if (adj[u][v])
                hub_edges.emplace_back(u, v);
    std::vector<int> best_paths;
    int best_left = -1;
    for (int attempt = 0; attempt < 64 && best_left != 0; ++attempt) {
        std::vector<int> need(hubs), paths(hub_edges.size(), 0);
        for (Vertex v = 0; v < hubs; ++v)
            need[v] = max_degree - degree[v];
        for (;;) {
            Vertex pick = -1;
            int pick_options = 0;
            for (Vertex v = 0; v < hubs; ++v) {
                if (need[v] == 0)
                    continue;
                int options = 0;
                for (Vertex w = 0; w < hubs; ++w)
                    options += adj[v][w] && need[w] > 0 ? 1 : 0;
                if (options > 0 && (pick < 0 || options < pick_options ||
                                    (options == pick_options && detail::coin(rng, 0.5)))) {
                    pick = v;
                    pick_options = options;
                }
            }
            if (pick < 0)
                break;
            std::vector<std::size_t> choices;
            for (std::size_t e = 0; e < hub_edges.size(); ++e)
                if (hub_edges[e].has(pick) && need[hub_edges[e].other(pick)] > 0)
                    choices.push_back(e);
            const std::size_t e = choices[detail::pick(rng, choices.size())];
            ++paths[e];
            --need[hub_edges[e].u];
            --need[hub_edges[e].v];
        }
        int left = 0;
        for (Vertex v = 0; v < hubs; ++v)
            left += need[v] > 0 ? 1 : 0;
        if (best_left < 0 || left < best_left) {
            best_left = left;
            best_paths = paths;
        }
    }

    // A path u-x-v goes into the face holding the dart u->v: that dart
    // becomes u->x->v and the new triangle u,v,x sits between.
    auto add_path = [&](Vertex u, Vertex v) {
        for (auto& w : faces) {
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (w[i] != u || w[(i + 1) % w.size()] != v)
                    continue;
                const Vertex x = static_cast<Vertex>(degree.size());
                w.insert(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, x);
                faces.push_back({u, v, x});
                degree.push_back(2);
                ++degree[u];
                ++degree[v];
                return;
            }
        }
    };
    for (std::size_t e = 0; e < hub_edges.size(); ++e)
        for (int k = 0; k < best_paths[e]; ++k)
            add_path(hub_edges[e].u, hub_edges[e].v);

    // Converting uv: one more path, then merge the two faces along uv.
    for (std::size_t e = 0; e < hub_edges.size(); ++e) {
        if (best_paths[e] == 0 || !detail::coin(rng, convert_probability))
            continue;
        const Vertex u = hub_edges[e].u, v = hub_edges[e].v;
        add_path(u, v);
        auto find_dart = [&](Vertex a, Vertex b) -> std::pair<std::size_t, std::size_t> {
            for (std::size_t f = 0; f < faces.size(); ++f)
                for (std::size_t i = 0; i < faces[f].size(); ++i)
                    if (faces[f][i] == a && faces[f][(i + 1) % faces[f].size()] == b)
                        return {f, i};
            throw InvariantError("lost the dart " + std::to_string(a) + "->" + std::to_string(b));
        };
        auto [f1, i1] = find_dart(u, v);
        auto [f2, i2] = find_dart(v, u);
        auto rotated = [](const std::vector<Vertex>& w, std::size_t start) {
            std::vector<Vertex> r(w.begin() + static_cast<std::ptrdiff_t>(start), w.end());
            r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(start));
            return r;
        };
        // f1 walked from v around to u, then f2 from after u back to before v.
        auto a = rotated(faces[f1], (i1 + 1) % faces[f1].size());
        auto b = rotated(faces[f2], (i2 + 1) % faces[f2].size());
        std::vector<Vertex> merged = a;
        merged.insert(merged.end(), b.begin() + 1, b.end() - 1);
        faces[f1] = std::move(merged);
        faces.erase(faces.begin() + static_cast<std::ptrdiff_t>(f2));
        --degree[u];
        --degree[v];
    }
    return plane_graph_from_faces(static_cast<int>(degree.size()), faces);
}

/// Named-family front end used by the CLI.
struct GeneratorParams {
    int n = 0;
    std::uint64_t seed = 0;
    std::optional<int> max_degree;
    double delete_probability = 0.35;
    double stack_probability = 0.5;
};

inline const std::vector<std::string>& generator_families() {
    static const std::vector<std::string> names{"wheel", "stacked_triangulation", "cycle", "star",
                                                "random_planar", "decorated_triangulation"};
    return names;
}

inline PlaneGraph generate(const std::string& family, const GeneratorParams& p) {
    if (family == "wheel")
        return wheel(p.n);
    if (family == "cycle")
        return cycle(p.n);
    if (family == "star")
        return star(p.n);
    if (family == "stacked_triangulation")
        return stacked_triangulation(p.n, p.seed, p.max_degree);
    if (family == "random_planar")
        return random_planar(p.n, p.seed, p.max_degree, p.delete_probability);
    if (family == "decorated_triangulation")
        return decorated_triangulation(p.n, p.seed, p.max_degree.value_or(12), p.stack_probability,
                                       p.delete_probability);
    throw InputError("unknown graph family '" + family + "'");
}

} // namespace tlabel
