#pragma once

// Test-side oracles. Nothing here calls into the solver it checks.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tlabel/generators.hpp"
#include "tlabel/graph.hpp"
#include "tlabel/labeling.hpp"

namespace tltest {

using namespace tlabel;

/// Rotation = neighbors in id order. Fine for code that only walks
/// rotations (reduce), not for face counts.
inline PlaneGraph plane_of(const Graph& g) {
    std::vector<std::vector<Vertex>> rot(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        rot[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
    auto edges = g.edges();
    return build_plane_graph(g.num_vertices(), std::span<const Edge>(edges), std::move(rot));
}

// ---------------------------------------------------------------------------
// Naive total labeling
// ---------------------------------------------------------------------------

/// Elements 0..n-1 are vertices, n.. are edges; conflicts[i] lists
/// (j, separation) for j < i.
struct NaiveProblem {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<std::pair<int, int>>> conflicts;
};

inline NaiveProblem naive_problem(int n, const std::vector<std::pair<int, int>>& edges, int d) {
    NaiveProblem p;
    p.n = n;
    p.edges = edges;
    const int total = n + static_cast<int>(edges.size());
    p.conflicts.assign(total, {});
    auto touches = [&](int i, int v) { return edges[i].first == v || edges[i].second == v; };
    for (int a = 0; a < total; ++a) {
        for (int b = 0; b < a; ++b) {
            int sep = 0;
            if (a < n && b < n) {
                for (auto [x, y] : edges)
                    if ((x == a && y == b) || (x == b && y == a))
                        sep = 1;
            } else if (a >= n && b >= n) {
                auto [x, y] = edges[a - n];
                if (touches(b - n, x) || touches(b - n, y))
                    sep = 1;
            } else {
                const int e = (a >= n ? a : b) - n, v = a >= n ? b : a;
                if (touches(e, v))
                    sep = d;
            }
            if (sep)
                p.conflicts[a].push_back({b, sep});
        }
    }
    return p;
}

/// Plain depth-first enumeration of colorings in element order.
inline bool naive_labelable(const NaiveProblem& p, int k, std::vector<int>* out = nullptr) {
    const int total = static_cast<int>(p.conflicts.size());
    std::vector<int> col(total, -1);
    std::function<bool(int)> go = [&](int i) {
        if (i == total)
            return true;
        for (int c = 0; c <= k; ++c) {
            bool ok = true;
            for (auto [j, sep] : p.conflicts[i])
                ok = ok && std::abs(col[j] - c) >= sep;
            if (!ok)
                continue;
            col[i] = c;
            if (go(i + 1))
                return true;
        }
        col[i] = -1;
        return false;
    };
    const bool found = go(0);
    if (found && out)
        *out = col;
    return found;
}

inline std::vector<std::pair<int, int>> edge_pairs(const Graph& g) {
    std::vector<std::pair<int, int>> out;
    for (const Edge& e : g.edges())
        out.emplace_back(e.u, e.v);
    return out;
}

inline int naive_lambda(const Graph& g, int d) {
    auto p = naive_problem(g.num_vertices(), edge_pairs(g), d);
    for (int k = 0;; ++k)
        if (naive_labelable(p, k))
            return k;
}

/// Full check of a labeling written from the definition.
inline bool naive_valid(const Graph& g, const PartialLabeling& phi, int k, int d) {
    auto edges = g.edges();
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (!phi.vertex(v) || *phi.vertex(v) < 0 || *phi.vertex(v) > k)
            return false;
    for (const Edge& e : edges)
        if (!phi.edge(e) || *phi.edge(e) < 0 || *phi.edge(e) > k)
            return false;
    for (const Edge& e : edges) {
        if (*phi.vertex(e.u) == *phi.vertex(e.v))
            return false;
        if (std::abs(*phi.vertex(e.u) - *phi.edge(e)) < d || std::abs(*phi.vertex(e.v) - *phi.edge(e)) < d)
            return false;
    }
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const Edge &a = edges[i], &b = edges[j];
            const bool share = a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
            if (share && *phi.edge(a) == *phi.edge(b))
                return false;
        }
    return true;
}

inline int naive_chromatic_number(const Graph& g) {
    const int n = g.num_vertices();
    for (int colors = 1;; ++colors) {
        std::vector<int> col(n, 0);
        for (;;) {
            bool ok = true;
            for (const Edge& e : g.edges())
                ok = ok && col[e.u] != col[e.v];
            if (ok)
                return colors;
            int i = 0;
            while (i < n && ++col[i] == colors)
                col[i++] = 0;
            if (i == n)
                break;
        }
    }
}

inline int naive_chromatic_index(const Graph& g) {
    auto edges = g.edges();
    const int m = static_cast<int>(edges.size());
    if (m == 0)
        return 0;
    for (int colors = 1;; ++colors) {
        std::vector<int> col(m, 0);
        for (;;) {
            bool ok = true;
            for (int i = 0; i < m && ok; ++i)
                for (int j = i + 1; j < m && ok; ++j) {
                    const Edge &a = edges[i], &b = edges[j];
                    if ((a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) && col[i] == col[j])
                        ok = false;
                }
            if (ok)
                return colors;
            int i = 0;
            while (i < m && ++col[i] == colors)
                col[i++] = 0;
            if (i == m)
                break;
        }
    }
}

/// Random valid total labeling with colors {0..k}: random element order,
/// random available color, restart when stuck.
inline std::optional<PartialLabeling> random_total_labeling(const Graph& g, int k, int d, std::mt19937_64& rng,
                                                            int attempts = 2000) {
    std::vector<Element> elems;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        elems.push_back(v);
    for (const Edge& e : g.edges())
        elems.push_back(e);
    const ColorInterval c{k, d};
    for (int attempt = 0; attempt < attempts; ++attempt) {
        std::shuffle(elems.begin(), elems.end(), rng);
        PartialLabeling phi(g.num_vertices());
        bool stuck = false;
        for (const auto& x : elems) {
            auto options = available(g, phi, x, c).values();
            if (options.empty()) {
                stuck = true;
                break;
            }
            phi.set(x, options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
        }
        if (!stuck)
            return phi;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Small graphs
// ---------------------------------------------------------------------------

/// One representative per isomorphism class of connected graphs on
/// exactly n vertices, found by minimizing the edge bitmask over all
/// vertex permutations.
inline std::vector<Graph> connected_graphs(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            slots.emplace_back(a, b);
    const int s = static_cast<int>(slots.size());
    std::vector<std::vector<int>> slot_of(n, std::vector<int>(n, -1));
    for (int i = 0; i < s; ++i) {
        slot_of[slots[i].first][slots[i].second] = i;
        slot_of[slots[i].second][slots[i].first] = i;
    }
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    std::set<std::uint32_t> seen;
    std::vector<Graph> out;
    for (std::uint32_t mask = 0; mask < (1u << s); ++mask) {
        std::uint32_t canon = mask;
        for (const auto& q : perms) {
            std::uint32_t image = 0;
            for (int i = 0; i < s; ++i)
                if (mask >> i & 1)
                    image |= 1u << slot_of[q[slots[i].first]][q[slots[i].second]];
            canon = std::min(canon, image);
        }
        if (!seen.insert(canon).second)
            continue;
        std::vector<Edge> edges;
        for (int i = 0; i < s; ++i)
            if (canon >> i & 1)
                edges.emplace_back(slots[i].first, slots[i].second);
        Graph g = Graph::from_edges(n, std::span<const Edge>(edges));
        if (g.connected())
            out.push_back(std::move(g));
    }
    return out;
}

inline std::vector<Graph> connected_graphs_upto(int n) {
    std::vector<Graph> out;
    for (int k = 1; k <= n; ++k) {
        auto part = connected_graphs(k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// List edge coloring
// ---------------------------------------------------------------------------

inline bool brute_list_colorable(const std::vector<Edge>& edges, const std::vector<std::vector<int>>& lists) {
    const int m = static_cast<int>(edges.size());
    std::vector<int> pick(m, 0);
    std::function<bool(int)> go = [&](int i) {
        if (i == m)
            return true;
        for (int c : lists[i]) {
            bool ok = true;
            for (int j = 0; j < i; ++j) {
                const Edge &a = edges[i], &b = edges[j];
                if ((a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) && pick[j] == c)
                    ok = false;
            }
            if (!ok)
                continue;
            pick[i] = c;
            if (go(i + 1))
                return true;
        }
        return false;
    };
    return go(0);
}

struct ListInstance {
    std::vector<Edge> edges;
    std::vector<std::vector<int>> lists;
};

/// Random simple bipartite graph with sides 0..a-1 and a..a+b-1, and for
/// each edge a random list of size max{d(u), d(v)} from a palette a little
/// larger than that.
inline ListInstance random_list_instance(std::mt19937_64& rng, int max_edges) {
    ListInstance inst;
    std::uniform_int_distribution<int> side(1, 5);
    const int a = side(rng), b = side(rng);
    std::vector<Edge> all;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v)
            all.emplace_back(u, a + v);
    std::shuffle(all.begin(), all.end(), rng);
    const int m = std::uniform_int_distribution<int>(1, std::min<int>(max_edges, static_cast<int>(all.size())))(rng);
    inst.edges.assign(all.begin(), all.begin() + m);
    std::vector<int> deg(a + b, 0);
    for (const Edge& e : inst.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    for (const Edge& e : inst.edges) {
        const int size = std::max(deg[e.u], deg[e.v]);
        std::vector<int> palette(size + std::uniform_int_distribution<int>(0, 3)(rng));
        std::iota(palette.begin(), palette.end(), 0);
        std::shuffle(palette.begin(), palette.end(), rng);
        palette.resize(size);
        std::sort(palette.begin(), palette.end());
        inst.lists.push_back(palette);
    }
    return inst;
}

inline bool list_coloring_ok(const ListInstance& inst, const std::vector<int>& colors) {
    if (colors.size() != inst.edges.size())
        return false;
    for (std::size_t i = 0; i < colors.size(); ++i) {
        if (std::find(inst.lists[i].begin(), inst.lists[i].end(), colors[i]) == inst.lists[i].end())
            return false;
        for (std::size_t j = 0; j < i; ++j) {
            const Edge &a = inst.edges[i], &b = inst.edges[j];
            if ((a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) && colors[i] == colors[j])
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Plane graph corpus
// ---------------------------------------------------------------------------

struct CorpusItem {
    std::string name;
    PlaneGraph graph;
    int M = 12;
};

/// 50 graphs per M in 12..16 across the generator families, plus the
/// wheel and star on M spokes.
inline std::vector<CorpusItem> plane_corpus() {
    std::vector<CorpusItem> out;
    for (int M = 12; M <= 16; ++M) {
        out.push_back({"wheel(" + std::to_string(M) + ")", wheel(M), M});
        out.push_back({"star(" + std::to_string(M) + ")", star(M), M});
        for (int i = 0; i < 50; ++i) {
            const std::uint64_t seed = 1000 * static_cast<std::uint64_t>(M) + static_cast<std::uint64_t>(i);
            const int n = 13 + (i * 37 + M * 11) % 288;
            std::string tag = "M" + std::to_string(M) + "-" + std::to_string(i) + " ";
            switch (i % 5) {
            case 0:
            case 1: {
                const int hubs = 6 + (i * 7) % 35;
                const int cap = i % 5 == 0 ? M : M - 1;
                out.push_back({tag + "decorated_triangulation(" + std::to_string(hubs) + ")",
                               decorated_triangulation(hubs, seed, cap, 0.1 * (i % 8), 0.1 * (i % 4)), M});
                break;
            }
            case 2:
                out.push_back({tag + "random_planar(" + std::to_string(n) + ")", random_planar(n, seed, M, 0.35), M});
                break;
            case 3:
                out.push_back(
                    {tag + "stacked_triangulation(" + std::to_string(n) + ")", stacked_triangulation(n, seed, M), M});
                break;
            default:
                out.push_back({tag + "sparse random_planar(" + std::to_string(n) + ")",
                               random_planar(n, seed, M, 0.7), M});
                break;
            }
        }
    }
    return out;
}

} // namespace tltest
