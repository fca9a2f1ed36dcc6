#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "tlabel/graph.hpp"
#include "tlabel/labeling.hpp"

namespace tlabel {

/// Variables that take colors 0..k, with pairwise separation constraints
/// |c(a) - c(b)| >= sep. Proper colorings use sep = 1.
class ConstraintNetwork {
public:
    explicit ConstraintNetwork(int size) : links_(static_cast<std::size_t>(size)) {}

    int size() const { return static_cast<int>(links_.size()); }

    void link(int a, int b, int sep) {
        links_[a].push_back({b, sep});
        links_[b].push_back({a, sep});
    }

    struct Link {
        int other;
        int sep;
    };
    const std::vector<Link>& links(int a) const { return links_[a]; }

private:
    std::vector<std::vector<Link>> links_;
};

enum class SearchStatus { Found, Infeasible, BudgetExhausted };

struct SearchOutcome {
    SearchStatus status = SearchStatus::Infeasible;
    std::vector<int> colors;
    std::uint64_t nodes = 0;
};

/// Depth-first search over a fixed variable order, trying colors in
/// increasing order, with forward checking: every assignment strikes the
/// blocked colors from unassigned neighbors and backtracks on a wipe-out.
inline SearchOutcome search_network(const ConstraintNetwork& net, const std::vector<int>& order, int k,
                                    std::uint64_t budget) {
    SearchOutcome out;
    const int n = net.size();
    if (k < 0)
        return out;
    const int width = k + 1;
    std::vector<int> blocked(static_cast<std::size_t>(n) * width, 0);
    std::vector<int> free_count(n, width);
    std::vector<int> color(n, -1);
    std::vector<int> next_try(n, 0);

    // Returns false on wipe-out; on success the changes are undone by strike(.., -1).
    auto strike = [&](int var, int col, int delta) {
        bool ok = true;
        for (const auto& l : net.links(var)) {
            if (color[l.other] >= 0)
                continue;
            int* row = &blocked[static_cast<std::size_t>(l.other) * width];
            for (int x = std::max(0, col - l.sep + 1); x <= std::min(k, col + l.sep - 1); ++x) {
                if (delta > 0) {
                    if (row[x]++ == 0 && --free_count[l.other] == 0)
                        ok = false;
                } else if (--row[x] == 0) {
                    ++free_count[l.other];
                }
            }
        }
        return ok;
    };

    int depth = 0;
    while (depth >= 0) {
        if (depth == n) {
            out.status = SearchStatus::Found;
            out.colors = color;
            return out;
        }
        const int var = order[depth];
        if (color[var] >= 0) {
            strike(var, color[var], -1);
            color[var] = -1;
        }
        const int* row = &blocked[static_cast<std::size_t>(var) * width];
        int c = next_try[var];
        while (c <= k && row[c] != 0)
            ++c;
        if (c > k) {
            next_try[var] = 0;
            --depth;
            continue;
        }
        if (++out.nodes > budget) {
            out.status = SearchStatus::BudgetExhausted;
            return out;
        }
        next_try[var] = c + 1;
        color[var] = c;
        if (strike(var, c, +1)) {
            ++depth;
        }
        // On wipe-out the loop revisits `var`, which undoes the strike first.
    }
    out.status = SearchStatus::Infeasible;
    return out;
}

/// Elements of the total labeling problem: vertices 0..n-1 then edges
/// n..n+m-1 in Graph::edges() order.
inline ConstraintNetwork total_labeling_network(const Graph& g, int d) {
    const int n = g.num_vertices();
    ConstraintNetwork net(n + g.num_edges());
    auto edges = g.edges();
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        const Edge& e = edges[i];
        net.link(e.u, e.v, 1);
        net.link(n + i, e.u, d);
        net.link(n + i, e.v, d);
    }
    for (Vertex v = 0; v < n; ++v) {
        auto nb = g.neighbors(v);
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b)
                net.link(n + *g.edge_id(Edge(v, nb[a])), n + *g.edge_id(Edge(v, nb[b])), 1);
    }
    return net;
}

/// Fail-first order: vertices keyed by degree, edges by endpoint-degree sum,
/// descending; ties by element id (vertices before edges).
inline std::vector<int> total_labeling_order(const Graph& g) {
    const int n = g.num_vertices();
    auto edges = g.edges();
    std::vector<int> key(n + edges.size());
    for (Vertex v = 0; v < n; ++v)
        key[v] = g.degree(v);
    for (std::size_t i = 0; i < edges.size(); ++i)
        key[n + i] = g.degree(edges[i].u) + g.degree(edges[i].v);
    std::vector<int> order(key.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] > key[b]; });
    return order;
}

inline PartialLabeling labeling_from_colors(const Graph& g, const std::vector<int>& colors) {
    PartialLabeling phi(g.num_vertices());
    const int n = g.num_vertices();
    for (Vertex v = 0; v < n; ++v)
        phi.set_vertex(v, colors[v]);
    auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        phi.set_edge(edges[i], colors[n + i]);
    return phi;
}

struct SolveResult {
    std::optional<int> lambda; ///< empty when the budget ran out
    PartialLabeling witness;
    std::uint64_t nodes = 0;
};

/// Finds a (d,1)-total labeling with colors {0..k}, if one exists.
/// Returns nullopt when none exists; throws BudgetExceeded when undecided.
inline std::optional<PartialLabeling> label_with_k(const Graph& g, int d, int k, std::uint64_t budget,
                                                   std::uint64_t* nodes = nullptr) {
    auto net = total_labeling_network(g, d);
    auto res = search_network(net, total_labeling_order(g), k, budget);
    if (nodes)
        *nodes += res.nodes;
    if (res.status == SearchStatus::BudgetExhausted)
        throw BudgetExceeded("total labeling search exceeded " + std::to_string(budget) + " nodes at k=" +
                             std::to_string(k));
    if (res.status == SearchStatus::Infeasible)
        return std::nullopt;
    return labeling_from_colors(g, res.colors);
}

/// max(Δ+d-1, Δ+d when d >= Δ, or when G is regular and d >= 2); 0 for
/// edgeless graphs, whose only elements are isolated vertices colored 0.
/// The regular case fails for d = 1: K3 has a total coloring with 3 colors.
inline int lambda_lower_bound(const Graph& g, int d) {
    if (g.num_edges() == 0)
        return 0;
    const int delta = g.max_degree();
    int lower = delta + d - 1;
    if (d >= delta || (d >= 2 && g.is_regular()))
        lower = delta + d;
    return lower;
}

/// Exact λ_d^T: tries k = lower bound, lower bound + 1, ... until a
/// labeling exists. A spent budget yields an empty `lambda`, never a guess.
inline SolveResult lambda_exact(const Graph& g, int d, std::uint64_t budget = 50'000'000) {
    if (d < 1)
        throw InputError("separation d must be at least 1");
    SolveResult result;
    auto net = total_labeling_network(g, d);
    auto order = total_labeling_order(g);
    for (int k = lambda_lower_bound(g, d);; ++k) {
        const std::uint64_t left = budget > result.nodes ? budget - result.nodes : 0;
        auto res = search_network(net, order, k, left);
        result.nodes += res.nodes;
        if (res.status == SearchStatus::BudgetExhausted)
            return result;
        if (res.status == SearchStatus::Found) {
            result.lambda = k;
            result.witness = labeling_from_colors(g, res.colors);
            return result;
        }
    }
}

/// Minimum number of colors in a proper vertex coloring.
inline int chromatic_number(const Graph& g, std::uint64_t budget = 50'000'000) {
    const int n = g.num_vertices();
    if (n == 0)
        return 0;
    ConstraintNetwork net(n);
    for (const Edge& e : g.edges())
        net.link(e.u, e.v, 1);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
    std::uint64_t spent = 0;
    for (int colors = 1;; ++colors) {
        auto res = search_network(net, order, colors - 1, budget - spent);
        spent += res.nodes;
        if (res.status == SearchStatus::BudgetExhausted)
            throw BudgetExceeded("chromatic number search exceeded its budget");
        if (res.status == SearchStatus::Found)
            return colors;
    }
}

/// Minimum number of colors in a proper edge coloring.
inline int chromatic_index(const Graph& g, std::uint64_t budget = 50'000'000) {
    const int m = g.num_edges();
    if (m == 0)
        return 0;
    ConstraintNetwork net(m);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        auto nb = g.neighbors(v);
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b)
                net.link(*g.edge_id(Edge(v, nb[a])), *g.edge_id(Edge(v, nb[b])), 1);
    }
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    auto edges = g.edges();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return g.degree(edges[a].u) + g.degree(edges[a].v) > g.degree(edges[b].u) + g.degree(edges[b].v);
    });
    std::uint64_t spent = 0;
    for (int colors = std::max(1, g.max_degree());; ++colors) {
        auto res = search_network(net, order, colors - 1, budget - spent);
        spent += res.nodes;
        if (res.status == SearchStatus::BudgetExhausted)
            throw BudgetExceeded("chromatic index search exceeded its budget");
        if (res.status == SearchStatus::Found)
            return colors;
    }
}

struct LambdaBounds {
    int lower = 0;
    int upper = 0;
    int chi = 0;
    int chi_prime = 0;
};

/// Lower bound from the maximum degree, upper bound χ + χ' + d - 2.
/// Edgeless graphs get (0, 0).
inline LambdaBounds bounds(const Graph& g, int d, std::uint64_t budget = 50'000'000) {
    LambdaBounds b;
    b.chi = chromatic_number(g, budget);
    b.chi_prime = chromatic_index(g, budget);
    b.lower = lambda_lower_bound(g, d);
    b.upper = g.num_edges() == 0 ? 0 : b.chi + b.chi_prime + d - 2;
    return b;
}

} // namespace tlabel
