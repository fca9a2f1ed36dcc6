#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "tlabel/graph.hpp"
#include "tlabel/labeling.hpp"

namespace tlabel {

/// Proper edge coloring of a bipartite graph where edge i takes its color
/// from lists[i]. When every list holds at least max{d(u), d(v)} colors a
/// coloring always exists, so the backtracking
/// below failing under that precondition is an InvariantError. A violated
/// precondition is reported as InputError before any search.
inline std::vector<int> list_edge_color_bipartite(const std::vector<Edge>& edges,
                                                  const std::vector<std::vector<int>>& lists) {
    if (edges.size() != lists.size())
        throw InputError("list edge coloring: " + std::to_string(edges.size()) + " edges but " +
                         std::to_string(lists.size()) + " lists");

    std::map<Vertex, std::vector<int>> incident; // vertex -> edge indices
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        incident[edges[i].u].push_back(i);
        incident[edges[i].v].push_back(i);
    }
    for (const auto& [v, es] : incident) {
        std::vector<Vertex> others;
        for (int i : es)
            others.push_back(edges[i].other(v));
        std::sort(others.begin(), others.end());
        if (std::adjacent_find(others.begin(), others.end()) != others.end())
            throw InputError("list edge coloring: repeated edge at vertex " + std::to_string(v));
    }

    // Two-color the endpoints to confirm bipartiteness.
    std::map<Vertex, int> side;
    for (const auto& [start, unused] : incident) {
        if (side.count(start))
            continue;
        side[start] = 0;
        std::vector<Vertex> stack{start};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (int i : incident[v]) {
                Vertex w = edges[i].other(v);
                auto it = side.find(w);
                if (it == side.end()) {
                    side[w] = 1 - side[v];
                    stack.push_back(w);
                } else if (it->second == side[v]) {
                    throw InputError("list edge coloring: graph is not bipartite (odd cycle through " +
                                     std::to_string(w) + ")");
                }
            }
        }
    }

    const int m = static_cast<int>(edges.size());
    std::vector<std::vector<int>> list(m);
    for (int i = 0; i < m; ++i) {
        list[i] = lists[i];
        std::sort(list[i].begin(), list[i].end());
        list[i].erase(std::unique(list[i].begin(), list[i].end()), list[i].end());
        const int need = std::max(static_cast<int>(incident[edges[i].u].size()),
                                  static_cast<int>(incident[edges[i].v].size()));
        if (static_cast<int>(list[i].size()) < need)
            throw InputError("list edge coloring: edge " + to_string(edges[i]) + " has " +
                             std::to_string(list[i].size()) + " colors, needs " + std::to_string(need));
    }

    std::vector<int> color(m, -1);
    auto usable = [&](int i, int c) {
        for (Vertex end : {edges[i].u, edges[i].v})
            for (int j : incident[end])
                if (j != i && color[j] == c)
                    return false;
        return true;
    };
    auto options = [&](int i) {
        int n = 0;
        for (int c : list[i])
            n += usable(i, c) ? 1 : 0;
        return n;
    };

    // Dynamic fail-first: always branch on the uncolored edge with the
    // fewest usable colors (lowest index on ties).
    auto solve = [&](auto&& self, int colored) -> bool {
        if (colored == m)
            return true;
        int best = -1, best_opts = 0;
        for (int i = 0; i < m; ++i) {
            if (color[i] >= 0)
                continue;
            int o = options(i);
            if (best < 0 || o < best_opts) {
                best = i;
                best_opts = o;
            }
        }
        if (best_opts == 0)
            return false;
        for (int c : list[best]) {
            if (!usable(best, c))
                continue;
            color[best] = c;
            if (self(self, colored + 1))
                return true;
            color[best] = -1;
        }
        return false;
    };
    if (!solve(solve, 0))
        throw InvariantError("list edge coloring failed although every list meets max{d(u), d(v)}");
    return color;
}

} // namespace tlabel
