#include <gtest/gtest.h>

#include "support.hpp"
#include "tlabel/exact.hpp"
#include "tlabel/generators.hpp"

using namespace tlabel;

namespace {

Graph path_graph(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i)
        e.emplace_back(i, i + 1);
    return Graph::from_edges(n, std::span<const Edge>(e));
}

Graph star_graph(int leaves) { return star(leaves).graph(); }

Graph cycle_graph(int n) { return cycle(n).graph(); }

} // namespace

TEST(Exact, K2) {
    Graph g = Graph::from_edges(2, {{0, 1}});
    auto r = lambda_exact(g, 2);
    ASSERT_TRUE(r.lambda);
    EXPECT_EQ(*r.lambda, 3);
    EXPECT_TRUE(validate(g, r.witness, {3, 2}).empty());
    EXPECT_TRUE(r.witness.is_total_on(g));
    EXPECT_FALSE(tltest::naive_labelable(tltest::naive_problem(2, {{0, 1}}, 2), 2));
}

TEST(Exact, Star3) {
    Graph g = star_graph(3);
    auto r = lambda_exact(g, 2);
    ASSERT_TRUE(r.lambda);
    EXPECT_EQ(*r.lambda, 4);
    EXPECT_TRUE(tltest::naive_valid(g, r.witness, 4, 2));
}

TEST(Exact, C5TotalColoring) {
    // d = 1 is total coloring; C5 needs 4 total colors.
    Graph g = cycle_graph(5);
    EXPECT_EQ(tltest::naive_lambda(g, 1), 3);
    auto r = lambda_exact(g, 1);
    ASSERT_TRUE(r.lambda);
    EXPECT_EQ(*r.lambda, 3);
}

TEST(Exact, RegularGraphsWithSeparationOne) {
    // The Δ+d bound for regular graphs needs d >= 2: K3 and K5 have total
    // colorings with Δ+1 colors.
    Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(lambda_lower_bound(k3, 1), 2);
    EXPECT_EQ(*lambda_exact(k3, 1).lambda, 2);
    EXPECT_EQ(lambda_lower_bound(k3, 2), 4);
    EXPECT_EQ(*lambda_exact(k3, 2).lambda, 4);
}

TEST(Exact, EdgelessAndSingleVertex) {
    Graph g(3);
    auto r = lambda_exact(g, 2);
    ASSERT_TRUE(r.lambda);
    EXPECT_EQ(*r.lambda, 0);
    EXPECT_EQ(r.witness.vertex(2), std::optional<int>(0));
    auto b = bounds(g, 2);
    EXPECT_EQ(b.lower, 0);
    EXPECT_EQ(b.upper, 0);
}

TEST(Exact, BadSeparation) { EXPECT_THROW(lambda_exact(Graph(1), 0), InputError); }

TEST(Exact, BudgetExhaustionIsUnknown) {
    Graph g = stacked_triangulation(8, 3).graph();
    auto r = lambda_exact(g, 2, 10);
    EXPECT_FALSE(r.lambda.has_value());
    EXPECT_GE(r.nodes, 10u);
    EXPECT_THROW(label_with_k(g, 2, 3, 10), BudgetExceeded);
}

TEST(Exact, LabelWithKBelowLambdaIsNone) {
    Graph g = star_graph(3);
    EXPECT_FALSE(label_with_k(g, 2, 3, 1'000'000).has_value());
    auto phi = label_with_k(g, 2, 4, 1'000'000);
    ASSERT_TRUE(phi.has_value());
    EXPECT_TRUE(validate(g, *phi, {4, 2}).empty());
}

TEST(Bounds, K2) {
    auto b = bounds(Graph::from_edges(2, {{0, 1}}), 2);
    EXPECT_EQ(b.lower, 3);
    EXPECT_EQ(b.upper, 3);
    EXPECT_EQ(b.chi, 2);
    EXPECT_EQ(b.chi_prime, 1);
}

TEST(Bounds, C5) {
    auto b = bounds(cycle_graph(5), 2);
    EXPECT_EQ(b.lower, 4);
    EXPECT_EQ(b.upper, 6);
}

TEST(Bounds, ChromaticNumbersAgreeWithBruteForce) {
    for (const auto& g : tltest::connected_graphs_upto(5)) {
        EXPECT_EQ(chromatic_number(g), tltest::naive_chromatic_number(g));
        EXPECT_EQ(chromatic_index(g), tltest::naive_chromatic_index(g));
    }
}

TEST(Exact, AgreesWithNaiveEnumeratorUpToFiveVertices) {
    for (const auto& g : tltest::connected_graphs_upto(5)) {
        for (int d = 1; d <= 3; ++d) {
            auto r = lambda_exact(g, d);
            ASSERT_TRUE(r.lambda);
            EXPECT_EQ(*r.lambda, tltest::naive_lambda(g, d))
                << "n=" << g.num_vertices() << " m=" << g.num_edges() << " d=" << d;
            EXPECT_TRUE(tltest::naive_valid(g, r.witness, *r.lambda, d));
            auto b = bounds(g, d);
            EXPECT_LE(b.lower, *r.lambda);
            EXPECT_LE(*r.lambda, b.upper);
        }
    }
}

TEST(Exact, PathsAndCyclesMatchNaive) {
    for (int n = 2; n <= 7; ++n) {
        EXPECT_EQ(*lambda_exact(path_graph(n), 2).lambda, tltest::naive_lambda(path_graph(n), 2));
        if (n >= 3) {
            EXPECT_EQ(*lambda_exact(cycle_graph(n), 1).lambda, tltest::naive_lambda(cycle_graph(n), 1));
        }
    }
}

TEST(Exact, Deterministic) {
    Graph g = stacked_triangulation(6, 2).graph();
    auto a = lambda_exact(g, 2), b = lambda_exact(g, 2);
    EXPECT_EQ(a.lambda, b.lambda);
    EXPECT_EQ(a.nodes, b.nodes);
    EXPECT_EQ(a.witness, b.witness);
}

TEST(Exact, DisconnectedGraphsAreAccepted) {
    Graph g = Graph::from_edges(5, {{0, 1}, {2, 3}, {3, 4}});
    auto r = lambda_exact(g, 2);
    ASSERT_TRUE(r.lambda);
    EXPECT_EQ(*r.lambda, tltest::naive_lambda(g, 2));
}
