#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "support.hpp"
#include "tlabel/generators.hpp"
#include "tlabel/graph.hpp"
#include "tlabel/io.hpp"

using namespace tlabel;

namespace {

int euler(const PlaneGraph& pg) {
    return pg.num_vertices() - pg.num_edges() + static_cast<int>(trace_faces(pg).size());
}

std::vector<int> face_degrees(const PlaneGraph& pg) {
    std::vector<int> out;
    for (const Face& f : trace_faces(pg))
        out.push_back(f.degree());
    std::sort(out.begin(), out.end());
    return out;
}

PlaneGraph k4() {
    // Outer triangle 0 1 2 (clockwise), 3 inside.
    return build_plane_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
                             {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}});
}

void check_plane_invariants(const PlaneGraph& pg) {
    const Graph& g = pg.graph();
    ASSERT_EQ(euler(pg), 2);
    int deg_sum = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        deg_sum += g.degree(v);
        for (Vertex w : g.neighbors(v)) {
            EXPECT_NE(v, w);
            EXPECT_TRUE(g.adjacent(w, v));
        }
    }
    int face_sum = 0;
    std::map<std::pair<Vertex, Vertex>, int> darts;
    for (const Face& f : trace_faces(pg)) {
        face_sum += f.degree();
        for (std::size_t i = 0; i < f.boundary.size(); ++i)
            ++darts[{f.boundary[i], f.boundary[(i + 1) % f.boundary.size()]}];
    }
    EXPECT_EQ(deg_sum, 2 * g.num_edges());
    EXPECT_EQ(face_sum, 2 * g.num_edges());
    EXPECT_EQ(static_cast<int>(darts.size()), 2 * g.num_edges());
    for (const auto& [d, count] : darts)
        EXPECT_EQ(count, 1);
}

} // namespace

TEST(Graph, EdgesAreNormalized) {
    Edge e(5, 2);
    EXPECT_EQ(e.u, 2);
    EXPECT_EQ(e.v, 5);
    EXPECT_EQ(e, Edge(2, 5));
}

TEST(Graph, BasicQueries) {
    Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
    EXPECT_EQ(g.num_vertices(), 5);
    EXPECT_EQ(g.num_edges(), 4);
    EXPECT_EQ(g.degree(2), 3);
    EXPECT_EQ(g.max_degree(), 3);
    EXPECT_EQ(g.min_degree(), 0);
    EXPECT_TRUE(g.adjacent(3, 2));
    EXPECT_FALSE(g.adjacent(3, 0));
    EXPECT_FALSE(g.connected());
    EXPECT_EQ(g.components().size(), 2u);
    EXPECT_EQ(common_neighbors(g, 0, 1), std::vector<Vertex>{2});
}

TEST(Graph, RejectsSelfLoopsAndParallelEdges) {
    EXPECT_THROW(Graph::from_edges(2, {{1, 1}}), InputError);
    EXPECT_THROW(Graph::from_edges(2, {{0, 1}, {1, 0}}), InputError);
    EXPECT_THROW(Graph::from_edges(2, {{0, 2}}), InputError);
}

TEST(PlaneGraph, Triangle) {
    auto pg = build_plane_graph(3, {{0, 1}, {1, 2}, {0, 2}}, {{1, 2}, {2, 0}, {0, 1}});
    EXPECT_EQ(pg.num_vertices(), 3);
    EXPECT_EQ(pg.num_edges(), 3);
    EXPECT_EQ(face_degrees(pg), (std::vector<int>{3, 3}));
}

TEST(PlaneGraph, K4HasFourTriangles) {
    auto pg = k4();
    EXPECT_EQ(face_degrees(pg), (std::vector<int>{3, 3, 3, 3}));
    check_plane_invariants(pg);
}

TEST(PlaneGraph, PathFaceCountsCutEdgesTwice) {
    auto pg = build_plane_graph(3, {{0, 1}, {1, 2}}, {{1}, {0, 2}, {1}});
    EXPECT_EQ(face_degrees(pg), std::vector<int>{4});
}

TEST(PlaneGraph, RotationMismatchIsRejected) {
    EXPECT_THROW(build_plane_graph(3, {{0, 1}, {1, 2}}, {{1}, {0}, {1}}), InputError);
    EXPECT_THROW(build_plane_graph(3, {{0, 1}, {1, 2}}, {{1, 2}, {0, 2}, {1}}), InputError);
}

TEST(PlaneGraph, NonPlanarRotationFailsEuler) {
    // K4 with one rotation reversed: a valid rotation system of genus 1.
    auto pg = build_plane_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
                                {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 2, 1}});
    EXPECT_THROW(trace_faces(pg), InputError);
}

TEST(PlaneGraph, DisconnectedFaceTracingNamesComponents) {
    auto pg = build_plane_graph(4, {{0, 1}, {2, 3}}, {{1}, {0}, {3}, {2}});
    try {
        trace_faces(pg);
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("component"), std::string::npos);
    }
}

TEST(PlaneGraph, WithoutEdgesKeepsRotationOrder) {
    auto pg = without_edges(k4(), {Edge(0, 3)});
    EXPECT_EQ(pg.num_edges(), 5);
    EXPECT_EQ(std::vector<Vertex>(pg.rotation(0).begin(), pg.rotation(0).end()), (std::vector<Vertex>{1, 2}));
    EXPECT_EQ(face_degrees(pg), (std::vector<int>{3, 3, 4}));
}

TEST(Generators, Wheel12) {
    auto pg = wheel(12);
    EXPECT_EQ(pg.num_vertices(), 13);
    EXPECT_EQ(pg.graph().degree(0), 12);
    for (Vertex v = 1; v <= 12; ++v)
        EXPECT_EQ(pg.graph().degree(v), 3);
    // 12 triangles around the hub and the outer 12-face.
    std::vector<int> expected(12, 3);
    expected.push_back(12);
    EXPECT_EQ(face_degrees(pg), expected);
    check_plane_invariants(pg);
}

TEST(Generators, Cycle5) {
    auto pg = cycle(5);
    EXPECT_EQ(pg.num_vertices(), 5);
    EXPECT_TRUE(pg.graph().is_regular());
    EXPECT_EQ(face_degrees(pg), (std::vector<int>{5, 5}));
}

TEST(Generators, StarIsOneFace) {
    auto pg = star(6);
    EXPECT_EQ(face_degrees(pg), std::vector<int>{12});
    check_plane_invariants(pg);
}

TEST(Generators, Deterministic) {
    GeneratorParams p;
    p.n = 50;
    p.seed = 1;
    EXPECT_EQ(serialize_graph(generate("random_planar", p)), serialize_graph(generate("random_planar", p)));
    p.n = 12;
    EXPECT_EQ(serialize_graph(generate("decorated_triangulation", p)),
              serialize_graph(generate("decorated_triangulation", p)));
}

TEST(Generators, ParameterErrors) {
    EXPECT_THROW(wheel(2), InputError);
    EXPECT_THROW(cycle(2), InputError);
    EXPECT_THROW(star(0), InputError);
    EXPECT_THROW(stacked_triangulation(2), InputError);
    EXPECT_THROW(decorated_triangulation(3, 0, 12), InputError);
    GeneratorParams p;
    p.n = 5;
    EXPECT_THROW(generate("petersen", p), InputError);
}

TEST(Generators, EveryFamilyYieldsConnectedPlaneGraphs) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int n = 4 + static_cast<int>(seed * 7 % 90);
        for (const auto& pg : {stacked_triangulation(n, seed), stacked_triangulation(n, seed, 12),
                               random_planar(n, seed), random_planar(n, seed, 12, 0.6),
                               decorated_triangulation(4 + static_cast<int>(seed % 20), seed, 12 + static_cast<int>(seed % 5),
                                                       0.1 * static_cast<double>(seed % 8), 0.3)}) {
            SCOPED_TRACE("seed " + std::to_string(seed));
            EXPECT_TRUE(pg.graph().connected());
            check_plane_invariants(pg);
        }
    }
}

TEST(Generators, DegreeCapsAreRespected) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int cap = 12 + static_cast<int>(seed % 5);
        EXPECT_LE(stacked_triangulation(150, seed, cap).graph().max_degree(), cap);
        EXPECT_LE(random_planar(150, seed, cap).graph().max_degree(), cap);
        EXPECT_LE(decorated_triangulation(5 + static_cast<int>(seed), seed, cap).graph().max_degree(), cap);
    }
}

TEST(Generators, DecoratedTriangulationOftenAvoidsSparseAndLightEdges) {
    int tight = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto pg = decorated_triangulation(10 + static_cast<int>(seed % 20), seed, 12, 0.1 * static_cast<double>(seed % 8),
                                          0.1 * static_cast<double>(seed % 4));
        const Graph& g = pg.graph();
        bool loose = false;
        for (const Edge& e : g.edges()) {
            const int a = g.degree(e.u), b = g.degree(e.v);
            loose = loose || a + b <= 10 || (std::min(a, b) <= 3 && a + b <= 13);
        }
        tight += loose ? 0 : 1;
    }
    EXPECT_GE(tight, 10);
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

TEST(GraphFormat, RoundTripIsByteStable) {
    auto pg = random_planar(40, 3, 12);
    const std::string text = serialize_graph(pg);
    auto gf = parse_graph(text);
    ASSERT_TRUE(gf.rotation.has_value());
    EXPECT_EQ(serialize_graph(gf.plane(true)), text);
}

TEST(GraphFormat, SymbolicLabelsAreNumberedByFirstAppearance) {
    auto gf = parse_graph("c a path\np tlabel 4 2\ne a b\n# comment\ne b c\n");
    EXPECT_EQ(gf.names, (std::vector<std::string>{"a", "b", "c", "_0"}));
    EXPECT_EQ(gf.graph.num_edges(), 2);
    EXPECT_EQ(gf.graph.degree(3), 0);
    EXPECT_EQ(gf.id_of("c"), std::optional<Vertex>(2));
    EXPECT_FALSE(gf.rotation.has_value());
    EXPECT_THROW(gf.plane(true), InputError);
}

TEST(GraphFormat, Errors) {
    EXPECT_THROW(parse_graph("e 0 1\n"), InputError);
    EXPECT_THROW(parse_graph("p tlabel 2 2\ne 0 1\n"), InputError);
    EXPECT_THROW(parse_graph("p tlabel 2 1\ne 0 0\n"), InputError);
    EXPECT_THROW(parse_graph("p tlabel 2 2\ne 0 1\ne 1 0\n"), InputError);
    EXPECT_THROW(parse_graph("p tlabel 2 1\nx 0 1\n"), InputError);
    EXPECT_THROW(parse_graph("p tlabel 2 1\ne 0 1\nr 0 1\n"), InputError);
    EXPECT_THROW(parse_graph("p tlabel 1 1\ne a b\n"), InputError);
    EXPECT_THROW(parse_graph("p tlabel 3 2\ne 0 1\ne 1 2\nr 0 1\nr 1 0\nr 2 1\nr 0 1\n"), InputError);
    EXPECT_THROW(read_file("/nonexistent/graph.g"), InputError);
}

TEST(GraphFormat, RotationLinesAreChecked) {
    EXPECT_NO_THROW(parse_graph("p tlabel 3 2\ne 0 1\ne 1 2\nr 0 1\nr 1 0 2\nr 2 1\n"));
    EXPECT_THROW(parse_graph("p tlabel 3 2\ne 0 1\ne 1 2\nr 0 1\nr 1 0\nr 2 1\n"), InputError);
}

TEST(LabelingFormat, RoundTripWithNames) {
    auto gf = parse_graph("p tlabel 2 1\ne x y\n");
    PartialLabeling phi(2);
    phi.set_vertex(0, 0);
    phi.set_vertex(1, 1);
    phi.set_edge(Edge(0, 1), 3);
    const std::string text = serialize_labeling(phi, &gf.names);
    EXPECT_EQ(text, "v x 0\nv y 1\ne x y 3\n");
    EXPECT_EQ(parse_labeling(text, gf), phi);
    EXPECT_THROW(parse_labeling("v z 0\n", gf), InputError);
    EXPECT_THROW(parse_labeling("v x 0\nv x 1\n", gf), InputError);
    EXPECT_THROW(parse_labeling("v x -1\n", gf), InputError);
    EXPECT_THROW(parse_labeling("e x x 1\n", gf), InputError);
    // Partial labelings load fine.
    EXPECT_EQ(parse_labeling("e y x 4\n", gf).colored_count(), 1);
}
