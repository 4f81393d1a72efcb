#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace symmap;

namespace {

CouplingGraph grid_graph(std::size_t w, std::size_t h) { return grid(w, h).graph(); }

Vertex at(const CouplingGraph& g, std::int64_t x, std::int64_t y) { return *g.vertex_at({x, y}); }

}  // namespace

TEST(CouplingGraph, RejectsBadEdges) {
    EXPECT_THROW(CouplingGraph(2, {{0, 2}}), invalid_input);
    EXPECT_THROW(CouplingGraph(2, {{1, 1}}), invalid_input);
    EXPECT_THROW(CouplingGraph(2, {{0, 1}, {1, 0}}), invalid_input);
    EXPECT_THROW(CouplingGraph(2, {}, std::vector<Coord>{{0, 0}, {0, 0}}), invalid_input);
    EXPECT_THROW(CouplingGraph(2, {}, std::vector<Coord>{{0, 0}}), invalid_input);
}

TEST(CouplingGraph, NormalizesEdgeOrder) {
    const CouplingGraph g(3, {{2, 1}, {1, 0}});
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
    EXPECT_TRUE(g.has_edge(2, 1));
    EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(Degree, Examples) {
    const auto g2 = grid_graph(2, 2);
    for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(degree(g2, v), 2U);
    EXPECT_EQ(degree(CouplingGraph(1, {}), 0), 0U);
    const auto g3 = grid_graph(3, 3);
    EXPECT_EQ(degree(g3, at(g3, 1, 1)), 4U);
    EXPECT_THROW((void)degree(g3, 9), invalid_input);
}

TEST(Distance, Examples) {
    const auto g = grid_graph(3, 3);
    EXPECT_EQ(distance(g, at(g, 0, 0), at(g, 2, 2)), 4U);
    for (Vertex v = 0; v < g.order(); ++v) EXPECT_EQ(distance(g, v, v), 0U);
    const CouplingGraph two(4, {{0, 1}, {2, 3}});
    EXPECT_EQ(distance(two, 0, 3), infinite_distance);
    EXPECT_THROW((void)distance(g, 0, 99), invalid_input);
}

TEST(Eccentricity, Examples) {
    const auto g = grid_graph(3, 3);
    EXPECT_EQ(eccentricity(g, at(g, 1, 1)), 2U);
    EXPECT_EQ(eccentricity(g, at(g, 0, 0)), 4U);
    const auto ring = octagonal(1, 1).graph();
    for (Vertex v = 0; v < 8; ++v) EXPECT_EQ(eccentricity(ring, v), 4U);
    EXPECT_EQ(eccentricity(CouplingGraph(4, {{0, 1}, {2, 3}}), 0), infinite_distance);
    EXPECT_THROW((void)eccentricity(g, 9), invalid_input);
}

TEST(Radius, Examples) {
    const auto g = grid_graph(3, 3);
    const Radius r = radius(g);
    EXPECT_EQ(r.value, 2U);
    EXPECT_EQ(r.center, at(g, 1, 1));
    const Radius e = radius(CouplingGraph(2, {{0, 1}}));
    EXPECT_EQ(e.value, 1U);
    EXPECT_EQ(e.center, 0U);
    const Radius s = radius(oracle::star(4));
    EXPECT_EQ(s.value, 1U);
    EXPECT_EQ(s.center, 0U);
    EXPECT_THROW((void)radius(CouplingGraph(0, {})), invalid_input);
    EXPECT_THROW((void)radius(CouplingGraph(4, {{0, 1}, {2, 3}})), invalid_input);
}

TEST(Neighborhood, Examples) {
    const auto g3 = grid_graph(3, 3);
    const Vertex c = at(g3, 1, 1);
    EXPECT_EQ(neighborhood(g3, VertexSet{c}, 1).size(), 5U);
    const VertexSet s{0, 5, 7};
    EXPECT_EQ(neighborhood(g3, s, 0), s);
    const auto g5 = grid_graph(5, 5);
    const VertexSet expect{at(g5, 0, 0), at(g5, 1, 0), at(g5, 0, 1), at(g5, 2, 0), at(g5, 1, 1), at(g5, 0, 2)};
    EXPECT_EQ(neighborhood(g5, VertexSet{at(g5, 0, 0)}, 2), expect);
    EXPECT_THROW((void)neighborhood(g3, VertexSet{42}, 1), invalid_input);
}

TEST(InducedSubgraph, Examples) {
    const auto g2 = grid_graph(2, 2);
    EXPECT_EQ(induced_subgraph(g2, VertexSet{0, 1, 2, 3}), g2);
    const auto pair = induced_subgraph(g2, VertexSet{0, 1});
    EXPECT_EQ(pair.order(), 2U);
    EXPECT_EQ(pair.size(), 1U);
    const auto g3 = grid_graph(3, 3);
    const auto corners =
        induced_subgraph(g3, VertexSet{at(g3, 0, 0), at(g3, 2, 0), at(g3, 0, 2), at(g3, 2, 2)});
    EXPECT_EQ(corners.order(), 4U);
    EXPECT_EQ(corners.size(), 0U);
    ASSERT_TRUE(corners.has_coords());
    EXPECT_EQ(corners.coord(3), (Coord{2, 2}));
    EXPECT_THROW((void)induced_subgraph(g3, VertexSet{9}), invalid_input);
}

TEST(IsConnected, Examples) {
    EXPECT_TRUE(is_connected(grid_graph(7, 7)));
    EXPECT_FALSE(is_connected(CouplingGraph(4, {{0, 1}, {2, 3}})));
    EXPECT_TRUE(is_connected(CouplingGraph(1, {})));
    EXPECT_TRUE(is_connected(CouplingGraph(0, {})));
}

TEST(GraphProperties, DistanceMatchesFloydAndIsAMetric) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5 + trial % 25;
        const auto g = oracle::random_connected(n, trial % 6, rng);
        const auto d = oracle::all_pairs(g);
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = 0; v < n; ++v) {
                ASSERT_EQ(distance(g, u, v), d[u][v]);
                EXPECT_EQ(distance(g, u, v), distance(g, v, u));
                EXPECT_EQ(distance(g, u, v) == 0, u == v);
                for (Vertex w = 0; w < n; ++w) EXPECT_LE(d[u][w], d[u][v] + d[v][w]);
            }
        }
    }
}

TEST(GraphProperties, RadiusIsMinimumEccentricity) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = oracle::random_connected(3 + trial % 20, trial % 5, rng);
        const Radius r = radius(g);
        EXPECT_EQ(eccentricity(g, r.center), r.value);
        for (Vertex v = 0; v < g.order(); ++v) {
            EXPECT_GE(eccentricity(g, v), r.value);
            if (v < r.center) {
                EXPECT_GT(eccentricity(g, v), r.value);
            }
        }
    }
}

TEST(GraphProperties, NeighborhoodMonotoneAndIterated) {
    std::mt19937_64 rng(13);
    const auto g = grid_graph(9, 6);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vertex> seed;
        for (int i = 0; i < 1 + trial % 3; ++i) {
            seed.push_back(std::uniform_int_distribution<Vertex>(0, static_cast<Vertex>(g.order() - 1))(rng));
        }
        const VertexSet s(seed);
        VertexSet iterated = s;
        for (Distance k = 0; k < 5; ++k) {
            const VertexSet nk = neighborhood(g, s, k);
            const VertexSet next = neighborhood(g, s, k + 1);
            EXPECT_EQ(nk, iterated);
            for (Vertex v : nk) EXPECT_TRUE(next.contains(v));
            iterated = neighborhood(g, iterated, 1);
        }
    }
}
