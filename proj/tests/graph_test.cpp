#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "pebbling/families.hpp"
#include "pebbling/graph.hpp"

using namespace pebbling;

TEST(Graph, RejectsMalformedInput) {
  EXPECT_THROW(Graph(0, {}), InvalidParameter);
  EXPECT_THROW(Graph(2, {{0, 0}}), InvalidParameter);
  EXPECT_THROW(Graph(2, {{0, 2}}), InvalidParameter);
  EXPECT_THROW(Graph(2, {{0, 1}, {1, 0}}), InvalidParameter);
  EXPECT_THROW(Graph(3, {{0, 1}}), InvalidParameter);
  EXPECT_NO_THROW(Graph(1, {}));
}

TEST(Graph, NormalizesEdges) {
  Graph g(3, {{2, 1}, {1, 0}});
  ASSERT_EQ(g.size(), 2);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2}));
  EXPECT_TRUE(g.adjacent(2, 1));
  EXPECT_EQ(g.edge_id(2, 1), 1);
  EXPECT_EQ(g.edge_id(0, 2), -1);
  EXPECT_TRUE(g.is_tree());
}

TEST(Graph, Distances) {
  Graph c = cycle_graph(7);
  EXPECT_EQ(c.diameter(), 3);
  EXPECT_EQ(c.distances_from(0)[4], 3);
  EXPECT_EQ(path_graph(5).eccentricity(2), 2);
  EXPECT_EQ(complete_graph(4).diameter(), 1);
}

TEST(Graph, StructureOfKnownGraphs) {
  auto p = structure(petersen_graph());
  EXPECT_EQ(p.diameter, 2);
  EXPECT_EQ(p.girth, 5);
  EXPECT_EQ(p.vertex_connectivity, 3);
  EXPECT_TRUE(p.cut_vertices.empty());

  auto t = structure(path_graph(4));
  EXPECT_FALSE(t.girth.has_value());
  EXPECT_EQ(t.vertex_connectivity, 1);
  EXPECT_EQ(t.cut_vertices, (std::vector<Vertex>{1, 2}));

  EXPECT_EQ(structure(complete_graph(5)).vertex_connectivity, 4);
  EXPECT_EQ(structure(hypercube_graph(3)).girth, 4);
  EXPECT_EQ(structure(cycle_graph(6)).vertex_connectivity, 2);
}

TEST(Graph, CartesianProduct) {
  std::vector<int> factor;
  Graph g = cartesian_product(path_graph(2), cycle_graph(3), &factor);
  EXPECT_EQ(g.order(), 6);
  EXPECT_EQ(g.size(), 2 * 3 + 3 * 1);
  EXPECT_EQ(std::count(factor.begin(), factor.end(), 0), 3);
  EXPECT_EQ(std::count(factor.begin(), factor.end(), 1), 6);
  EXPECT_EQ(cartesian_product(path_graph(2), path_graph(2)).diameter(), 2);
}

TEST(Graph, ReadWriteRoundTrip) {
  Graph g = petersen_graph();
  std::ostringstream out;
  write_graph(out, g);
  EXPECT_EQ(parse_graph(out.str()), g);
  EXPECT_THROW(parse_graph("3 5\n0 1\n"), InvalidParameter);
  EXPECT_THROW(parse_graph("x"), InvalidParameter);
}

TEST(Graph, SampleFileParses) {
  std::ifstream in(std::string(PEBBLING_DATA_DIR) + "/lemke.graph");
  ASSERT_TRUE(in);
  Graph g = read_graph(in);
  EXPECT_EQ(g.order(), 8);
}

TEST(Graph, ConnectedGraphCounts) {
  // Unlabeled connected graphs on 1..5 vertices.
  const int expected[] = {1, 1, 2, 6, 21};
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(connected_graphs(n).size(), expected[n - 1]) << n;
}

TEST(GraphProperty, ConnectivityBoundedByMinimumDegree) {
  for (int n = 2; n <= 5; ++n)
    for (auto& g : connected_graphs(n)) {
      auto s = structure(g);
      int mindeg = n;
      for (Vertex v = 0; v < n; ++v) mindeg = std::min(mindeg, g.degree(v));
      EXPECT_LE(s.vertex_connectivity, mindeg);
      EXPECT_EQ(s.vertex_connectivity == 1, !s.cut_vertices.empty() || n == 2);
      if (s.girth) EXPECT_LE(*s.girth, 2 * s.diameter + 1);
    }
}
