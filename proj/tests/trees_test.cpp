#include <gtest/gtest.h>

#include "pebbling/families.hpp"
#include "pebbling/pebbling_number.hpp"
#include "pebbling/trees.hpp"

using namespace pebbling;

namespace {

// Spider with legs of 3, 2 and 1 edges around centre 0.
Graph spider() { return Graph(7, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 5}, {0, 6}}); }

}  // namespace

TEST(Trees, PathPartitionsOfSpider) {
  Graph t = spider();
  EXPECT_EQ(max_rooted_path_partition(t, 0).lengths(), (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(max_path_partition(t).lengths(), (std::vector<int>{5, 1}));
  EXPECT_EQ(tree_formula(t), 32 + 2 - 1);
  EXPECT_EQ(tree_formula(t, 0), 8 + 4 + 2 - 2);
  EXPECT_EQ(tree_formula(t, 0, 3), 24 + 4 + 2 - 2);
}

TEST(Trees, PartitionCoversEveryEdgeOnce) {
  Graph t = spider();
  auto p = max_path_partition(t, 3);
  int edges = 0;
  for (auto& path : p.paths) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) EXPECT_TRUE(t.adjacent(path[i], path[i + 1]));
    edges += static_cast<int>(path.size()) - 1;
  }
  EXPECT_EQ(edges, t.size());
}

TEST(Trees, Majorization) {
  EXPECT_TRUE(majorizes({3, 1}, {2, 2}));
  EXPECT_FALSE(majorizes({2, 2}, {3, 1}));
  EXPECT_TRUE(majorizes({2, 2, 1}, {2, 2}));
}

TEST(Trees, Errors) {
  EXPECT_THROW(max_path_partition(cycle_graph(4)), NotATree);
  EXPECT_THROW(tree_formula(cycle_graph(4)), InvalidParameter);
  EXPECT_THROW(tree_formula(spider(), std::nullopt, 2), InvalidParameter);
  EXPECT_THROW(tree_formula(spider(), 0, 0), InvalidParameter);
  EXPECT_THROW(max_rooted_path_partition(spider(), 9), InvalidParameter);
  EXPECT_THROW(all_trees(11), InvalidParameter);
}

TEST(Trees, IsomorphismClasses) {
  const std::size_t expected[] = {1, 1, 1, 2, 3, 6, 11, 23};
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(all_trees(n).size(), expected[n - 1]) << n;
  EXPECT_EQ(tree_code(path_graph(4)), tree_code(Graph(4, {{1, 0}, {0, 3}, {3, 2}})));
  EXPECT_NE(tree_code(path_graph(4)), tree_code(star_graph(4)));
  EXPECT_EQ(tree_from_prufer({3, 3}).degree(3), 3);
}

TEST(TreesProperty, MaximumPartitionMajorizesAll) {
  for (int n = 2; n <= 8; ++n)
    for (auto& t : all_trees(n)) {
      auto best = max_path_partition(t).lengths();
      for (auto& q : all_partition_lengths(t)) EXPECT_FALSE(majorizes(q, best));
      for (Vertex r = 0; r < t.order(); ++r) {
        auto rbest = max_rooted_path_partition(t, r).lengths();
        for (auto& q : all_rooted_partition_lengths(t, r)) EXPECT_FALSE(majorizes(q, rbest));
      }
    }
}

TEST(TreesProperty, FormulaMatchesSolver) {
  for (int n = 1; n <= 7; ++n)
    for (auto& t : all_trees(n)) {
      EXPECT_EQ(tree_formula(t), pebbling_number(t));
      for (Vertex r = 0; r < t.order(); ++r)
        for (int k = 1; k <= 2; ++k) EXPECT_EQ(tree_formula(t, r, k), pebbling_number(t, r, k));
    }
}

TEST(TreesProperty, RecursionAgreesWithFormula) {
  auto f = [](const Graph& t, Vertex r, int k) { return tree_formula(t, r, k); };
  for (int n = 2; n <= 7; ++n)
    for (auto& t : all_trees(n))
      for (Vertex r = 0; r < t.order(); ++r)
        for (int k = 1; k <= 3; ++k) EXPECT_EQ(rooted_recursion(t, r, k, f), tree_formula(t, r, k));
}
