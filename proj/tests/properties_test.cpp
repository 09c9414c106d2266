#include <gtest/gtest.h>

#include "pebbling/families.hpp"
#include "pebbling/fixtures.hpp"
#include "pebbling/properties.hpp"

using namespace pebbling;

TEST(TwoPebbling, KnownGraphs) {
  for (Graph g : {path_graph(4), cycle_graph(5), cycle_graph(6), complete_graph(4), star_graph(5), petersen_graph()}) {
    auto rep = two_pebbling(g);
    EXPECT_TRUE(rep.holds);
    EXPECT_TRUE(rep.pebbling_number.has_value());
  }
}

TEST(TwoPebbling, LemkeGraphFails) {
  auto rep = two_pebbling(lemke_graph());
  ASSERT_FALSE(rep.holds);
  ASSERT_TRUE(rep.witness && rep.root);
  const auto& d = *rep.witness;
  EXPECT_GT(d.size(), 2 * *rep.pebbling_number - d.support());
  SolveOptions opt;
  opt.k = 2;
  EXPECT_FALSE(solvable(lemke_graph(), d, *rep.root, opt).solvable);
}

TEST(Class0, SufficientConditions) {
  auto k = class0(complete_graph(6));
  EXPECT_TRUE(k.holds);
  EXPECT_EQ(k.method, Method::SufficientCondition);
  EXPECT_TRUE(class0(petersen_graph()).holds);

  auto p = class0(path_graph(4));
  EXPECT_FALSE(p.holds);
  EXPECT_EQ(p.method, Method::SufficientCondition);
  ASSERT_TRUE(p.witness && p.root);
  EXPECT_EQ(p.witness->size(), 4);
  EXPECT_FALSE(solvable(path_graph(4), *p.witness, *p.root).solvable);
}

TEST(Class0, ExactFallback) {
  // Girth 5 exceeds 2 log2 5, yet C_5 is Class 0.
  auto c = class0(cycle_graph(5));
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.method, Method::Exact);
  EXPECT_EQ(c.pebbling_number, 5);

  Graph h = fixtures::diameter_two_class1_graph();
  auto rep = class0(h);
  EXPECT_FALSE(rep.holds);
  EXPECT_EQ(rep.method, Method::Exact);
  EXPECT_EQ(rep.pebbling_number, 7);
}

TEST(Class0, GirthFastPath) {
  auto c = class0(cycle_graph(7));
  EXPECT_FALSE(c.holds);
  EXPECT_EQ(c.method, Method::SufficientCondition);
  EXPECT_FALSE(c.pebbling_number.has_value());
  EXPECT_GT(pebbling_number(cycle_graph(7)), 7);
}

TEST(Graham, Products) {
  auto rep = graham_check(path_graph(2), path_graph(3));
  EXPECT_EQ(rep.lhs, 8);
  EXPECT_EQ(rep.rhs, 8);
  EXPECT_TRUE(rep.holds);

  auto c = graham_check(cycle_graph(5), path_graph(2));
  EXPECT_EQ(c.rhs, 10);
  EXPECT_TRUE(c.holds);

  auto w = graham_check(path_graph(2), path_graph(2), 3, 2);
  EXPECT_EQ(w.lhs, 6);
  EXPECT_EQ(w.rhs, 6);
}

TEST(GenProd, JoinAndPremises) {
  Graph h = join_graphs(path_graph(2), path_graph(2), {{0, 0}, {1, 1}});
  EXPECT_EQ(h.order(), 4);
  EXPECT_EQ(h.size(), 4);
  EXPECT_THROW(join_graphs(path_graph(2), path_graph(2), {{0, 5}}), InvalidParameter);

  auto rep = genprod_check(path_graph(2), path_graph(2), {{0, 0}, {1, 1}});
  EXPECT_EQ(rep.f_h, 4);
  EXPECT_EQ(rep.bound, 4);
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rep.premises);
  ASSERT_TRUE(rep.twopp);
  EXPECT_TRUE(*rep.twopp);

  auto partial = genprod_check(path_graph(3), path_graph(2), {{0, 0}});
  EXPECT_FALSE(partial.premises);
}

TEST(PropertiesProperty, Class0AgreesWithExactNumber) {
  for (int n = 1; n <= 5; ++n)
    for (auto& g : connected_graphs(n)) {
      auto rep = class0(g);
      EXPECT_EQ(rep.holds, pebbling_number(g) == n);
      if (rep.witness) EXPECT_FALSE(solvable(g, *rep.witness, *rep.root).solvable);
    }
}

TEST(PropertiesProperty, ParallelTwoPebblingMatchesSerial) {
  for (auto& g : connected_graphs(5)) {
    auto a = two_pebbling(g, 1), b = two_pebbling(g, 3);
    EXPECT_EQ(a.holds, b.holds);
    EXPECT_EQ(a.witness, b.witness);
  }
}
