#include <gtest/gtest.h>

#include "pebbling/families.hpp"
#include "pebbling/pebbling_number.hpp"

using namespace pebbling;

TEST(Families, ParseAndPrint) {
  auto s = parse_family("grid:2,1,1");
  EXPECT_EQ(s.name, Family::Grid);
  EXPECT_EQ(s.params, (std::vector<int>{2, 1, 1}));
  EXPECT_EQ(to_string(s), "grid:2,1,1");
  EXPECT_EQ(parse_family("petersen").params.size(), 0u);
  EXPECT_THROW(parse_family("moebius:3"), InvalidParameter);
  EXPECT_THROW(parse_family("cycle:x"), InvalidParameter);
  EXPECT_THROW(parse_family("cycle:"), InvalidParameter);
  EXPECT_THROW(parse_family("cycle:-3"), InvalidParameter);
}

TEST(Families, GeneratorsHaveExpectedShape) {
  EXPECT_EQ(generate(parse_family("kneser:5,2")).size(), 15);
  EXPECT_EQ(structure(generate(parse_family("kneser:5,2"))).girth, 5);
  EXPECT_EQ(generate(parse_family("hypercube:4")).size(), 32);
  EXPECT_EQ(generate(parse_family("grid:2,3")).order(), 12);
  EXPECT_EQ(generate(parse_family("wheel:6")).size(), 10);
  EXPECT_EQ(lemke_graph().order(), 8);
  EXPECT_EQ(foster_snevily_graph(1).order(), 12);
  EXPECT_EQ(wang_graph(1).size(), foster_snevily_graph(1).size() + 6);
  EXPECT_THROW(generate(parse_family("cycle:2")), InvalidParameter);
  EXPECT_THROW(generate(parse_family("kneser:4,2")), InvalidParameter);
  EXPECT_THROW(generate(parse_family("petersen:3")), InvalidParameter);
}

TEST(Families, Formulas) {
  EXPECT_EQ(*formula(parse_family("path:5")), 16);
  EXPECT_EQ(*formula(parse_family("cycle:6")), 8);
  EXPECT_EQ(*formula(parse_family("cycle:7")), 11);
  EXPECT_EQ(*formula(parse_family("cycle:5")), 5);
  EXPECT_EQ(*formula(parse_family("complete:9")), 9);
  EXPECT_EQ(*formula(parse_family("hypercube:5")), 32);
  EXPECT_EQ(*formula(parse_family("grid:2,3")), 32);
  EXPECT_EQ(*formula(parse_family("grid:1,2"), std::vector<int>{3, 5}), 75);
  EXPECT_FALSE(formula(parse_family("petersen")).has_value());
  EXPECT_THROW(formula(parse_family("cycle:7"), std::vector<int>{3}), InvalidParameter);
  EXPECT_THROW(formula(parse_family("grid:1,1"), std::vector<int>{3}), InvalidParameter);
  EXPECT_THROW(formula(parse_family("grid:1,1"), std::vector<int>{3, 1}), InvalidParameter);
}

TEST(FamiliesProperty, FormulaMatchesSolver) {
  const char* specs[] = {"path:1", "path:5", "cycle:3", "cycle:4", "cycle:7", "cycle:8",
                         "complete:6", "hypercube:2", "hypercube:3", "grid:1,2", "grid:2,2"};
  for (auto* text : specs) {
    auto s = parse_family(text);
    EXPECT_EQ(*formula(s), pebbling_number(generate(s))) << text;
  }
}

TEST(FamiliesProperty, GridCostsMatchSolver) {
  for (auto [d0, d1, p0, p1] : {std::array{1, 1, 3, 2}, std::array{2, 1, 2, 3}, std::array{1, 1, 3, 3}}) {
    FamilySpec s{Family::Grid, {d0, d1}};
    NumberOptions opt;
    opt.costs = grid_costs(s.params, {p0, p1});
    EXPECT_EQ(*formula(s, std::vector<int>{p0, p1}), pebbling_number_ex(generate(s), opt).value);
  }
}
