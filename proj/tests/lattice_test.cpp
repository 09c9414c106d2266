#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "pebbling/lattice.hpp"

using namespace pebbling;
using namespace pebbling::lattice;

TEST(Counts, SmallValues) {
  EXPECT_EQ(bin(6, 2), 15);
  EXPECT_EQ(bin(3, 5), 0);
  EXPECT_EQ(mul(3, 2), 6);
  EXPECT_EQ(bmul(4, 4, 3), 31);
  EXPECT_EQ(bmul(5, 3, 1), bin(5, 3));
  EXPECT_EQ(bmul(3, 4, 9), mul(3, 4));
  EXPECT_NEAR(static_cast<double>(bmul_real(4.0L, 4, 3)), 31.0, 1e-9);
  EXPECT_NEAR(static_cast<double>(bmul_real(4.5L, 2, 1)), 4.5 * 3.5 / 2, 1e-12);
}

TEST(Multiset, KeysAndPrinting) {
  BoundedMultiset m({2, 0, 1, 0}, 2);
  EXPECT_EQ(m.mult, (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(m.weight(), 3);
  EXPECT_EQ(m.key(), 2u + 9u);
  EXPECT_EQ(BoundedMultiset::from_key(m.key(), 2), m);
  EXPECT_EQ(m.to_string(), "{1,1,3}");
  EXPECT_THROW(BoundedMultiset({3}, 2), InvalidParameter);
  EXPECT_THROW(BoundedMultiset({1}, 0), InvalidParameter);
}

TEST(Colex, OrderOfSmallLevel) {
  const char* expected[] = {"{1,1,2}", "{1,2,2}", "{1,1,3}", "{1,2,3}", "{2,2,3}", "{1,3,3}"};
  for (int i = 0; i < 6; ++i) {
    auto m = colex_unrank(i, 3, 2);
    EXPECT_EQ(m.to_string(), expected[i]);
    EXPECT_EQ(colex_rank(m), i);
  }
}

TEST(Colex, SegmentSizes) {
  EXPECT_EQ(col({0, 1, 1}, 2), 5);
  EXPECT_EQ(col({0, 0, 2, 1}, 2), 13);
  EXPECT_EQ(decompose(13, 3, 2), (std::vector<int>{0, 0, 2, 1}));
  EXPECT_EQ(shadow_vector({0, 0, 2, 1}), (std::vector<int>{0, 0, 1, 1}));
  EXPECT_THROW(decompose(0, 3, 2), InvalidParameter);
  EXPECT_THROW(shadow_vector({0, 0}), InvalidParameter);
}

TEST(Colex, LiteralSumUndercounts) {
  // The displayed double sum drops the block that first differs from v at the
  // smallest occupied position.
  EXPECT_EQ(col_literal({0, 1, 1}, 2), 3);
  EXPECT_EQ(col_literal({0, 0, 2, 1}, 2), 7);
  EXPECT_EQ(col_literal({2, 1}, 2), 0);
  EXPECT_LT(col_literal({1, 1, 1}, 2), col({1, 1, 1}, 2));
}

TEST(Families, BuildAndShadow) {
  auto f = family_from_ranks({0, 1, 2}, 2, 1);
  EXPECT_EQ(f.size(), 3u);
  auto sh = shadow(f);
  EXPECT_EQ(sh.size(), 3u);
  EXPECT_EQ(sh.w, 1);
  EXPECT_EQ(shadow(BoundedMultiset({2, 1}, 2)).size(), 2u);
  EXPECT_THROW(make_family({BoundedMultiset({1, 1}, 1), BoundedMultiset({1, 1}, 1)}, 2, 1), InvalidParameter);
  EXPECT_THROW(make_family({BoundedMultiset({1}, 1)}, 2, 1), InvalidParameter);
  EXPECT_EQ(level(4, 2, 2).size(), static_cast<std::size_t>(to_int64(bmul(4, 2, 2))));
}

TEST(Families, SampleRankFile) {
  std::ifstream in(std::string(PEBBLING_DATA_DIR) + "/family_ranks.txt");
  ASSERT_TRUE(in);
  std::vector<std::int64_t> ranks;
  for (std::int64_t r; in >> r;) ranks.push_back(r);
  auto f = family_from_ranks(ranks, 3, 2);
  EXPECT_EQ(f.size(), ranks.size());
  EXPECT_TRUE(cl_check(f).holds);
}

TEST(ClementsLindstrom, ColexIsOptimalOnSmallLevels) {
  for (auto [n, w, b] : {std::array{4, 2, 2}, std::array{3, 3, 2}, std::array{5, 2, 1}, std::array{3, 2, 3}}) {
    auto best = min_shadow_by_size(n, w, b);
    for (std::size_t f = 1; f < best.size(); ++f) {
      auto rep = cl_check(first_f(static_cast<std::int64_t>(f), w, b));
      EXPECT_EQ(rep.shad_actual, best[f]) << n << ' ' << w << ' ' << b << ' ' << f;
      EXPECT_EQ(rep.shad_bound, best[f]);
    }
  }
}

TEST(Lovasz, SetsMeetTheBound) {
  auto rep = lovasz_check(first_f(4, 2, 1));
  EXPECT_NEAR(static_cast<double>(rep.x), (1 + std::sqrt(33.0)) / 2, 1e-9);
  EXPECT_EQ(rep.shad, 4);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(solve_x(10, 2, 1), 5.0L);
  EXPECT_THROW(lovasz_check(first_f(1, 2, 2)), InvalidParameter);
  EXPECT_THROW(genlov_check(first_f(1, 2, 1)), InvalidParameter);
  EXPECT_THROW(solve_x(0, 2, 1), InvalidParameter);
}

TEST(GenLov, SmallestCounterexample) {
  // One multiset {1,1,2} with b = 2: x solves x(x-1)(x+4)/6 = 1 and the real
  // bound exceeds the actual shadow of 2.
  auto rep = genlov_check(first_f(1, 3, 2));
  EXPECT_NEAR(static_cast<double>(rep.x), 1.6458, 1e-4);
  EXPECT_EQ(rep.shad, 2);
  EXPECT_GT(rep.bound, 2.17L);
  EXPECT_FALSE(rep.holds);
  EXPECT_FALSE(rep.in_domain);
}

TEST(GenLov, SweepFindsOnlyOutOfDomainFailures) {
  auto sweep = genlov_segments(4, 3, 4);
  EXPECT_GT(sweep.checked, 0);
  EXPECT_EQ(sweep.failures, (std::vector<std::pair<int, std::int64_t>>{{4, 1}, {4, 2}}));
  for (auto [w, f] : sweep.failures) EXPECT_FALSE(genlov_check(first_f(f, w, 3)).in_domain);
}

TEST(Supernormal, GapValues) {
  EXPECT_EQ(supernormal_gap(3, 2, 2), cpp_rational(1, 18));
  for (int n = 3; n <= 6; ++n)
    for (int b = 2; b <= 3; ++b)
      for (int s = 2; s < n; ++s) EXPECT_EQ(supernormal_gap(n, b, s), supernormal_gap_explicit(n, b, s));
  EXPECT_THROW(supernormal_gap(3, 1, 2), InvalidParameter);
  EXPECT_THROW(supernormal_gap(3, 2, 3), InvalidParameter);
}

TEST(Normal, MatchingBetweenLevels) {
  EXPECT_TRUE(normal_check(3, 2, 1, 2));
  EXPECT_TRUE(normal_check(4, 2, 2, 5));
  EXPECT_TRUE(normal_check(4, 1, 1, 3));
  EXPECT_THROW(normal_check(3, 2, 2, 2), InvalidParameter);
  EXPECT_THROW(normal_check(12, 3, 10, 18, 100), ResourceLimit);
}

TEST(LatticeProperty, RankUnrankRoundTrip) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 500; ++iter) {
    const int b = 1 + static_cast<int>(rng() % 4);
    const int w = 1 + static_cast<int>(rng() % 6);
    const std::int64_t total = to_int64(bmul(8, w, b));
    const std::int64_t r = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(total));
    auto m = colex_unrank(r, w, b);
    EXPECT_EQ(m.weight(), w);
    EXPECT_EQ(colex_rank(m), r);
    EXPECT_EQ(col(m.mult, b), r + 1);
  }
}

TEST(LatticeProperty, ShadowOfSegmentIsSegment) {
  for (int b = 1; b <= 3; ++b)
    for (int w = 2; w <= 4; ++w) {
      const std::int64_t total = to_int64(bmul(5, w, b));
      for (std::int64_t f = 1; f <= total; ++f) {
        auto seg = first_f(f, w, b);
        auto sh = shadow(seg);
        EXPECT_EQ(sh.keys, first_f(static_cast<std::int64_t>(sh.size()), w - 1, b).keys);
        EXPECT_EQ(static_cast<std::int64_t>(sh.size()), to_int64(col(shadow_vector(decompose(f, w, b)), b)));
      }
    }
}

TEST(LatticeProperty, RandomFamiliesNeverBeatColex) {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 300; ++iter) {
    const int b = 1 + static_cast<int>(rng() % 3);
    const int w = 2 + static_cast<int>(rng() % 3);
    const std::int64_t total = to_int64(bmul(5, w, b));
    std::vector<std::int64_t> ranks;
    for (std::int64_t r = 0; r < total; ++r)
      if (rng() % 3 == 0) ranks.push_back(r);
    if (ranks.empty()) continue;
    EXPECT_TRUE(cl_check(family_from_ranks(ranks, w, b)).holds);
  }
}

TEST(LatticeProperty, LovaszHoldsForSets) {
  for (int w = 1; w <= 4; ++w) {
    const std::int64_t total = to_int64(bin(8, w));
    for (std::int64_t f = 1; f <= total; ++f) EXPECT_TRUE(lovasz_check(first_f(f, w, 1)).holds) << w << ' ' << f;
  }
}
