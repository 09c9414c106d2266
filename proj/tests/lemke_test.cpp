#include <gtest/gtest.h>

#include <random>

#include "pebbling/lemke.hpp"

using namespace pebbling;
using namespace pebbling::lemke;

TEST(Lemke, Factorize) {
  auto f = factorize(360);
  EXPECT_EQ(f.primes, (std::vector<std::int64_t>{2, 3, 5}));
  EXPECT_EQ(f.exponents, (std::vector<int>{3, 2, 1}));
  EXPECT_TRUE(factorize(1).primes.empty());
  EXPECT_THROW(factorize(0), InvalidParameter);
}

TEST(Lemke, PigeonholeBlock) {
  EXPECT_EQ(pigeonhole_subset({2, 3, 4, 5}, 4), (std::vector<int>{2}));
  auto block = pigeonhole_subset({1, 1, 1}, 3);
  EXPECT_EQ(block, (std::vector<int>{0, 1, 2}));
  EXPECT_THROW(pigeonhole_subset({1, 2}, 3), InvalidParameter);
}

TEST(Lemke, InitialPlacement) {
  auto s = initial_placement({2, 3, 6, 1, 5, 4}, 6);
  EXPECT_EQ(s.pebble_count(), 6u);
  ASSERT_EQ(s.at({0, 1}).size(), 2u);
  EXPECT_EQ(s.at({0, 1})[0].indices, (std::vector<int>{0}));
  EXPECT_EQ(s.at({1, 0}).size(), 1u);
  EXPECT_EQ(s.at({0, 0}).size(), 1u);
  EXPECT_EQ(s.at({1, 1}).size(), 2u);
  for (auto& [u, ps] : s.cells())
    for (auto& b : ps) EXPECT_TRUE(s.well_placed(b));
  EXPECT_EQ(s.room({0, 1}), 2);
  EXPECT_EQ(s.room({1, 1}), 1);
}

TEST(Lemke, SelectAndStep) {
  auto s = initial_placement({1, 3}, 2);
  ASSERT_EQ(s.at({1}).size(), 2u);
  auto st = select_and_step(s, {1}, 0);
  EXPECT_EQ(st.merged, (std::vector<int>{0, 1}));
  ASSERT_EQ(s.at({0}).size(), 1u);
  EXPECT_EQ(s.at({0})[0].val, 4);
  EXPECT_EQ(s.at({0})[0].gcdsum, 2);
  EXPECT_EQ(format_step(st), "(1) --dim 1--> (0): merged {1,2}");
}

TEST(Lemke, SelectAndStepPreconditions) {
  auto s = initial_placement({1, 3, 5, 7}, 4);
  EXPECT_THROW(select_and_step(s, {0}, 0), PreconditionViolated);
  EXPECT_THROW(select_and_step(s, {2}, 1), PreconditionViolated);
  auto t = initial_placement({1, 2, 4, 4}, 4);
  EXPECT_THROW(select_and_step(t, {2}, 0), PreconditionViolated);
  EXPECT_EQ(t.pebble_count(), 4u);
}

TEST(Lemke, BruteForce) {
  EXPECT_EQ(*brute_force({3, 3}, 2), (std::vector<int>{0, 1}));
  EXPECT_EQ(*brute_force({2, 4}, 2), (std::vector<int>{0}));
  EXPECT_THROW(brute_force(std::vector<std::int64_t>(21, 1), 21), ResourceLimit);
}

TEST(Lemke, SolveExample) {
  auto sol = solve({3, 5, 7, 9}, 4, true);
  EXPECT_TRUE(verify({3, 5, 7, 9}, 4, sol.indices));
  EXPECT_EQ(sol.sum % 4, 0);
  EXPECT_LE(sol.gcd_sum, 4);
  EXPECT_FALSE(sol.certificate.empty());
}

TEST(Lemke, Verify) {
  EXPECT_TRUE(verify({2, 4}, 2, {0}));
  EXPECT_FALSE(verify({2, 4}, 2, {}));
  EXPECT_FALSE(verify({2, 4}, 2, {0, 0}));
  EXPECT_FALSE(verify({2, 4}, 2, {0, 1}));
  EXPECT_FALSE(verify({3, 3}, 2, {0}));
}

TEST(Lemke, Errors) {
  EXPECT_THROW(solve({1, 2}, 3), InvalidParameter);
  EXPECT_THROW(solve({}, 0), InvalidParameter);
}

TEST(LemkeProperty, RandomInstances) {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 600; ++iter) {
    const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 30);
    std::vector<std::int64_t> xs(q);
    for (auto& x : xs) x = 1 + static_cast<std::int64_t>(rng() % (iter % 2 ? 1000 : 3 * q));
    auto sol = solve(xs, q, true);
    ASSERT_TRUE(verify(xs, q, sol.indices)) << "q=" << q;
    EXPECT_TRUE(erdos_lemke_bound(xs, q, sol.indices));
    auto end = replay_certificate(xs, q, sol.certificate);
    bool at_origin = false;
    for (auto& b : end.at(Coords(end.dimensions(), 0)))
      if (b.indices == sol.indices) at_origin = true;
    EXPECT_TRUE(at_origin || q == 1);
    if (q <= 12) EXPECT_TRUE(brute_force(xs, q).has_value());
  }
}

TEST(LemkeProperty, StepRemovesExactlyPMinusOnePebbles) {
  std::mt19937_64 rng(9);
  int steps = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 15);
    std::vector<std::int64_t> xs(q);
    for (auto& x : xs) x = 1 + static_cast<std::int64_t>(rng() % 100);
    auto s = initial_placement(xs, q);
    std::optional<std::pair<Coords, int>> move;
    for (auto& [u, ps] : s.cells())
      for (int i = 0; i < s.dimensions() && !move; ++i)
        if (u[i] >= 1 && static_cast<std::int64_t>(ps.size()) >= s.prime(i)) move = {u, i};
    if (!move) continue;
    const auto before = s.pebble_count();
    select_and_step(s, move->first, move->second);
    EXPECT_EQ(s.pebble_count(), before - static_cast<std::size_t>(s.prime(move->second)) + 1);
    for (auto& [u, ps] : s.cells())
      for (auto& b : ps) EXPECT_TRUE(s.well_placed(b));
    ++steps;
  }
  EXPECT_GT(steps, 50);
}
