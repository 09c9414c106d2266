#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <sstream>

#include "pebbling/families.hpp"
#include "pebbling/thresholds.hpp"

using namespace pebbling;

TEST(Sampling, CompositionsAreWellFormed) {
  std::mt19937_64 rng(1);
  for (std::int64_t n : {1, 2, 5, 40})
    for (std::int64_t t : {0, 1, 3, 100}) {
      auto parts = sample_composition(n, t, rng);
      ASSERT_EQ(static_cast<std::int64_t>(parts.size()), n);
      EXPECT_EQ(std::accumulate(parts.begin(), parts.end(), std::int64_t{0}), t);
      for (auto p : parts) EXPECT_GE(p, 0);
    }
  EXPECT_THROW(sample_composition(0, 3, rng), InvalidParameter);
  EXPECT_THROW(sample_composition(3, -1, rng), InvalidParameter);
}

TEST(Sampling, UniformOverCompositions) {
  // 3 pebbles on 3 vertices: 10 compositions, each with probability 1/10.
  std::mt19937_64 rng(5);
  std::map<std::vector<std::int64_t>, int> seen;
  const int draws = 50000;
  for (int i = 0; i < draws; ++i) ++seen[sample_composition(3, 3, rng)];
  ASSERT_EQ(seen.size(), 10u);
  double chi2 = 0;
  for (auto& [c, k] : seen) chi2 += (k - draws / 10.0) * (k - draws / 10.0) / (draws / 10.0);
  // 9 degrees of freedom, 0.999 quantile is 27.88
  EXPECT_LT(chi2, 27.88);
}

TEST(Sampling, DeterministicPerSeed) {
  EXPECT_EQ(sample_distribution(10, 20, 99), sample_distribution(10, 20, 99));
  EXPECT_NE(trial_seed(1, 10, 5, 0), trial_seed(1, 10, 5, 1));
}

TEST(Wilson, Interval) {
  auto [lo, hi] = wilson_interval(50, 100, 0.95);
  EXPECT_NEAR(lo, 0.4038, 1e-3);
  EXPECT_NEAR(hi, 0.5962, 1e-3);
  auto [z0, z1] = wilson_interval(0, 10, 0.95);
  EXPECT_EQ(z0, 0.0);
  EXPECT_GT(z1, 0.0);
  EXPECT_THROW(wilson_interval(1, 0, 0.95), InvalidParameter);
  EXPECT_THROW(wilson_interval(1, 2, 1.0), InvalidParameter);
}

TEST(Predicates, AgreeWithSolver) {
  std::mt19937_64 rng(3);
  struct Case {
    Graph g;
    SolvablePredicate pred;
  };
  std::vector<Case> cases{{complete_graph(5), predicates::clique},
                          {star_graph(5), predicates::star},
                          {path_graph(5), predicates::path},
                          {wheel_graph(6), predicates::wheel}};
  for (auto& c : cases)
    for (int iter = 0; iter < 200; ++iter) {
      std::int64_t t = 1 + static_cast<std::int64_t>(rng() % 20);
      auto parts = sample_composition(c.g.order(), t, rng);
      Distribution d(std::vector<int>(parts.begin(), parts.end()));
      bool exact = true;
      for (Vertex r = 0; r < c.g.order(); ++r) exact = exact && solvable(c.g, d, r).solvable;
      EXPECT_EQ(c.pred(parts), exact) << d.to_string();
    }
}

TEST(Estimate, CliqueMatchesClosedForm) {
  TrialConfig cfg;
  cfg.trials = 4000;
  for (std::int64_t t : {3, 5, 8}) {
    auto row = estimate(16, t, cfg, predicates::clique);
    double p = clique_probability(16, t);
    EXPECT_LE(row.ci_lo - 0.02, p);
    EXPECT_GE(row.ci_hi + 0.02, p);
  }
  EXPECT_EQ(clique_probability(4, 4), 1.0);
}

TEST(Estimate, IndependentOfJobs) {
  TrialConfig one, four;
  one.trials = four.trials = 500;
  four.jobs = 4;
  EXPECT_EQ(estimate(64, 9, one, predicates::star).successes, estimate(64, 9, four, predicates::star).successes);
  EXPECT_EQ(estimate(cycle_graph(6), 6, one).successes, estimate(cycle_graph(6), 6, four).successes);
}

TEST(Isotonic, PoolsViolators) {
  auto fit = isotonic({0.1, 0.5, 0.3, 0.9}, {1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(fit[1], 0.4);
  EXPECT_DOUBLE_EQ(fit[2], 0.4);
  EXPECT_TRUE(std::is_sorted(fit.begin(), fit.end()));
}

TEST(Scan, CliqueExponentNearOneHalf) {
  TrialConfig cfg;
  cfg.trials = 1000;
  auto res = threshold_scan(Family::Complete, {16, 64, 256}, cfg);
  ASSERT_EQ(res.points.size(), 3u);
  EXPECT_NEAR(res.exponent, 0.5, 0.12);
  std::ostringstream csv;
  write_scan_csv(csv, res.points);
  EXPECT_EQ(csv.str().rfind("n,t_half\n", 0), 0u);
  EXPECT_THROW(threshold_scan(Family::Complete, {16}, cfg, 1.5), InvalidParameter);
}

TEST(Scan, LogLogSlope) {
  EXPECT_NEAR(loglog_slope({1, 10, 100}, {2, 20, 200}), 1.0, 1e-12);
  EXPECT_NEAR(loglog_slope({4, 16, 64}, {2, 4, 8}), 0.5, 1e-12);
}
