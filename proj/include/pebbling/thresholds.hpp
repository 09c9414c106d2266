#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "pebbling/error.hpp"
#include "pebbling/families.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/pebbling_number.hpp"
#include "pebbling/solver.hpp"

namespace pebbling {

struct TrialConfig {
  std::int64_t trials = 2000;
  std::uint64_t seed = 42;
  double confidence = 0.95;
  int jobs = 1;
};

struct CurveRow {
  std::int64_t n = 0;
  std::int64_t t = 0;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double phat = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  /// Trials whose solvability search ran out of budget.
  std::int64_t undecided = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent stream per (seed, n, t, trial) so results ignore scheduling.
inline std::uint64_t trial_seed(std::uint64_t seed, std::int64_t n, std::int64_t t, std::int64_t trial) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(n));
  h = splitmix64(h ^ static_cast<std::uint64_t>(t));
  return splitmix64(h ^ static_cast<std::uint64_t>(trial));
}

/// Uniform weak composition of t into n parts: a uniform choice of the
/// smaller of the star set and the bar set among t + n - 1 positions.
inline std::vector<std::int64_t> sample_composition(std::int64_t n, std::int64_t t, std::mt19937_64& rng) {
  if (n < 1 || t < 0) throw InvalidParameter("sampling needs n >= 1 and t >= 0");
  std::vector<std::int64_t> parts(n, 0);
  if (n == 1) {
    parts[0] = t;
    return parts;
  }
  const std::int64_t total = t + n - 1;
  const bool pick_stars = t <= n - 1;
  const std::int64_t k = pick_stars ? t : n - 1;
  // Floyd's algorithm for a uniform k-subset of [0, total)
  std::set<std::int64_t> chosen;
  for (std::int64_t j = total - k; j < total; ++j) {
    std::uniform_int_distribution<std::int64_t> pick(0, j);
    std::int64_t r = pick(rng);
    if (!chosen.insert(r).second) chosen.insert(j);
  }
  std::int64_t idx = 0;
  if (pick_stars) {
    for (std::int64_t s : chosen) ++parts[s - idx++];
  } else {
    std::int64_t prev = -1;
    for (std::int64_t b : chosen) {
      parts[idx++] = b - prev - 1;
      prev = b;
    }
    parts[idx] = total - 1 - prev;
  }
  return parts;
}

inline Distribution sample_distribution(int n, std::int64_t t, std::uint64_t seed) {
  if (t > (1LL << 30)) throw InvalidParameter("too many pebbles");
  std::mt19937_64 rng(seed);
  auto parts = sample_composition(n, t, rng);
  return Distribution(std::vector<int>(parts.begin(), parts.end()));
}

/// Wilson score interval for `successes` out of `trials`.
inline std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials, double confidence) {
  if (trials < 1) throw InvalidParameter("trials must be at least 1");
  if (!(confidence > 0 && confidence < 1)) throw InvalidParameter("confidence must lie in (0, 1)");
  const double z = boost::math::quantile(boost::math::normal(), 1 - (1 - confidence) / 2);
  const double n = static_cast<double>(trials);
  const double p = successes / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

/// Solvability for every root, given the per-vertex counts.
using SolvablePredicate = std::function<bool(const std::vector<std::int64_t>&)>;

namespace predicates {

inline bool clique(const std::vector<std::int64_t>& d) {
  std::int64_t mx = 0, mn = d.empty() ? 0 : d[0];
  for (auto c : d) {
    mx = std::max(mx, c);
    mn = std::min(mn, c);
  }
  return mx >= 2 || mn >= 1;
}

/// Vertex 0 is the centre.
inline bool star(const std::vector<std::int64_t>& d) {
  const std::int64_t centre = d[0];
  std::int64_t max_leaf = 0, halves = 0;
  bool empty_leaf = false;
  for (std::size_t i = 1; i < d.size(); ++i) {
    max_leaf = std::max(max_leaf, d[i]);
    halves += d[i] / 2;
    empty_leaf = empty_leaf || d[i] == 0;
  }
  if (centre < 1 && max_leaf < 2) return false;
  return !empty_leaf || centre + halves >= 2;
}

/// Vertices 0..n-1 in path order.
inline bool path(const std::vector<std::int64_t>& d) {
  const std::size_t n = d.size();
  std::vector<std::int64_t> left(n), right(n);
  for (std::size_t i = 0; i < n; ++i) left[i] = d[i] + (i ? left[i - 1] / 2 : 0);
  for (std::size_t i = n; i-- > 0;) right[i] = d[i] + (i + 1 < n ? right[i + 1] / 2 : 0);
  for (std::size_t r = 0; r < n; ++r) {
    if (d[r] >= 1) continue;
    if (r > 0 && left[r - 1] >= 2) continue;
    if (r + 1 < n && right[r + 1] >= 2) continue;
    return false;
  }
  return true;
}

/// Hub 0, rim 1..n-1 in cycle order. A pebble reaches an empty rim root r
/// through the hub (which can collect hub + sum floor(rim/2) but only passes
/// pairs on), or by carrying along the rim path r+1 .. r-1 toward either
/// neighbour of r.
inline bool wheel(const std::vector<std::int64_t>& d) {
  const std::int64_t n = static_cast<std::int64_t>(d.size());
  const std::int64_t m = n - 1;
  const std::int64_t hub = d[0];
  std::int64_t max_rim = 0, halves = 0;
  for (std::int64_t i = 1; i < n; ++i) {
    max_rim = std::max(max_rim, d[i]);
    halves += d[i] / 2;
  }
  if (hub < 1 && max_rim < 2) return false;
  if (hub + halves >= 2) return true;
  auto rim = [&](std::int64_t i) { return d[1 + ((i % m) + m) % m]; };
  std::vector<std::int64_t> seq(m - 1);
  for (std::int64_t r = 0; r < m; ++r) {
    if (rim(r) >= 1) continue;
    for (std::int64_t j = 0; j < m - 1; ++j) seq[j] = rim(r + 1 + j);
    // carry toward r+1 (from the far end) and toward r-1
    std::int64_t carry = 0;
    for (std::int64_t j = m - 2; j >= 0; --j) carry = seq[j] + carry / 2;
    if (carry >= 2) continue;
    carry = 0;
    for (std::int64_t j = 0; j < m - 1; ++j) carry = seq[j] + carry / 2;
    if (carry >= 2) continue;
    return false;
  }
  return true;
}

}  // namespace predicates

/// One Monte Carlo probe of P_G(n, t): the chance that a uniform size-t
/// distribution is solvable for every root.
inline CurveRow estimate_with(std::int64_t n, std::int64_t t, const TrialConfig& cfg,
                              const std::function<int(const std::vector<std::int64_t>&)>& decide) {
  if (cfg.trials < 1) throw InvalidParameter("trials must be at least 1");
  const int jobs = std::max(1, cfg.jobs);
  std::vector<std::int64_t> ok(jobs, 0), undecided(jobs, 0);
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](int w) {
    try {
      for (std::int64_t i = w; i < cfg.trials; i += jobs) {
        std::mt19937_64 rng(trial_seed(cfg.seed, n, t, i));
        int verdict = decide(sample_composition(n, t, rng));
        if (verdict > 0) ++ok[w];
        if (verdict < 0) ++undecided[w];
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    for (int w = 0; w < jobs; ++w) workers.emplace_back(work, w);
    for (auto& th : workers) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  CurveRow row;
  row.n = n;
  row.t = t;
  row.trials = cfg.trials;
  for (int w = 0; w < jobs; ++w) {
    row.successes += ok[w];
    row.undecided += undecided[w];
  }
  row.phat = static_cast<double>(row.successes) / static_cast<double>(row.trials);
  std::tie(row.ci_lo, row.ci_hi) = wilson_interval(row.successes, row.trials, cfg.confidence);
  return row;
}

inline CurveRow estimate(std::int64_t n, std::int64_t t, const TrialConfig& cfg, const SolvablePredicate& pred) {
  return estimate_with(n, t, cfg, [&](const std::vector<std::int64_t>& d) { return pred(d) ? 1 : 0; });
}

/// Probe with the generic exact solver; budget-limited trials are tallied
/// as undecided.
inline CurveRow estimate(const Graph& g, std::int64_t t, const TrialConfig& cfg, std::uint64_t budget = 0) {
  return estimate_with(g.order(), t, cfg, [&](const std::vector<std::int64_t>& parts) {
    Distribution d(std::vector<int>(parts.begin(), parts.end()));
    try {
      for (Vertex r = 0; r < g.order(); ++r) {
        Budget b{budget, 0};
        SolveOptions o;
        o.budget = budget ? &b : nullptr;
        if (!detail::RootedSearch(g, r, o).solve(d, nullptr)) return 0;
      }
      return 1;
    } catch (const ResourceLimit&) {
      return -1;
    }
  });
}

/// P_K(n, t) exactly: 1 - C(n, t) / C(t + n - 1, n - 1) for t < n, else 1.
inline double clique_probability(std::int64_t n, std::int64_t t) {
  if (t >= n) return 1;
  // ratio = prod_{i<t} (n - i) / (n + i)
  double ratio = 1;
  for (std::int64_t i = 0; i < t; ++i) ratio *= static_cast<double>(n - i) / static_cast<double>(n + i);
  return 1 - ratio;
}

/// Pool-adjacent-violators fit of a nondecreasing sequence.
inline std::vector<double> isotonic(const std::vector<double>& y, const std::vector<double>& w) {
  struct Block {
    double sum, weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < y.size(); ++i) {
    blocks.push_back({y[i] * w[i], w[i], 1});
    while (blocks.size() > 1 &&
           blocks[blocks.size() - 2].sum / blocks[blocks.size() - 2].weight > blocks.back().sum / blocks.back().weight) {
      auto b = blocks.back();
      blocks.pop_back();
      blocks.back().sum += b.sum;
      blocks.back().weight += b.weight;
      blocks.back().count += b.count;
    }
  }
  std::vector<double> out;
  for (auto& b : blocks) out.insert(out.end(), b.count, b.sum / b.weight);
  return out;
}

struct ScanPoint {
  std::int64_t n = 0;
  double t_half = 0;
  /// Some probe sits above a later probe's whole confidence interval.
  bool noisy = false;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  double exponent = 0;
  std::vector<CurveRow> rows;
};

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t k = x.size();
  if (k < 2) throw InvalidParameter("need at least two points to fit");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

/// Bisection on t with `coarse_trials` per probe, then a window of probes at
/// cfg.trials around the bracket, smoothed isotonically and interpolated at
/// the target probability.
inline ScanPoint locate_threshold(std::int64_t n, const std::function<CurveRow(std::int64_t, std::int64_t)>& probe,
                                  double target, std::int64_t coarse_trials, std::int64_t final_trials,
                                  std::vector<CurveRow>& rows) {
  auto at = [&](std::int64_t t, std::int64_t trials) {
    rows.push_back(probe(t, trials));
    return rows.back().phat;
  };
  std::int64_t lo = 0, hi = 1;
  while (at(hi, coarse_trials) < target) {
    lo = hi;
    if (hi > (1LL << 40)) throw ResourceLimit("threshold search diverged");
    hi *= 2;
  }
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    (at(mid, coarse_trials) < target ? lo : hi) = mid;
  }
  const std::int64_t step = std::max<std::int64_t>(1, hi / 40);
  std::vector<std::int64_t> ts;
  for (int j = -4; j <= 4; ++j) {
    std::int64_t t = hi + j * step;
    if (t >= 1 && (ts.empty() || t > ts.back())) ts.push_back(t);
  }
  std::vector<CurveRow> window;
  for (auto t : ts) {
    window.push_back(probe(t, final_trials));
    rows.push_back(window.back());
  }
  std::vector<double> y, w;
  for (auto& r : window) {
    y.push_back(r.phat);
    w.push_back(static_cast<double>(r.trials));
  }
  auto fit = isotonic(y, w);
  ScanPoint pt;
  pt.n = n;
  for (std::size_t i = 0; i < window.size(); ++i)
    for (std::size_t j = i + 1; j < window.size(); ++j)
      if (window[i].ci_lo > window[j].ci_hi) pt.noisy = true;
  pt.t_half = static_cast<double>(hi);
  for (std::size_t i = 0; i < fit.size(); ++i) {
    if (fit[i] < target) continue;
    if (i == 0) {
      pt.t_half = static_cast<double>(ts[0]);
    } else {
      double frac = (target - fit[i - 1]) / (fit[i] - fit[i - 1]);
      pt.t_half = static_cast<double>(ts[i - 1]) + frac * static_cast<double>(ts[i] - ts[i - 1]);
    }
    break;
  }
  return pt;
}

/// The predicate families usable at large n.
inline SolvablePredicate family_predicate(Family f) {
  switch (f) {
    case Family::Complete: return predicates::clique;
    case Family::Star: return predicates::star;
    case Family::Path: return predicates::path;
    case Family::Wheel: return predicates::wheel;
    default: return nullptr;
  }
}

/// Threshold scan over n for a family. Families without a linear-time
/// predicate (e.g. hypercube) fall back on the exact solver.
inline ScanResult threshold_scan(Family family, const std::vector<std::int64_t>& ns, const TrialConfig& cfg,
                                 double target = 0.5, std::int64_t coarse_trials = 400) {
  if (!(target > 0 && target < 1)) throw InvalidParameter("target must lie in (0, 1)");
  ScanResult res;
  SolvablePredicate pred = family_predicate(family);
  for (auto n : ns) {
    std::function<CurveRow(std::int64_t, std::int64_t)> probe;
    std::optional<Graph> g;
    if (pred) {
      probe = [&, n](std::int64_t t, std::int64_t trials) {
        TrialConfig c = cfg;
        c.trials = trials;
        return estimate(n, t, c, pred);
      };
    } else {
      g = generate(FamilySpec{family, {static_cast<int>(n)}});
      probe = [&, n](std::int64_t t, std::int64_t trials) {
        TrialConfig c = cfg;
        c.trials = trials;
        auto row = estimate(*g, t, c);
        row.n = n;
        return row;
      };
    }
    res.points.push_back(locate_threshold(n, probe, target, coarse_trials, cfg.trials, res.rows));
  }
  if (res.points.size() >= 2) {
    std::vector<double> x, y;
    for (auto& p : res.points) {
      x.push_back(static_cast<double>(p.n));
      y.push_back(p.t_half);
    }
    res.exponent = loglog_slope(x, y);
  }
  return res;
}

inline void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "n,t,trials,successes,phat,ci_lo,ci_hi\n";
  for (auto& r : rows) {
    out << r.n << ',' << r.t << ',' << r.trials << ',' << r.successes << ',' << std::fixed << std::setprecision(6)
        << r.phat << ',' << r.ci_lo << ',' << r.ci_hi << '\n';
    out.unsetf(std::ios::floatfield);
  }
}

inline void write_scan_csv(std::ostream& out, const std::vector<ScanPoint>& points) {
  out << "n,t_half\n";
  for (auto& p : points) {
    out << p.n << ',' << std::fixed << std::setprecision(4) << p.t_half << '\n';
    out.unsetf(std::ios::floatfield);
  }
}

}  // namespace pebbling
