#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pebbling/pebbling.hpp"

// Runs every acceptance criterion and collects the CSV artifacts they produce.
namespace pebbling::repro {

struct Options {
  std::uint64_t seed = 42;
  int jobs = 1;
  /// Full f = 18 verification for the path-star product.
  bool heavy = false;
};

struct Outcome {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

using Artifacts = std::map<std::string, std::string>;

struct NumberRow {
  std::string graph;
  std::int64_t expected = 0;
  std::int64_t computed = 0;
};

inline std::vector<NumberRow> exact_numbers(int jobs) {
  std::vector<std::pair<std::string, Graph>> graphs;
  std::vector<std::int64_t> expected;
  for (int n = 2; n <= 7; ++n) {
    graphs.push_back({"complete:" + std::to_string(n), complete_graph(n)});
    expected.push_back(n);
  }
  for (int v = 2; v <= 6; ++v) {
    graphs.push_back({"path:" + std::to_string(v), path_graph(v)});
    expected.push_back(std::int64_t{1} << (v - 1));
  }
  for (int n = 3; n <= 9; ++n) {
    FamilySpec s{Family::Cycle, {n}};
    graphs.push_back({to_string(s), generate(s)});
    expected.push_back(static_cast<std::int64_t>(*formula(s)));
  }
  graphs.push_back({"hypercube:3", hypercube_graph(3)});
  expected.push_back(8);
  graphs.push_back({"petersen", petersen_graph()});
  expected.push_back(10);
  graphs.push_back({"lemke", lemke_graph()});
  expected.push_back(8);

  std::vector<NumberRow> rows;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    NumberOptions o;
    o.jobs = jobs;
    rows.push_back({graphs[i].first, expected[i], pebbling_number_ex(graphs[i].second, o).value});
  }
  return rows;
}

inline std::string numbers_csv(const std::vector<NumberRow>& rows) {
  std::ostringstream out;
  out << "graph,expected,computed\n";
  for (auto& r : rows) out << r.graph << ',' << r.expected << ',' << r.computed << '\n';
  return out.str();
}

struct LemkeRow {
  std::int64_t q = 0;
  std::vector<std::int64_t> xs;
  lemke::Solution solution;
  bool verified = false;
  bool erdos_lemke = false;
  /// Only checked for q <= 12.
  std::optional<bool> brute_force_found;
  std::optional<bool> replayed;
  std::string error;
};

inline std::vector<LemkeRow> lemke_instances(std::uint64_t seed, int count = 500) {
  std::mt19937_64 rng(seed);
  std::vector<LemkeRow> rows;
  for (int i = 0; i < count; ++i) {
    LemkeRow row;
    row.q = 2 + static_cast<std::int64_t>(rng() % 59);
    for (std::int64_t j = 0; j < row.q; ++j) row.xs.push_back(1 + static_cast<std::int64_t>(rng() % 1'000'000));
    try {
      row.solution = lemke::solve(row.xs, row.q, true);
      row.verified = lemke::verify(row.xs, row.q, row.solution.indices);
      row.erdos_lemke = lemke::erdos_lemke_bound(row.xs, row.q, row.solution.indices);
      if (row.q <= 12) {
        row.brute_force_found = lemke::brute_force(row.xs, row.q).has_value();
        auto end = lemke::replay_certificate(row.xs, row.q, row.solution.certificate);
        lemke::Coords zero(end.dimensions(), 0);
        row.replayed = !end.at(zero).empty();
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string lemke_csv(const std::vector<LemkeRow>& rows) {
  std::ostringstream out;
  out << "instance,q,indices,sum,gcd_sum,steps\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& r = rows[i];
    out << i << ',' << r.q << ',';
    for (std::size_t k = 0; k < r.solution.indices.size(); ++k) out << (k ? " " : "") << r.solution.indices[k] + 1;
    out << ',' << r.solution.sum << ',' << r.solution.gcd_sum << ',' << r.solution.certificate.size() << '\n';
  }
  return out.str();
}

struct CoverageRow {
  int rep = 0;
  CurveRow row;
  double exact = 0;
  bool covered = false;
};

struct ThresholdData {
  ScanResult clique, star, path;
  std::vector<CoverageRow> coverage;
};

inline ThresholdData threshold_data(std::uint64_t seed, int jobs) {
  TrialConfig cfg;
  cfg.seed = seed;
  cfg.trials = 2000;
  cfg.jobs = jobs;
  ThresholdData d;
  d.clique = threshold_scan(Family::Complete, {16, 64, 256, 1024}, cfg);
  d.star = threshold_scan(Family::Star, {16, 64, 256, 1024}, cfg);
  d.path = threshold_scan(Family::Path, {8, 16, 32, 64}, cfg);
  for (int rep = 0; rep < 100; ++rep)
    for (std::int64_t t : {3, 6}) {
      TrialConfig c = cfg;
      c.seed = splitmix64(seed + static_cast<std::uint64_t>(rep));
      CoverageRow cr{rep, estimate(10, t, c, predicates::clique), clique_probability(10, t), false};
      cr.covered = cr.row.ci_lo <= cr.exact && cr.exact <= cr.row.ci_hi;
      d.coverage.push_back(cr);
    }
  return d;
}

inline void add_threshold_csv(Artifacts& out, const ThresholdData& d) {
  auto scan = [&](const std::string& name, const ScanResult& r) {
    std::ostringstream s, c;
    write_scan_csv(s, r.points);
    write_curve_csv(c, r.rows);
    out["threshold_" + name + ".csv"] = s.str();
    out["curve_" + name + ".csv"] = c.str();
  };
  scan("complete", d.clique);
  scan("star", d.star);
  scan("path", d.path);
  std::ostringstream cov;
  cov << "rep,t,successes,trials,ci_lo,ci_hi,exact,covered\n" << std::fixed << std::setprecision(6);
  for (auto& c : d.coverage)
    cov << c.rep << ',' << c.row.t << ',' << c.row.successes << ',' << c.row.trials << ',' << c.row.ci_lo << ','
        << c.row.ci_hi << ',' << c.exact << ',' << (c.covered ? 1 : 0) << '\n';
  out["k10_coverage.csv"] = cov.str();
}

inline Artifacts artifacts(std::uint64_t seed, int jobs) {
  Artifacts a;
  a["numbers.csv"] = numbers_csv(exact_numbers(jobs));
  a["lemke.csv"] = lemke_csv(lemke_instances(seed));
  add_threshold_csv(a, threshold_data(seed, jobs));
  return a;
}

namespace detail {

inline std::string fmt(double x, int digits = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary(const std::string& extra = "") const {
    std::string s = std::to_string(checks_ - failed_) + "/" + std::to_string(checks_) + " checks";
    if (!extra.empty()) s += "; " + extra;
    for (auto& f : failures_) s += "; failed: " + f;
    return s;
  }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

}  // namespace detail

inline Outcome exact_numbers_criterion(const std::vector<NumberRow>& rows) {
  detail::Checker c;
  for (auto& r : rows)
    c.expect(r.expected == r.computed,
             "f(" + r.graph + ") = " + std::to_string(r.computed) + ", expected " + std::to_string(r.expected));
  return {1, "exact pebbling numbers", c.ok(), c.summary()};
}

inline Outcome trees_criterion() {
  detail::Checker c;
  int trees = 0;
  for (int n = 1; n <= 8; ++n)
    for (const Graph& t : all_trees(n)) {
      ++trees;
      c.expect(tree_formula(t) == pebbling_number(t), "tree formula on " + tree_code(t));
    }
  auto exact = [](const Graph& g, Vertex r, int k) { return cpp_int(pebbling_number(g, r, k)); };
  int rooted = 0;
  for (int n = 1; n <= 7; ++n)
    for (const Graph& t : all_trees(n))
      for (Vertex r = 0; r < t.order(); ++r)
        for (int k : {1, 2}) {
          ++rooted;
          c.expect(rooted_recursion(t, r, k, exact) == exact(t, r, k),
                   "rooted recursion on " + rooted_code(t, r) + " k=" + std::to_string(k));
        }
  return {2, "tree formula and rooted recursion", c.ok(),
          c.summary(std::to_string(trees) + " trees, " + std::to_string(rooted) + " rooted cases")};
}

inline Outcome counterexamples_criterion() {
  detail::Checker c;
  auto solves = [](const Graph& g, const Distribution& d, Vertex r, SolveMode mode, int k = 1) {
    SolveOptions o;
    o.mode = mode;
    o.k = k;
    auto res = solvable(g, d, r, o);
    if (res.solvable && !valid_witness(g, d, r, *res.witness, o)) throw InternalInvariant("invalid witness");
    return res.solvable;
  };
  {
    Graph c5 = cycle_graph(5);
    Distribution d{0, 0, 3, 2, 0};
    c.expect(solves(c5, d, 0, SolveMode::Unrestricted), "C5 D(c,d)=(3,2) solvable");
    c.expect(!solves(c5, d, 0, SolveMode::Greedy), "C5 D(c,d)=(3,2) not greedily solvable");
  }
  {
    namespace v = fixtures::eight;
    Graph h8 = fixtures::not_semi_greedy_graph();
    c.expect(pebbling_number(h8) == 9, "f(H) = 9 for the 8-vertex graph");
    Distribution d1(8);
    d1[v::a] = 1, d1[v::b] = 3, d1[v::f] = 3, d1[v::g] = 1, d1[v::h] = 1;
    c.expect(solves(h8, d1, v::d, SolveMode::Unrestricted), "D(a,b,f,g,h) solvable to d");
    c.expect(!solves(h8, d1, v::d, SolveMode::SemiGreedy), "D(a,b,f,g,h) not semi-greedily solvable to d");
    Distribution d2(8);
    d2[v::b] = 1, d2[v::c] = 5, d2[v::d] = 1, d2[v::g] = 1, d2[v::h] = 1;
    c.expect(solves(h8, d2, v::f, SolveMode::Unrestricted), "D(b,c,d,g,h) solvable to f");
    c.expect(!solves(h8, d2, v::f, SolveMode::TreeSolvable), "D(b,c,d,g,h) has no tree solution to f");
  }
  {
    namespace v = fixtures::six;
    Graph h6 = fixtures::diameter_two_class1_graph();
    c.expect(pebbling_number(h6) == 7, "f = 7 for the 6-cycle plus triangle");
    Distribution d1(6);
    d1[v::b] = 3, d1[v::d] = 3;
    c.expect(!solves(h6, d1, v::g, SolveMode::Unrestricted), "D(b,d)=(3,3) g-unsolvable");
  }
  {
    Graph l = lemke_graph();
    Distribution w{8, 1, 1, 1, 0, 0, 0, 1};
    c.expect(!solves(l, w, lemke_label::x, SolveMode::Unrestricted, 2), "Lemke witness cannot put two pebbles on x");
    c.expect(solves(l, w, lemke_label::x, SolveMode::Unrestricted, 1), "Lemke witness reaches x once");
  }
  return {3, "counterexample suite", c.ok(), c.summary()};
}

inline Outcome small_graph_criterion(int jobs) {
  detail::Checker c;
  int graphs = 0;
  for (int n = 1; n <= 6; ++n)
    for (const Graph& g : connected_graphs(n)) {
      ++graphs;
      NumberOptions o;
      o.jobs = jobs;
      const std::int64_t f = pebbling_number_ex(g, o).value;
      const auto s = structure(g);
      const std::int64_t pow = std::int64_t{1} << s.diameter;
      std::ostringstream name;
      write_graph(name, g);
      std::string id = name.str();
      std::replace(id.begin(), id.end(), '\n', ';');
      c.expect(std::max<std::int64_t>(n, pow) <= f && f <= (pow - 1) * (n - 1) + 1, "bounds on " + id);
      if (!s.cut_vertices.empty()) c.expect(f > n, "cut vertex graph is Class 1: " + id);
      if (s.diameter == 2) c.expect(f <= n + 1, "diameter two bound: " + id);
      if (class0_sufficient(g)) c.expect(f == n, "sufficient condition implies Class 0: " + id);
    }
  return {4, "laws on all connected graphs up to 6 vertices", c.ok(), c.summary(std::to_string(graphs) + " graphs")};
}

inline Outcome products_criterion(const Options& opt) {
  detail::Checker c;
  NumberOptions o;
  o.jobs = opt.jobs;
  Graph k2 = complete_graph(2);
  const auto f_square = pebbling_number_ex(cartesian_product(k2, k2), o).value;
  c.expect(f_square == 4 && f_square == pebbling_number(k2) * pebbling_number(k2), "f(K2 x K2) = 4");
  auto g33 = graham_check(complete_graph(3), complete_graph(3), 2, 2, opt.jobs);
  c.expect(g33.lhs == 9 && g33.rhs == 9 && g33.holds, "f(C3 x C3) = 9 <= 9");

  Graph book = cartesian_product(path_graph(3), star_graph(4));
  Distribution witness{0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 15, 0};
  c.expect(witness.size() == 17 && !solvable(book, witness, 1).solvable, "size 17 unsolvable on path x star");
  std::string extra = "f(P3 x S4) >= 18";
  if (opt.heavy) {
    auto g = graham_check(path_graph(3), star_graph(4), 2, 2, opt.jobs);
    c.expect(g.lhs == 18 && g.rhs == 20, "f(P3 x S4) = 18 < 20");
    extra = "f(P3 x S4) = " + std::to_string(g.lhs);
  }

  struct GridCase {
    std::vector<int> dims, ps;
  };
  for (const GridCase& gc : {GridCase{{2}, {3}}, GridCase{{1, 1}, {2, 2}}, GridCase{{1, 1}, {3, 3}}}) {
    NumberOptions go = o;
    go.costs = grid_costs(gc.dims, gc.ps);
    const auto f = pebbling_number_ex(grid_graph(gc.dims), go).value;
    const auto want = *formula(FamilySpec{Family::Grid, gc.dims}, gc.ps);
    c.expect(cpp_int(f) == want, "grid p-pebbling number " + std::to_string(f));
  }
  return {5, "product laws", c.ok(), c.summary(extra)};
}

inline Outcome lemke_criterion(const std::vector<LemkeRow>& rows) {
  detail::Checker c;
  int small = 0, searched = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& r = rows[i];
    const std::string id = "instance " + std::to_string(i) + " (q=" + std::to_string(r.q) + ")";
    c.expect(r.error.empty(), id + ": " + r.error);
    if (!r.error.empty()) continue;
    c.expect(!r.solution.indices.empty() && r.verified, id + " verification");
    c.expect(r.erdos_lemke, id + " sum <= lcm");
    if (r.solution.used_search) ++searched;
    if (r.brute_force_found) {
      ++small;
      c.expect(*r.brute_force_found, id + " brute force");
      c.expect(r.replayed.value_or(false), id + " certificate replay");
    }
  }
  return {6, "numerical pebbling solver", c.ok(),
          c.summary(std::to_string(small) + " instances with q <= 12, " + std::to_string(searched) +
                    " needed the search schedule")};
}

inline Outcome thresholds_criterion(const ThresholdData& d) {
  detail::Checker c;
  c.expect(std::abs(d.clique.exponent - 0.5) <= 0.1, "clique exponent " + detail::fmt(d.clique.exponent));
  c.expect(std::abs(d.star.exponent - 0.5) <= 0.1, "star exponent " + detail::fmt(d.star.exponent));
  c.expect(d.path.exponent >= 0.8, "path exponent " + detail::fmt(d.path.exponent));
  std::map<std::int64_t, int> covered;
  for (auto& cr : d.coverage) covered[cr.row.t] += cr.covered;
  for (auto [t, k] : covered) c.expect(k >= 93, "K10 t=" + std::to_string(t) + " coverage " + std::to_string(k));
  return {7, "threshold exponents and coverage", c.ok(),
          c.summary("exponents " + detail::fmt(d.clique.exponent) + ", " + detail::fmt(d.star.exponent) + ", " +
                    detail::fmt(d.path.exponent) + "; coverage " + std::to_string(covered[3]) + ", " +
                    std::to_string(covered[6]))};
}

inline Outcome lattice_criterion() {
  using namespace lattice;
  using lattice::Family;
  detail::Checker c;
  for (auto [n, w, b] : {std::tuple{3, 3, 2}, std::tuple{4, 3, 1}, std::tuple{3, 2, 3}}) {
    auto best = min_shadow_by_size(n, w, b);
    Family all = level(n, w, b);
    for (std::size_t f = 1; f < best.size(); ++f) {
      Family seg = first_f(static_cast<std::int64_t>(f), w, b);
      auto rep = cl_check(seg);
      c.expect(rep.holds && rep.shad_actual == rep.shad_bound, "colex segment meets the bound");
      c.expect(rep.shad_bound <= best[f], "bound below every family of size " + std::to_string(f));
      c.expect(rep.shad_actual == best[f], "colex segment attains the minimum at size " + std::to_string(f));
    }
    c.expect(all.size() <= 12, "level size at most 12");
  }
  for (int b = 1; b <= 3; ++b)
    for (int w = 1; w <= 4; ++w) {
      const std::int64_t top = to_int64(bmul(4, w, b));
      for (std::int64_t f = 1; f <= top; ++f) {
        auto v = decompose(f, w, b);
        Family shad = shadow(first_f(f, w, b));
        Family expect = first_f(to_int64(col(shadow_vector(v), b)), w - 1, b);
        c.expect(to_int64(col(v, b)) == f && shad.keys == expect.keys, "Shad Col identity");
      }
    }
  for (int n = 0; n <= 5; ++n)
    for (int w = 0; w <= 6; ++w)
      for (int b = 1; b <= 4; ++b) {
        const std::int64_t count = n == 0 ? (w == 0 ? 1 : 0) : static_cast<std::int64_t>(level(n, w, b).size());
        c.expect(bmul(n, w, b) == count, "bmul count");
      }
  c.expect(supernormal_gap(3, 2, 2) == cpp_rational(1, 18), "gap (3,2,2) = 1/18");
  for (int n = 3; n <= 8; ++n)
    for (int b = 2; b <= 6; ++b)
      for (int s = 2; s < n; ++s) {
        auto gap = supernormal_gap(n, b, s);
        c.expect(gap > 0 && gap == supernormal_gap_explicit(n, b, s), "supernormal gap");
      }
  for (auto [n, b] : {std::pair{3, 2}, std::pair{4, 1}, std::pair{2, 3}})
    for (int w = 2; w <= n * b; ++w)
      for (int u = 1; u < w; ++u) c.expect(normal_check(n, b, u, w), "normal_check");
  std::string genlov;
  for (int b : {2, 3}) {
    auto sweep = genlov_segments(4, b, 5);
    for (auto [w, f] : sweep.failures) {
      auto rep = genlov_check(first_f(f, w, b));
      c.expect(false, "genlov b=" + std::to_string(b) + " w=" + std::to_string(w) + " |F|=" + std::to_string(f) +
                          ": shad " + std::to_string(rep.shad) + " < bound " +
                          detail::fmt(static_cast<double>(rep.bound), 4) + " at x=" +
                          detail::fmt(static_cast<double>(rep.x), 4));
    }
    genlov += (genlov.empty() ? "genlov " : ", ") + std::to_string(sweep.checked - sweep.failures.size()) + "/" +
              std::to_string(sweep.checked) + " at b=" + std::to_string(b);
  }
  return {8, "multiset lattice", c.ok(), c.summary(genlov)};
}

inline Outcome determinism_criterion(const Options& opt, const Artifacts& baseline) {
  detail::Checker c;
  Artifacts one = opt.jobs == 1 ? baseline : artifacts(opt.seed, 1);
  Artifacts four = opt.jobs == 4 ? baseline : artifacts(opt.seed, 4);
  c.expect(one.size() == four.size(), "same artifact set");
  for (auto& [name, text] : one) {
    auto it = four.find(name);
    c.expect(it != four.end() && it->second == text, name + " differs between --jobs 1 and --jobs 4");
  }
  return {9, "byte-identical CSV for --jobs 1 and --jobs 4", c.ok(), c.summary()};
}

/// Runs criteria 1-9 in order, reporting each through `report` as it finishes.
inline std::vector<Outcome> run(const Options& opt, Artifacts& csv,
                                const std::function<void(const Outcome&)>& report = nullptr) {
  std::vector<Outcome> out;
  auto timed = [&](int id, const char* title, auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{id, title, false, "", 0};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {id, title, false, std::string("exception: ") + e.what(), 0};
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(o);
    if (report) report(out.back());
  };
  std::vector<NumberRow> numbers;
  timed(1, "exact pebbling numbers", [&] {
    numbers = exact_numbers(opt.jobs);
    csv["numbers.csv"] = numbers_csv(numbers);
    return exact_numbers_criterion(numbers);
  });
  timed(2, "tree formula and rooted recursion", [] { return trees_criterion(); });
  timed(3, "counterexample suite", [] { return counterexamples_criterion(); });
  timed(4, "laws on all connected graphs up to 6 vertices", [&] { return small_graph_criterion(opt.jobs); });
  timed(5, "product laws", [&] { return products_criterion(opt); });
  timed(6, "numerical pebbling solver", [&] {
    auto rows = lemke_instances(opt.seed);
    csv["lemke.csv"] = lemke_csv(rows);
    return lemke_criterion(rows);
  });
  timed(7, "threshold exponents and coverage", [&] {
    auto d = threshold_data(opt.seed, opt.jobs);
    add_threshold_csv(csv, d);
    return thresholds_criterion(d);
  });
  timed(8, "multiset lattice", [] { return lattice_criterion(); });
  timed(9, "byte-identical CSV for --jobs 1 and --jobs 4", [&] { return determinism_criterion(opt, csv); });
  return out;
}

inline std::string format(const Outcome& o) {
  std::ostringstream s;
  s << (o.pass ? "PASS" : "FAIL") << "  criterion " << o.id << ": " << o.title << " (" << detail::fmt(o.seconds, 1)
    << " s) " << o.detail;
  return s.str();
}

}  // namespace pebbling::repro
