#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pebbling/error.hpp"
#include "pebbling/families.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/pebbling_number.hpp"
#include "pebbling/solver.hpp"

namespace pebbling {

enum class Method { Exact, SufficientCondition };

inline const char* to_string(Method m) { return m == Method::Exact ? "exact" : "sufficient-condition"; }

struct PropertyReport {
  bool holds = false;
  std::optional<Distribution> witness;
  std::optional<Vertex> root;
  Method method = Method::Exact;
  /// f(G) when it was computed along the way.
  std::optional<std::int64_t> pebbling_number;
};

namespace detail {

/// Calls fn(D) on every distribution with support exactly `q` and size `t`
/// (t >= q), subsets in lexicographic order. Stops early when fn returns true.
template <class Fn>
bool for_each_supported(int n, int q, std::int64_t t, Fn&& fn) {
  std::vector<int> pick(q);
  for (int i = 0; i < q; ++i) pick[i] = i;
  Distribution d(n);
  std::vector<int> parts(q, 1);
  for (;;) {
    // compositions of t into q positive parts, first part largest first
    std::function<bool(int, std::int64_t)> fill = [&](int i, std::int64_t left) -> bool {
      if (i == q - 1) {
        d[pick[i]] = static_cast<int>(left);
        bool stop = fn(d);
        d[pick[i]] = 0;
        return stop;
      }
      for (std::int64_t c = left - (q - 1 - i); c >= 1; --c) {
        d[pick[i]] = static_cast<int>(c);
        if (fill(i + 1, left - c)) return true;
      }
      d[pick[i]] = 0;
      return false;
    };
    if (q == 0 ? fn(d) : fill(0, t)) return true;
    if (q == 0) return false;
    int i = q - 1;
    while (i >= 0 && pick[i] == n - q + i) --i;
    if (i < 0) return false;
    ++pick[i];
    for (int j = i + 1; j < q; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace detail

/// Decides the 2-pebbling property exactly. For each support size q it checks
/// the sizes max(2f - q + 1, q) only: a larger distribution with the same
/// support contains one of these (drop pebbles from vertices holding two or
/// more), and adding pebbles never hurts.
inline PropertyReport two_pebbling(const Graph& g, int jobs = 1, std::uint64_t budget = 0) {
  NumberOptions nopt;
  nopt.jobs = jobs;
  nopt.budget = budget;
  const std::int64_t f = pebbling_number_ex(g, nopt).value;
  const int n = g.order();

  struct Failure {
    std::int64_t ordinal;
    Distribution d;
  };
  std::vector<std::optional<Failure>> per_root(n);
  detail::run_indexed(n, jobs, [&](int r) {
    Budget b{budget, 0};
    SolveOptions opt;
    opt.k = 2;
    opt.budget = budget ? &b : nullptr;
    detail::RootedSearch search(g, r, opt);
    std::int64_t ordinal = 0;
    for (int q = n; q >= 1; --q) {
      const std::int64_t t = std::max<std::int64_t>(2 * f - q + 1, q);
      bool found = detail::for_each_supported(n, q, t, [&](const Distribution& d) {
        ++ordinal;
        if (search.solve(d, nullptr)) return false;
        per_root[r] = Failure{ordinal, d};
        return true;
      });
      if (found) return;
    }
  });

  PropertyReport rep;
  rep.pebbling_number = f;
  rep.holds = true;
  for (Vertex r = 0; r < n; ++r) {
    if (!per_root[r]) continue;
    if (rep.holds || per_root[r]->ordinal < per_root[*rep.root]->ordinal) {
      rep.holds = false;
      rep.root = r;
      rep.witness = per_root[r]->d;
    }
  }
  return rep;
}

/// Fast sufficient test for Class 0; false is inconclusive.
inline bool class0_sufficient(const Graph& g) {
  const auto s = structure(g);
  if (s.diameter <= 1) return true;
  if (s.diameter == 2 && s.vertex_connectivity >= 3) return true;
  const double needed = std::ldexp(1.0, 2 * s.diameter + 3);
  return s.vertex_connectivity >= needed;
}

/// The cut-vertex witness: root in one component of G - x, three pebbles on
/// a vertex y of another, nothing on x, one pebble everywhere else.
inline std::optional<std::pair<Distribution, Vertex>> cut_vertex_witness(const Graph& g) {
  const auto cuts = detail::cut_vertices(g);
  if (cuts.empty()) return std::nullopt;
  const Vertex x = cuts.front();
  const int n = g.order();
  std::vector<int> comp(n, -1);
  int count = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (s == x || comp[s] >= 0) continue;
    std::vector<Vertex> stack{s};
    comp[s] = count;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : g.neighbors(u))
        if (v != x && comp[v] < 0) {
          comp[v] = count;
          stack.push_back(v);
        }
    }
    ++count;
  }
  Vertex r = -1, y = -1;
  for (Vertex v = 0; v < n; ++v) {
    if (v == x) continue;
    if (comp[v] == 0 && r < 0) r = v;
    if (comp[v] == 1 && y < 0) y = v;
  }
  Distribution d(n);
  for (Vertex v = 0; v < n; ++v) d[v] = 1;
  d[r] = 0;
  d[x] = 0;
  d[y] = 3;
  return std::make_pair(d, r);
}

/// Class 0 means f(G) = n(G). Sufficient conditions and the cut-vertex
/// construction answer quickly; otherwise f(G) is computed exactly.
inline PropertyReport class0(const Graph& g, int jobs = 1, std::uint64_t budget = 0) {
  PropertyReport rep;
  if (class0_sufficient(g)) {
    rep.holds = true;
    rep.method = Method::SufficientCondition;
    return rep;
  }
  if (auto w = cut_vertex_witness(g)) {
    rep.holds = false;
    rep.method = Method::SufficientCondition;
    rep.witness = w->first;
    rep.root = w->second;
    return rep;
  }
  // f(G) >= f(C_g) for girth g. The logarithmic girth bound alone is not
  // enough: C_5 has girth above 2 log2 5 and f = 5, so compare f(C_g) with n.
  const auto s = structure(g);
  if (s.girth && *s.girth > 2 * std::log2(static_cast<double>(g.order())) &&
      *formula(FamilySpec{Family::Cycle, {*s.girth}}) > g.order()) {
    rep.holds = false;
    rep.method = Method::SufficientCondition;
    return rep;
  }
  NumberOptions nopt;
  nopt.jobs = jobs;
  nopt.budget = budget;
  auto res = pebbling_number_ex(g, nopt);
  rep.pebbling_number = res.value;
  rep.holds = res.value == g.order();
  rep.method = Method::Exact;
  if (!rep.holds) {
    rep.witness = res.witness;
    rep.root = res.witness_root;
  }
  return rep;
}

struct GrahamReport {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool holds = false;
};

/// Compares f_(p1,p2)(G1 x G2) with f_p1(G1) f_p2(G2); on the product a step
/// along a G1 edge costs p1 and along a G2 edge costs p2.
inline GrahamReport graham_check(const Graph& g1, const Graph& g2, int p1 = 2, int p2 = 2, int jobs = 1,
                                 std::uint64_t budget = 0) {
  std::vector<int> factor;
  Graph h = cartesian_product(g1, g2, &factor);
  std::vector<int> table;
  for (int f : factor) table.push_back(f == 0 ? p1 : p2);
  auto number = [&](const Graph& g, Costs c) {
    NumberOptions o;
    o.costs = std::move(c);
    o.jobs = jobs;
    o.budget = budget;
    return pebbling_number_ex(g, o).value;
  };
  GrahamReport rep;
  rep.rhs = number(g1, Costs::uniform(p1)) * number(g2, Costs::uniform(p2));
  rep.lhs = h.size() ? number(h, Costs::per_edge(table)) : 1;
  rep.holds = rep.lhs <= rep.rhs;
  return rep;
}

struct GenProdReport {
  std::int64_t f_h = 0;
  std::int64_t bound = 0;
  bool holds = false;
  /// 2-pebbling verdict for H, computed only when f(H) meets the bound.
  std::optional<bool> twopp;
  /// Every vertex of G1 and G2 meets F, and both factors have the 2-pebbling
  /// property. Only then does the inequality have to hold.
  bool premises = false;
};

/// Disjoint union of G1 and G2 (G2 shifted by n1) plus the cross edges F,
/// each given as (vertex of G1, vertex of G2).
inline Graph join_graphs(const Graph& g1, const Graph& g2, const std::vector<std::pair<Vertex, Vertex>>& f) {
  const int n1 = g1.order(), n2 = g2.order();
  if (f.empty()) throw InvalidParameter("the cross edge set must be nonempty");
  std::vector<Edge> e = g1.edges();
  for (auto [u, v] : g2.edges()) e.push_back({u + n1, v + n1});
  for (auto [a, b] : f) {
    if (a < 0 || a >= n1 || b < 0 || b >= n2) throw InvalidParameter("cross edge endpoint out of range");
    e.push_back({a, b + n1});
  }
  return Graph(n1 + n2, e);
}

inline GenProdReport genprod_check(const Graph& g1, const Graph& g2, const std::vector<std::pair<Vertex, Vertex>>& f,
                                   int jobs = 1, std::uint64_t budget = 0) {
  Graph h = join_graphs(g1, g2, f);
  NumberOptions o;
  o.jobs = jobs;
  o.budget = budget;
  GenProdReport rep;
  rep.f_h = pebbling_number_ex(h, o).value;
  rep.bound = pebbling_number_ex(g1, o).value + pebbling_number_ex(g2, o).value;
  rep.holds = rep.f_h <= rep.bound;
  std::vector<char> touched(h.order(), 0);
  for (auto [a, b] : f) touched[a] = touched[b + g1.order()] = 1;
  rep.premises = std::all_of(touched.begin(), touched.end(), [](char c) { return c != 0; }) &&
                 two_pebbling(g1, jobs, budget).holds && two_pebbling(g2, jobs, budget).holds;
  if (rep.f_h == rep.bound) rep.twopp = two_pebbling(h, jobs, budget).holds;
  return rep;
}

}  // namespace pebbling
