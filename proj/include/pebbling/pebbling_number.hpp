#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "pebbling/error.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/solver.hpp"

namespace pebbling {

struct NumberOptions {
  std::optional<Vertex> root;
  int k = 1;
  Costs costs = Costs::uniform(2);
  /// Node-expansion limit per root; 0 means unlimited.
  std::uint64_t budget = 0;
  int jobs = 1;
};

struct NumberResult {
  std::int64_t value = 0;
  /// An unsolvable distribution of size value - 1 and the root it fails for.
  Distribution witness;
  Vertex witness_root = 0;
};

namespace detail {

/// f(G, r; k) by an ascending scan. Any unsolvable distribution keeps fewer
/// than k pebbles on r and fewer than the single-pile threshold on every other
/// vertex, so each level only enumerates compositions inside that box.
class RootedScan {
 public:
  RootedScan(const Graph& g, Vertex root, const NumberOptions& opt)
      : g_(g), root_(root), budget_{opt.budget, 0} {
    sopt_.k = opt.k;
    sopt_.costs = opt.costs;
    sopt_.budget = opt.budget ? &budget_ : nullptr;
    search_.emplace(g, root, sopt_);
    const int n = g.order();
    caps_.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      if (v == root) {
        caps_[v] = opt.k - 1;
        continue;
      }
      std::int64_t t = search_->single_pile_threshold(v);
      if (t > (1LL << 30)) throw ResourceLimit("pebble counts out of range for exact search");
      caps_[v] = t - 1;
    }
    suffix_cap_.assign(n + 1, 0);
    for (int v = n - 1; v >= 0; --v) suffix_cap_[v] = suffix_cap_[v + 1] + caps_[v];
  }

  NumberResult run() {
    const int n = g_.order();
    // Two unsolvable starting points: one pebble everywhere but the root plus
    // k - 1 on it, and a maximal pile on the most expensive vertex.
    Distribution spread(n);
    for (Vertex v = 0; v < n; ++v) spread[v] = v == root_ ? sopt_.k - 1 : 1;
    Vertex far = root_ == 0 && n > 1 ? 1 : 0;
    for (Vertex v = 0; v < n; ++v)
      if (v != root_ && caps_[v] > caps_[far]) far = v;
    Distribution pile(n);
    if (n > 1) pile[far] = static_cast<int>(caps_[far]);
    // With mixed edge costs a cheaper detour may exist, so the pile is checked.
    Distribution witness = spread.size() >= pile.size() || !unsolvable(pile) ? spread : pile;
    std::int64_t t = witness.size() + 1;

    for (;; ++t) {
      if (t > suffix_cap_[0]) return {t, witness, root_};
      std::optional<Distribution> next;
      try {
        next = extend(witness);
        if (!next) next = find_unsolvable(t);
      } catch (const ResourceLimit&) {
        throw ResourceLimit("pebbling number search budget exhausted", t, suffix_cap_[0] + 1);
      }
      if (!next) return {t, witness, root_};
      witness = std::move(*next);
    }
  }

 private:
  bool unsolvable(const Distribution& d) { return !search_->solve(d, nullptr); }

  std::optional<Distribution> extend(const Distribution& w) {
    Distribution d = w;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (d[v] >= caps_[v]) continue;
      ++d[v];
      if (unsolvable(d)) return d;
      --d[v];
    }
    return std::nullopt;
  }

  std::optional<Distribution> find_unsolvable(std::int64_t t) {
    Distribution d(g_.order());
    if (compose(d, 0, t)) return d;
    return std::nullopt;
  }

  bool compose(Distribution& d, int v, std::int64_t left) {
    const int n = g_.order();
    if (v == n - 1) {
      if (left > caps_[v]) return false;
      d[v] = static_cast<int>(left);
      bool bad = unsolvable(d);
      if (!bad) d[v] = 0;
      return bad;
    }
    std::int64_t lo = std::max<std::int64_t>(0, left - suffix_cap_[v + 1]);
    std::int64_t hi = std::min(caps_[v], left);
    for (std::int64_t c = hi; c >= lo; --c) {
      d[v] = static_cast<int>(c);
      if (compose(d, v + 1, left - c)) return true;
    }
    d[v] = 0;
    return false;
  }

  const Graph& g_;
  Vertex root_;
  Budget budget_;
  SolveOptions sopt_;
  std::optional<RootedSearch> search_;
  std::vector<std::int64_t> caps_;
  std::vector<std::int64_t> suffix_cap_;
};

template <class Fn>
void run_indexed(int count, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w)
    workers.emplace_back([&, w] {
      for (int i = w; i < count; i += jobs) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// f(G) with no root given, f(G, r; k) otherwise, under the given step costs.
inline NumberResult pebbling_number_ex(const Graph& g, const NumberOptions& opt = {}) {
  if (opt.k < 1) throw InvalidParameter("k must be at least 1");
  if (opt.root && (*opt.root < 0 || *opt.root >= g.order())) throw InvalidParameter("root out of range");
  if (opt.root) return detail::RootedScan(g, *opt.root, opt).run();

  const int n = g.order();
  std::vector<std::optional<NumberResult>> per_root(n);
  detail::run_indexed(n, opt.jobs, [&](int r) { per_root[r] = detail::RootedScan(g, r, opt).run(); });
  NumberResult best = *per_root[0];
  for (int r = 1; r < n; ++r)
    if (per_root[r]->value > best.value) best = *per_root[r];
  return best;
}

inline std::int64_t pebbling_number(const Graph& g, std::optional<Vertex> root = std::nullopt, int k = 1,
                                    int p = 2) {
  NumberOptions opt;
  opt.root = root;
  opt.k = k;
  opt.costs = Costs::uniform(p);
  return pebbling_number_ex(g, opt).value;
}

struct Unsolvable {
  std::int64_t size;
  Distribution distribution;
  Vertex root;
};

inline Unsolvable max_unsolvable(const Graph& g, std::optional<Vertex> root = std::nullopt, int jobs = 1) {
  NumberOptions opt;
  opt.root = root;
  opt.jobs = jobs;
  auto r = pebbling_number_ex(g, opt);
  return {r.value - 1, r.witness, r.witness_root};
}

}  // namespace pebbling
