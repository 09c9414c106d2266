#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pebbling/error.hpp"
#include "pebbling/graph.hpp"

namespace pebbling {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Pebble counts per vertex.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(int vertices) : counts_(vertices, 0) {}
  explicit Distribution(std::vector<int> counts) : counts_(std::move(counts)) { check(); }
  Distribution(std::initializer_list<int> counts) : counts_(counts) { check(); }

  int vertices() const noexcept { return static_cast<int>(counts_.size()); }
  int& operator[](Vertex v) { return counts_[v]; }
  int operator[](Vertex v) const { return counts_[v]; }
  const std::vector<int>& counts() const noexcept { return counts_; }

  /// |D|
  long long size() const { return std::accumulate(counts_.begin(), counts_.end(), 0LL); }
  /// q(D), the number of occupied vertices.
  int support() const {
    return static_cast<int>(std::count_if(counts_.begin(), counts_.end(), [](int c) { return c > 0; }));
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;

  std::string to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < counts_.size(); ++i) out << (i ? " " : "") << counts_[i];
    return out.str();
  }

 private:
  void check() const {
    for (int c : counts_)
      if (c < 0) throw InvalidParameter("pebble counts must be non-negative");
  }
  std::vector<int> counts_;
};

inline Distribution read_distribution(std::istream& in, int n) {
  std::vector<int> counts;
  long long c = 0;
  while (static_cast<int>(counts.size()) < n && in >> c) {
    if (c < 0 || c > 1'000'000'000) throw InvalidParameter("distribution: bad count");
    counts.push_back(static_cast<int>(c));
  }
  if (static_cast<int>(counts.size()) != n)
    throw InvalidParameter("distribution: expected " + std::to_string(n) + " counts");
  return Distribution(std::move(counts));
}

/// One pebbling step: remove `cost` pebbles from `from`, add one to `to`.
struct Move {
  Vertex from;
  Vertex to;
  int cost;
  friend bool operator==(const Move&, const Move&) = default;
};

using MoveSequence = std::vector<Move>;

enum class SolveMode { Unrestricted, Greedy, SemiGreedy, TreeSolvable };

inline const char* to_string(SolveMode m) {
  switch (m) {
    case SolveMode::Unrestricted: return "unrestricted";
    case SolveMode::Greedy: return "greedy";
    case SolveMode::SemiGreedy: return "semigreedy";
    case SolveMode::TreeSolvable: return "tree";
  }
  return "?";
}

/// Cost of a pebbling step along each edge. Uniform p for p-pebbling, or a
/// per-edge table (indexed by edge id) for coordinate-wise costs on products.
class Costs {
 public:
  static Costs uniform(int p) {
    if (p < 2) throw InvalidParameter("pebbling cost must be at least 2");
    Costs c;
    c.uniform_ = p;
    return c;
  }
  static Costs per_edge(std::vector<int> table) {
    if (table.empty()) throw InvalidParameter("per-edge cost table is empty");
    for (int p : table)
      if (p < 2) throw InvalidParameter("pebbling cost must be at least 2");
    Costs c;
    c.table_ = std::move(table);
    c.uniform_ = 0;
    return c;
  }

  bool is_uniform() const noexcept { return uniform_ > 0; }
  int of_edge(int edge_id) const { return is_uniform() ? uniform_ : table_.at(edge_id); }
  int of(const Graph& g, Vertex u, Vertex v) const { return of_edge(g.edge_id(u, v)); }
  int minimum() const {
    return is_uniform() ? uniform_ : *std::min_element(table_.begin(), table_.end());
  }

 private:
  int uniform_ = 2;
  std::vector<int> table_;
};

/// Shared node-expansion counter; limit 0 means unlimited.
struct Budget {
  std::uint64_t limit = 0;
  std::uint64_t used = 0;

  void spend() {
    if (limit != 0 && ++used > limit) throw ResourceLimit("search budget exhausted");
  }
};

struct SolveOptions {
  int k = 1;
  Costs costs = Costs::uniform(2);
  SolveMode mode = SolveMode::Unrestricted;
  Budget* budget = nullptr;
};

inline void validate(const SolveOptions& opt) {
  if (opt.k < 1) throw InvalidParameter("k must be at least 1");
}

/// Replays `moves` from `d`; returns the final distribution or nullopt if a
/// step is not an edge, has the wrong cost, or drives a count negative.
inline std::optional<Distribution> replay(const Graph& g, Distribution d, const MoveSequence& moves,
                                          const Costs& costs = Costs::uniform(2)) {
  for (const auto& m : moves) {
    if (m.from < 0 || m.to < 0 || m.from >= g.order() || m.to >= g.order()) return std::nullopt;
    if (!g.adjacent(m.from, m.to)) return std::nullopt;
    if (m.cost != costs.of(g, m.from, m.to)) return std::nullopt;
    if (d[m.from] < m.cost) return std::nullopt;
    d[m.from] -= m.cost;
    d[m.to] += 1;
  }
  return d;
}

/// Checks a witness move by move, including the mode's constraint.
inline bool valid_witness(const Graph& g, const Distribution& d, Vertex root, const MoveSequence& moves,
                          const SolveOptions& opt) {
  auto end = replay(g, d, moves, opt.costs);
  if (!end || (*end)[root] < opt.k) return false;
  const auto dist = g.distances_from(root);
  for (const auto& m : moves) {
    if (opt.mode == SolveMode::Greedy && !(dist[m.to] < dist[m.from])) return false;
    if (opt.mode == SolveMode::SemiGreedy && !(dist[m.to] <= dist[m.from])) return false;
  }
  if (opt.mode == SolveMode::TreeSolvable) {
    std::vector<Edge> used;
    for (const auto& m : moves) used.push_back({std::min(m.from, m.to), std::max(m.from, m.to)});
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<int> comp(g.order());
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    for (auto [u, v] : used) {
      int a = find(u), b = find(v);
      if (a == b) return false;
      comp[a] = b;
    }
  }
  return true;
}

/// sum_v D(v) / 2^dist(v, root), exactly.
inline Rational weight(const Graph& g, const Distribution& d, Vertex root) {
  if (root < 0 || root >= g.order()) throw InvalidParameter("root out of range");
  if (d.vertices() != g.order()) throw InvalidParameter("distribution length differs from graph order");
  const auto dist = g.distances_from(root);
  Rational w = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    BigInt den = BigInt(1) << dist[v];
    w += Rational(d[v], den);
  }
  return w;
}

namespace detail {

/// Memoized depth-first search for k-fold rooted solvability of one graph,
/// root and rule set. Reusable across distributions of the same graph.
class RootedSearch {
 public:
  RootedSearch(const Graph& g, Vertex root, const SolveOptions& opt)
      : g_(g), root_(root), opt_(opt), n_(g.order()) {
    if (root < 0 || root >= n_) throw InvalidParameter("root out of range");
    validate(opt);
    if (opt.mode == SolveMode::TreeSolvable && g.size() > 64)
      throw InvalidParameter("tree-solvable search supports at most 64 edges");
    dist_ = g.distances_from(root);
    ecc_ = *std::max_element(dist_.begin(), dist_.end());

    // Arcs out of every non-root vertex; a minimal solution never moves a
    // pebble off the root.
    arcs_.assign(n_, {});
    for (Vertex u = 0; u < n_; ++u) {
      if (u == root) continue;
      for (Vertex v : g.neighbors(u)) {
        if (opt.mode == SolveMode::Greedy && !(dist_[v] < dist_[u])) continue;
        if (opt.mode == SolveMode::SemiGreedy && !(dist_[v] <= dist_[u])) continue;
        int e = g.edge_id(u, v);
        arcs_[u].push_back({v, opt.costs.of_edge(e), e});
      }
      std::stable_sort(arcs_[u].begin(), arcs_[u].end(),
                       [&](const Arc& a, const Arc& b) { return dist_[a.to] < dist_[b.to]; });
    }
    for (Vertex v = 0; v < n_; ++v)
      if (v != root) by_distance_.push_back(v);
    std::stable_sort(by_distance_.begin(), by_distance_.end(),
                     [&](Vertex a, Vertex b) { return dist_[a] < dist_[b]; });

    // Shortest-path tree toward the root (cheapest parent edge).
    parent_.assign(n_, -1);
    parent_cost_.assign(n_, 0);
    for (Vertex v = 0; v < n_; ++v) {
      if (v == root) continue;
      for (Vertex u : g.neighbors(v)) {
        if (dist_[u] + 1 != dist_[v]) continue;
        int c = opt.costs.of(g, v, u);
        if (parent_[v] < 0 || c < parent_cost_[v]) {
          parent_[v] = u;
          parent_cost_[v] = c;
        }
      }
    }
    // Cheapest cost of a shortest path to the root, per vertex.
    path_cost_.assign(n_, 1);
    std::vector<Vertex> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return dist_[a] < dist_[b]; });
    for (Vertex v : order) {
      if (v == root) continue;
      unsigned __int128 best = 0;
      for (Vertex u : g.neighbors(v)) {
        if (dist_[u] + 1 != dist_[v]) continue;
        unsigned __int128 c = path_cost_[u] * static_cast<unsigned __int128>(opt.costs.of(g, v, u));
        if (best == 0 || c < best) best = c;
      }
      path_cost_[v] = best;
    }

    // Scaled weight: W = sum D(v) * b^(ecc - dist v), compared with k * b^ecc,
    // where b is the cheapest step cost. No step increases W.
    const int base = opt.costs.minimum();
    double bits = ecc_ * std::log2(static_cast<double>(base)) + std::log2(static_cast<double>(opt.k)) + 40;
    use_weight_ = bits < 120;
    if (use_weight_) {
      scale_.assign(n_, 1);
      for (Vertex v = 0; v < n_; ++v)
        for (int i = dist_[v]; i < ecc_; ++i) scale_[v] *= base;
      target_ = opt.k;
      for (int i = 0; i < ecc_; ++i) target_ *= base;
    }
  }

  Vertex root() const noexcept { return root_; }
  const std::vector<int>& distances() const noexcept { return dist_; }
  int eccentricity() const noexcept { return ecc_; }

  /// Smallest pile on v alone that is k-fold solvable along a shortest path
  /// (valid in every mode). Saturates at INT64_MAX.
  std::int64_t single_pile_threshold(Vertex v) const {
    unsigned __int128 t = path_cost_[v] * static_cast<unsigned __int128>(opt_.k);
    if (t > static_cast<unsigned __int128>(INT64_MAX)) return INT64_MAX;
    return static_cast<std::int64_t>(t);
  }

  bool weight_too_small(const std::vector<int>& counts) const {
    if (!use_weight_) return false;
    unsigned __int128 w = 0;
    for (Vertex v = 0; v < n_; ++v) w += static_cast<unsigned __int128>(counts[v]) * scale_[v];
    return w < target_;
  }

  /// Greedy collapse along the shortest-path tree. Moves appended to `moves`
  /// when non-null. Sound certificate of solvability in every mode.
  bool collapse(const std::vector<int>& counts, MoveSequence* moves) const {
    if (counts[root_] >= opt_.k) return true;
    std::vector<long long> c(counts.begin(), counts.end());
    for (auto it = by_distance_.rbegin(); it != by_distance_.rend(); ++it) {
      Vertex v = *it;
      long long m = c[v] / parent_cost_[v];
      if (m == 0) continue;
      c[v] -= m * parent_cost_[v];
      c[parent_[v]] += m;
      if (moves)
        for (long long i = 0; i < m; ++i) moves->push_back({v, parent_[v], parent_cost_[v]});
    }
    return c[root_] >= opt_.k;
  }

  bool solve(const Distribution& d, MoveSequence* witness) {
    if (d.vertices() != n_) throw InvalidParameter("distribution length differs from graph order");
    if (d.size() > (1LL << 30)) throw InvalidParameter("too many pebbles");
    if (d[root_] >= opt_.k) return true;
    if (weight_too_small(d.counts())) return false;
    if (collapse(d.counts(), witness)) return true;
    if (witness) witness->clear();
    // A state's failure does not depend on where the search started, so the
    // memo survives between calls until it grows too large.
    if (failed_.size() > kMemoCap) failed_.clear();
    state_.assign(d.counts().begin(), d.counts().end());
    used_edges_ = 0;
    weight_ = 0;
    if (use_weight_)
      for (Vertex v = 0; v < n_; ++v) weight_ += static_cast<unsigned __int128>(state_[v]) * scale_[v];
    path_.clear();
    bool ok = dfs();
    if (ok && witness) *witness = path_;
    return ok;
  }

 private:
  static constexpr std::size_t kMemoCap = 1'500'000;

  struct Arc {
    Vertex to;
    int cost;
    int edge;
  };

  std::string key() const {
    std::string k(reinterpret_cast<const char*>(state_.data()), state_.size() * sizeof(std::uint32_t));
    if (opt_.mode == SolveMode::TreeSolvable)
      k.append(reinterpret_cast<const char*>(&used_edges_), sizeof(used_edges_));
    return k;
  }

  bool creates_cycle(int edge) const {
    if (used_edges_ >> edge & 1) return false;
    // Is there already a path between the endpoints inside the used forest?
    const auto [a, b] = g_.edges()[edge];
    std::vector<Vertex> stack{a};
    std::vector<char> seen(n_, 0);
    seen[a] = 1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      if (x == b) return true;
      for (Vertex y : g_.neighbors(x)) {
        int e = g_.edge_id(x, y);
        if ((used_edges_ >> e & 1) && !seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    return false;
  }

  bool dfs() {
    if (state_[root_] >= opt_.k) return true;
    if (use_weight_ && weight_ < target_) return false;
    if (opt_.budget) opt_.budget->spend();
    if (opt_.mode != SolveMode::TreeSolvable || used_edges_ == 0) {
      std::vector<int> counts(state_.begin(), state_.end());
      MoveSequence tail;
      if (collapse(counts, &tail)) {
        path_.insert(path_.end(), tail.begin(), tail.end());
        return true;
      }
    }
    std::string k = key();
    if (failed_.count(k)) return false;

    for (Vertex u : by_distance_) {
      for (const Arc& a : arcs_[u]) {
        if (state_[u] < a.cost) continue;
        const std::uint64_t saved_edges = used_edges_;
        if (opt_.mode == SolveMode::TreeSolvable) {
          if (creates_cycle(a.edge)) continue;
          used_edges_ |= std::uint64_t{1} << a.edge;
        }
        state_[u] -= a.cost;
        state_[a.to] += 1;
        if (use_weight_) weight_ = weight_ - a.cost * scale_[u] + scale_[a.to];
        path_.push_back({u, a.to, a.cost});
        const std::size_t mark = path_.size();
        if (dfs()) return true;
        path_.resize(mark - 1);
        if (use_weight_) weight_ = weight_ + a.cost * scale_[u] - scale_[a.to];
        state_[a.to] -= 1;
        state_[u] += a.cost;
        used_edges_ = saved_edges;
      }
    }
    failed_.insert(std::move(k));
    return false;
  }

  const Graph& g_;
  Vertex root_;
  SolveOptions opt_;
  int n_;
  std::vector<int> dist_;
  int ecc_ = 0;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<Vertex> by_distance_;
  std::vector<Vertex> parent_;
  std::vector<int> parent_cost_;
  std::vector<unsigned __int128> path_cost_;
  bool use_weight_ = false;
  std::vector<unsigned __int128> scale_;
  unsigned __int128 target_ = 0;

  std::vector<std::uint32_t> state_;
  std::uint64_t used_edges_ = 0;
  unsigned __int128 weight_ = 0;
  MoveSequence path_;
  std::unordered_set<std::string> failed_;
};

}  // namespace detail

struct SolveResult {
  bool solvable = false;
  std::optional<MoveSequence> witness;
};

/// Decides k-fold root-solvability under the given step costs and mode; a
/// positive answer carries a replayable witness.
inline SolveResult solvable(const Graph& g, const Distribution& d, Vertex root, const SolveOptions& opt = {}) {
  detail::RootedSearch search(g, root, opt);
  MoveSequence moves;
  SolveResult r;
  r.solvable = search.solve(d, &moves);
  if (r.solvable) r.witness = std::move(moves);
  return r;
}

struct AllRootsResult {
  bool solvable = false;
  std::optional<Vertex> failing_root;
};

/// Solvable for every root. Restricted modes are root-specific and rejected.
inline AllRootsResult solvable_all_roots(const Graph& g, const Distribution& d, const SolveOptions& opt = {}) {
  if (opt.mode != SolveMode::Unrestricted)
    throw InvalidParameter("restricted modes need a single root");
  for (Vertex r = 0; r < g.order(); ++r) {
    detail::RootedSearch search(g, r, opt);
    if (!search.solve(d, nullptr)) return {false, r};
  }
  return {true, std::nullopt};
}

}  // namespace pebbling
