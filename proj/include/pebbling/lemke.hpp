#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pebbling/error.hpp"
#include "pebbling/families.hpp"
#include "pebbling/solver.hpp"

namespace pebbling::lemke {

using boost::multiprecision::cpp_int;
using Coords = std::vector<int>;

/// A merged pebble: the original indices it stands for, the sum of their
/// values, the sum of gcd(x_j, q), and where it sits in the grid.
struct TrackedPebble {
  std::vector<int> indices;
  cpp_int val;
  std::int64_t gcdsum = 0;
  Coords pos;
};

struct Factorization {
  std::vector<std::int64_t> primes;
  std::vector<int> exponents;
};

inline Factorization factorize(std::int64_t q) {
  if (q < 1) throw InvalidParameter("modulus must be positive");
  Factorization f;
  for (std::int64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    int e = 0;
    while (q % p == 0) {
      q /= p;
      ++e;
    }
    f.primes.push_back(p);
    f.exponents.push_back(e);
  }
  if (q > 1) {
    f.primes.push_back(q);
    f.exponents.push_back(1);
  }
  return f;
}

/// Pebbles on the grid P_d with d the exponent vector of q.
class GridState {
 public:
  GridState(std::int64_t q, Factorization f) : q_(q), f_(std::move(f)) {}

  std::int64_t modulus() const noexcept { return q_; }
  int dimensions() const noexcept { return static_cast<int>(f_.primes.size()); }
  std::int64_t prime(int i) const { return f_.primes.at(i); }
  int exponent(int i) const { return f_.exponents.at(i); }
  const std::map<Coords, std::vector<TrackedPebble>>& cells() const noexcept { return cells_; }

  const std::vector<TrackedPebble>& at(const Coords& u) const {
    static const std::vector<TrackedPebble> none;
    auto it = cells_.find(u);
    return it == cells_.end() ? none : it->second;
  }

  std::size_t pebble_count() const {
    std::size_t n = 0;
    for (auto& [u, ps] : cells_) n += ps.size();
    return n;
  }

  /// p^(d - c) for a position c.
  cpp_int room(const Coords& c) const {
    cpp_int r = 1;
    for (int i = 0; i < dimensions(); ++i)
      for (int e = c[i]; e < exponent(i); ++e) r *= prime(i);
    return r;
  }

  bool well_placed(const TrackedPebble& b) const {
    const cpp_int r = room(b.pos);
    return b.val % r == 0 && cpp_int(b.gcdsum) <= r;
  }

  void add(TrackedPebble b) {
    if (static_cast<int>(b.pos.size()) != dimensions()) throw InvalidParameter("pebble position has wrong dimension");
    for (int i = 0; i < dimensions(); ++i)
      if (b.pos[i] < 0 || b.pos[i] > exponent(i)) throw InvalidParameter("pebble position out of bounds");
    Coords at = b.pos;
    cells_[at].push_back(std::move(b));
  }

  std::vector<TrackedPebble> take(const Coords& u) {
    auto it = cells_.find(u);
    if (it == cells_.end()) return {};
    auto out = std::move(it->second);
    cells_.erase(it);
    return out;
  }

 private:
  std::int64_t q_;
  Factorization f_;
  std::map<Coords, std::vector<TrackedPebble>> cells_;
};

/// Indices (0-based) of a nonempty block whose sum is divisible by q, found
/// from two equal prefix sums modulo q.
inline std::vector<int> pigeonhole_subset(const std::vector<std::int64_t>& xs, std::int64_t q) {
  if (q < 1 || static_cast<std::int64_t>(xs.size()) != q) throw InvalidParameter("need exactly q numbers");
  std::map<std::int64_t, int> first{{0, 0}};
  std::int64_t s = 0;
  for (int j = 0; j < static_cast<int>(xs.size()); ++j) {
    s = ((s + xs[j] % q) % q + q) % q;
    auto [it, fresh] = first.emplace(s, j + 1);
    if (!fresh) {
      std::vector<int> block(j + 1 - it->second);
      std::iota(block.begin(), block.end(), it->second);
      return block;
    }
  }
  throw InternalInvariant("pigeonhole failed");
}

inline GridState initial_placement(const std::vector<std::int64_t>& xs, std::int64_t q) {
  if (q < 1 || static_cast<std::int64_t>(xs.size()) != q) throw InvalidParameter("need exactly q numbers");
  GridState state(q, factorize(q));
  for (int j = 0; j < static_cast<int>(xs.size()); ++j) {
    if (xs[j] < 1) throw InvalidParameter("numbers must be positive");
    const std::int64_t g = std::gcd(xs[j], q);
    std::int64_t rest = q / g;
    Coords c(state.dimensions(), 0);
    for (int i = 0; i < state.dimensions(); ++i)
      while (rest % state.prime(i) == 0) {
        rest /= state.prime(i);
        ++c[i];
      }
    state.add({{j}, xs[j], g, c});
  }
  return state;
}

struct Step {
  Coords from;
  int dim;
  std::vector<int> merged;  // indices of the pebble that moved on
};

/// Numerical pebbling operation at u along dimension i: take the p_i pebbles
/// with the smallest gcd sums, merge a block B whose value is divisible by
/// p_i^(d_i - u_i + 1), put B on u - e_i and discard the rest of the p_i.
inline Step select_and_step(GridState& s, const Coords& u, int i) {
  if (i < 0 || i >= s.dimensions()) throw PreconditionViolated("dimension out of range");
  const std::int64_t p = s.prime(i);
  if (static_cast<int>(u.size()) != s.dimensions() || u[i] < 1) throw PreconditionViolated("cannot step below zero");
  auto pebbles = s.take(u);
  if (static_cast<std::int64_t>(pebbles.size()) < p) {
    for (auto& b : pebbles) s.add(std::move(b));
    throw PreconditionViolated("fewer than p_i pebbles at the cell");
  }
  std::stable_sort(pebbles.begin(), pebbles.end(),
                   [](const TrackedPebble& a, const TrackedPebble& b) { return a.gcdsum < b.gcdsum; });
  std::vector<TrackedPebble> w(std::make_move_iterator(pebbles.begin()), std::make_move_iterator(pebbles.begin() + p));
  for (auto it = pebbles.begin() + p; it != pebbles.end(); ++it) s.add(std::move(*it));

  const int b = s.exponent(i) - u[i] + 1;
  cpp_int unit = 1;
  for (int e = 0; e < b - 1; ++e) unit *= p;
  std::map<std::int64_t, int> first{{0, 0}};
  cpp_int prefix = 0;
  int lo = -1, hi = -1;
  for (int j = 0; j < static_cast<int>(w.size()); ++j) {
    if (w[j].val % unit != 0) throw InternalInvariant("pebble not well placed before a step");
    prefix = (prefix + w[j].val / unit) % p;
    auto [it, fresh] = first.emplace(static_cast<std::int64_t>(prefix), j + 1);
    if (!fresh) {
      lo = it->second;
      hi = j + 1;
      break;
    }
  }
  if (lo < 0) throw InternalInvariant("no divisible block among p_i pebbles");
  TrackedPebble merged{{}, 0, 0, u};
  merged.pos[i] -= 1;
  for (int j = lo; j < hi; ++j) {
    merged.indices.insert(merged.indices.end(), w[j].indices.begin(), w[j].indices.end());
    merged.val += w[j].val;
    merged.gcdsum += w[j].gcdsum;
  }
  std::sort(merged.indices.begin(), merged.indices.end());
  if (!s.well_placed(merged)) throw InternalInvariant("merged pebble is not well placed");
  Step step{u, i, merged.indices};
  s.add(std::move(merged));
  return step;
}

struct Solution {
  std::vector<int> indices;  // 0-based, sorted
  cpp_int sum;
  std::int64_t gcd_sum = 0;
  std::vector<Step> certificate;
  /// True when the dimension sweep stalled and the greedy solver supplied
  /// the schedule instead.
  bool used_search = false;
};

inline bool verify(const std::vector<std::int64_t>& xs, std::int64_t q, const std::vector<int>& indices) {
  if (indices.empty()) return false;
  std::set<int> seen;
  cpp_int sum = 0;
  std::int64_t g = 0;
  for (int j : indices) {
    if (j < 0 || j >= static_cast<int>(xs.size()) || !seen.insert(j).second) return false;
    sum += xs[j];
    g += std::gcd(xs[j], q);
  }
  return sum % q == 0 && g <= q;
}

namespace detail {

inline std::optional<Coords> origin_pebble(const GridState& s) {
  Coords zero(s.dimensions(), 0);
  if (!s.at(zero).empty()) return zero;
  return std::nullopt;
}

/// Sweeps the last dimension down first, then the next, repeating passes
/// until a pebble reaches the origin or nothing moves.
inline bool sweep(GridState& s, std::vector<Step>& log, bool check) {
  for (;;) {
    if (origin_pebble(s)) return true;
    bool moved = false;
    for (int i = s.dimensions() - 1; i >= 0; --i) {
      for (;;) {
        const Coords* best = nullptr;
        for (auto& [u, ps] : s.cells())
          if (u[i] >= 1 && static_cast<std::int64_t>(ps.size()) >= s.prime(i) && (!best || u[i] > (*best)[i] ||
                                                                                   (u[i] == (*best)[i] && u > *best)))
            best = &u;
        if (!best) break;
        Coords u = *best;
        log.push_back(select_and_step(s, u, i));
        moved = true;
        if (check)
          for (auto& [c, ps] : s.cells())
            for (auto& b : ps)
              if (!s.well_placed(b)) throw InternalInvariant("well-placedness lost");
        if (origin_pebble(s)) return true;
      }
    }
    if (!moved) return false;
  }
}

/// Greedy p-bar pebbling search on the cell counts, replayed numerically.
inline bool searched(GridState& s, std::vector<Step>& log, bool check) {
  std::vector<int> dims;
  std::vector<int> ps;
  for (int i = 0; i < s.dimensions(); ++i) {
    dims.push_back(s.exponent(i));
    ps.push_back(static_cast<int>(s.prime(i)));
  }
  std::vector<int> axis;
  Graph grid = grid_graph(dims, &axis);
  std::vector<int> stride(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) stride[i] = stride[i + 1] * (dims[i + 1] + 1);
  auto vertex_of = [&](const Coords& c) {
    int v = 0;
    for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * stride[i];
    return v;
  };
  auto coords_of = [&](int v) {
    Coords c(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) c[i] = v / stride[i] % (dims[i] + 1);
    return c;
  };
  Distribution d(grid.order());
  for (auto& [u, cell] : s.cells()) d[vertex_of(u)] += static_cast<int>(cell.size());
  SolveOptions opt;
  opt.mode = SolveMode::Greedy;
  opt.costs = grid_costs(dims, ps);
  auto res = solvable(grid, d, 0, opt);
  if (!res.solvable) return false;
  for (const Move& m : *res.witness) {
    int i = axis[grid.edge_id(m.from, m.to)];
    log.push_back(select_and_step(s, coords_of(m.from), i));
    if (check)
      for (auto& [c, cell] : s.cells())
        for (auto& b : cell)
          if (!s.well_placed(b)) throw InternalInvariant("well-placedness lost");
  }
  return origin_pebble(s).has_value();
}

}  // namespace detail

/// A nonempty I with q | sum_{i in I} x_i and sum gcd(q, x_i) <= q, found by
/// numerical pebbling on the grid of q's prime factorization.
inline Solution solve(const std::vector<std::int64_t>& xs, std::int64_t q, bool check = false) {
  GridState s = initial_placement(xs, q);
  if (check)
    for (auto& [c, ps] : s.cells())
      for (auto& b : ps)
        if (!s.well_placed(b)) throw InternalInvariant("initial pebble not well placed");
  Solution sol;
  if (!detail::sweep(s, sol.certificate, check)) {
    s = initial_placement(xs, q);
    sol.certificate.clear();
    sol.used_search = true;
    if (!detail::searched(s, sol.certificate, check)) throw InternalInvariant("no pebble reached the origin");
  }
  const auto& winner = s.at(*detail::origin_pebble(s)).front();
  sol.indices = winner.indices;
  sol.sum = winner.val;
  sol.gcd_sum = winner.gcdsum;
  if (!verify(xs, q, sol.indices)) throw InternalInvariant("solution failed verification");
  return sol;
}

/// Replays a certificate from the initial placement, checking every pebble
/// after every step; returns the final state.
inline GridState replay_certificate(const std::vector<std::int64_t>& xs, std::int64_t q, const std::vector<Step>& steps) {
  GridState s = initial_placement(xs, q);
  for (const Step& st : steps) {
    auto got = select_and_step(s, st.from, st.dim);
    if (got.merged != st.merged) throw InternalInvariant("certificate step does not reproduce");
    for (auto& [c, ps] : s.cells())
      for (auto& b : ps)
        if (!s.well_placed(b)) throw InternalInvariant("well-placedness lost during replay");
  }
  return s;
}

/// The lexicographically least feasible index set (0-based), or nullopt.
inline std::optional<std::vector<int>> brute_force(const std::vector<std::int64_t>& xs, std::int64_t q) {
  if (q > 20) throw ResourceLimit("brute force is limited to q <= 20");
  if (q < 1 || static_cast<std::int64_t>(xs.size()) != q) throw InvalidParameter("need exactly q numbers");
  std::vector<int> cur;
  std::optional<std::vector<int>> found;
  std::function<bool(int, std::int64_t, std::int64_t)> go = [&](int next, std::int64_t sum_mod, std::int64_t g) {
    for (int j = next; j < q; ++j) {
      const std::int64_t gj = std::gcd(xs[j], q);
      if (g + gj > q) continue;
      cur.push_back(j);
      const std::int64_t s = (sum_mod + xs[j] % q) % q;
      if (s == 0) {
        found = cur;
        return true;
      }
      if (go(j + 1, s, g + gj)) return true;
      cur.pop_back();
    }
    return false;
  };
  go(0, 0, 0);
  return found;
}

/// sum_{i in I} x_i <= lcm(q, x_1, ..., x_q).
inline bool erdos_lemke_bound(const std::vector<std::int64_t>& xs, std::int64_t q, const std::vector<int>& indices) {
  cpp_int l = q;
  for (auto x : xs) l = boost::multiprecision::lcm(l, cpp_int(x));
  cpp_int sum = 0;
  for (int j : indices) sum += xs[j];
  return sum <= l;
}

inline std::string format_step(const Step& st) {
  std::ostringstream out;
  auto coords = [&](const Coords& c) {
    out << '(';
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    out << ')';
  };
  coords(st.from);
  out << " --dim " << st.dim + 1 << "--> ";
  Coords to = st.from;
  to[st.dim] -= 1;
  coords(to);
  out << ": merged {";
  for (std::size_t i = 0; i < st.merged.size(); ++i) out << (i ? "," : "") << st.merged[i] + 1;
  out << '}';
  return out.str();
}

}  // namespace pebbling::lemke
