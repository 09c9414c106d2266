#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pebbling/error.hpp"

namespace pebbling::lattice {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using Key = std::uint64_t;

inline cpp_int bin(std::int64_t n, std::int64_t w) {
  if (n < 0 || w < 0) throw InvalidParameter("bin needs non-negative arguments");
  if (w > n) return 0;
  cpp_int r = 1;
  for (std::int64_t i = 0; i < w; ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline cpp_int mul(std::int64_t n, std::int64_t w) {
  if (n < 0 || w < 0) throw InvalidParameter("mul needs non-negative arguments");
  if (w == 0) return 1;
  if (n == 0) return 0;
  return bin(n + w - 1, w);
}

/// Number of b-bounded weight-w multisets over n symbols, by inclusion-exclusion.
inline cpp_int bmul(std::int64_t n, std::int64_t w, int b) {
  if (n < 0 || w < 0 || b < 1) throw InvalidParameter("bmul needs n, w >= 0 and b >= 1");
  cpp_int total = 0;
  for (std::int64_t i = 0; i * (b + 1) <= w; ++i) {
    cpp_int term = bin(n, i) * mul(n, w - i * (b + 1));
    total += i % 2 ? -term : term;
  }
  return total;
}

/// bmul as a polynomial in a real number of symbols x.
inline long double bmul_real(long double x, std::int64_t w, int b) {
  if (w < 0 || b < 1) throw InvalidParameter("bmul needs w >= 0 and b >= 1");
  auto falling = [](long double y, std::int64_t k) {
    long double r = 1;
    for (std::int64_t i = 0; i < k; ++i) r *= (y - i) / (i + 1);
    return r;
  };
  auto rising = [](long double y, std::int64_t k) {
    long double r = 1;
    for (std::int64_t i = 0; i < k; ++i) r *= (y + i) / (i + 1);
    return r;
  };
  long double total = 0;
  for (std::int64_t i = 0; i * (b + 1) <= w; ++i) {
    long double term = falling(x, i) * rising(x, w - i * (b + 1));
    total += i % 2 ? -term : term;
  }
  return total;
}

inline std::int64_t to_int64(const cpp_int& v) {
  if (v > std::numeric_limits<std::int64_t>::max()) throw ResourceLimit("count exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

/// Multiplicity vector (m_1, ..., m_l) with trailing zeros trimmed.
struct BoundedMultiset {
  std::vector<int> mult;
  int b = 1;

  BoundedMultiset() = default;
  BoundedMultiset(std::vector<int> m, int bound) : mult(std::move(m)), b(bound) {
    if (b < 1) throw InvalidParameter("bound must be at least 1");
    for (int x : mult)
      if (x < 0 || x > b) throw InvalidParameter("multiplicity out of range");
    while (!mult.empty() && mult.back() == 0) mult.pop_back();
  }

  int weight() const {
    int w = 0;
    for (int x : mult) w += x;
    return w;
  }

  /// C(M) = sum m_i (b+1)^(i-1).
  Key key() const {
    Key k = 0, place = 1;
    for (int x : mult) {
      if (place > std::numeric_limits<Key>::max() / (b + 1) && x) throw ResourceLimit("colex key exceeds 64 bits");
      k += place * static_cast<Key>(x);
      place *= static_cast<Key>(b + 1);
    }
    return k;
  }

  static BoundedMultiset from_key(Key k, int b) {
    std::vector<int> m;
    for (; k; k /= static_cast<Key>(b + 1)) m.push_back(static_cast<int>(k % static_cast<Key>(b + 1)));
    return {m, b};
  }

  bool operator==(const BoundedMultiset& o) const { return b == o.b && mult == o.mult; }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < mult.size(); ++i)
      for (int c = 0; c < mult[i]; ++c) {
        s += (first ? "" : ",") + std::to_string(i + 1);
        first = false;
      }
    return s + "}";
  }
};

/// Number of members of BMS[w,b] before M in colex order.
inline cpp_int colex_rank(const BoundedMultiset& m) {
  cpp_int rank = 0;
  int wj = 0;
  for (std::size_t j = 0; j < m.mult.size(); ++j) {
    wj += m.mult[j];
    for (int i = 1; i <= m.mult[j]; ++i) rank += bmul(static_cast<std::int64_t>(j), wj + 1 - i, m.b);
  }
  return rank;
}

inline BoundedMultiset colex_unrank(cpp_int index, int w, int b) {
  if (w < 0 || b < 1 || index < 0) throw InvalidParameter("colex_unrank needs w >= 0, b >= 1, index >= 0");
  int l = 0;
  while (bmul(l, w, b) <= index) ++l;
  std::vector<int> m(l, 0);
  int left = w;
  for (int j = l; j >= 1; --j) {
    // skip values below m_j while the index lies beyond their block
    int a = 0;
    for (; a < std::min(b, left); ++a) {
      cpp_int block = bmul(j - 1, left - a, b);
      if (index < block) break;
      index -= block;
    }
    m[j - 1] = a;
    left -= a;
  }
  if (left != 0 || index != 0) throw InternalInvariant("colex_unrank did not consume the index");
  return {m, b};
}

/// |Col[v,w,b]| for the colex segment ending at the multiset v (inclusive).
inline cpp_int col(const std::vector<int>& v, int b) { return colex_rank(BoundedMultiset(v, b)) + 1; }

/// The displayed double sum, which starts at j = r + 1; it misses the block
/// of multisets below v that differ from v first at the position r.
inline cpp_int col_literal(const std::vector<int>& v, int b) {
  BoundedMultiset m(v, b);
  std::size_t r = 0;
  while (r < m.mult.size() && m.mult[r] == 0) ++r;
  cpp_int total = 0;
  int wj = 0;
  for (std::size_t j = 0; j < m.mult.size(); ++j) {
    wj += m.mult[j];
    if (j <= r) continue;
    for (int i = 1; i <= m.mult[j]; ++i) total += bmul(static_cast<std::int64_t>(j), wj + 1 - i, b);
  }
  return total;
}

/// The v with f = col[v,w,b], read off greedily from the largest position down.
inline std::vector<int> decompose(const cpp_int& f, int w, int b) {
  if (f < 1) throw InvalidParameter("decompose needs f >= 1");
  return colex_unrank(f - 1, w, b).mult;
}

/// The level v steps down to under the shadow: one fewer copy of its smallest
/// element.
inline std::vector<int> shadow_vector(const std::vector<int>& v) {
  std::vector<int> out = v;
  auto it = std::find_if(out.begin(), out.end(), [](int x) { return x > 0; });
  if (it == out.end()) throw InvalidParameter("the empty multiset has no shadow");
  --*it;
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

/// Members of one level, stored as sorted colex keys.
struct Family {
  int w = 0;
  int b = 1;
  std::vector<Key> keys;

  std::size_t size() const noexcept { return keys.size(); }
  std::vector<BoundedMultiset> members() const {
    std::vector<BoundedMultiset> out;
    for (Key k : keys) out.push_back(BoundedMultiset::from_key(k, b));
    return out;
  }
};

inline Family make_family(const std::vector<BoundedMultiset>& ms, int w, int b) {
  Family f{w, b, {}};
  for (auto& m : ms) {
    if (m.b != b || m.weight() != w) throw InvalidParameter("family members must share weight and bound");
    f.keys.push_back(m.key());
  }
  std::sort(f.keys.begin(), f.keys.end());
  if (std::adjacent_find(f.keys.begin(), f.keys.end()) != f.keys.end()) throw InvalidParameter("duplicate family member");
  return f;
}

inline Family family_from_ranks(const std::vector<std::int64_t>& ranks, int w, int b) {
  std::vector<BoundedMultiset> ms;
  for (auto r : ranks) ms.push_back(colex_unrank(r, w, b));
  return make_family(ms, w, b);
}

/// The first f members of BMS[w,b] in colex order.
inline Family first_f(std::int64_t f, int w, int b) {
  Family out{w, b, {}};
  if (f <= 0) return out;
  auto m = colex_unrank(f - 1, w, b);
  const int l = static_cast<int>(m.mult.size());
  // walk all multisets over the first l symbols and keep those up to v
  const Key last = m.key();
  std::vector<int> cur(l, 0);
  std::function<void(int, int)> go = [&](int i, int left) {
    if (i == l) {
      if (left) return;
      Key k = BoundedMultiset(cur, b).key();
      if (k <= last) out.keys.push_back(k);
      return;
    }
    for (int a = 0; a <= std::min(b, left); ++a) {
      cur[i] = a;
      go(i + 1, left - a);
    }
    cur[i] = 0;
  };
  go(0, w);
  std::sort(out.keys.begin(), out.keys.end());
  if (static_cast<std::int64_t>(out.keys.size()) != f) throw InternalInvariant("colex segment has the wrong size");
  return out;
}

/// Every member of BMSet[n,w,b], in colex order.
inline Family level(int n, int w, int b) {
  Family out{w, b, {}};
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> go = [&](int i, int left) {
    if (i == n) {
      if (!left) out.keys.push_back(BoundedMultiset(cur, b).key());
      return;
    }
    for (int a = 0; a <= std::min(b, left); ++a) {
      cur[i] = a;
      go(i + 1, left - a);
    }
    cur[i] = 0;
  };
  go(0, w);
  std::sort(out.keys.begin(), out.keys.end());
  return out;
}

inline std::vector<BoundedMultiset> shadow(const BoundedMultiset& m) {
  if (m.weight() < 1) throw InvalidParameter("shadow needs weight at least 1");
  std::vector<BoundedMultiset> out;
  for (std::size_t i = 0; i < m.mult.size(); ++i)
    if (m.mult[i] > 0) {
      auto a = m.mult;
      --a[i];
      out.emplace_back(a, m.b);
    }
  return out;
}

inline Family shadow(const Family& f) {
  if (f.w < 1) throw InvalidParameter("shadow needs weight at least 1");
  Family out{f.w - 1, f.b, {}};
  const Key base = static_cast<Key>(f.b + 1);
  for (Key k : f.keys) {
    Key place = 1;
    for (Key rest = k; rest; rest /= base, place *= base)
      if (rest % base) out.keys.push_back(k - place);
  }
  std::sort(out.keys.begin(), out.keys.end());
  out.keys.erase(std::unique(out.keys.begin(), out.keys.end()), out.keys.end());
  return out;
}

struct ClReport {
  std::vector<int> v;
  std::int64_t shad_actual = 0;
  std::int64_t shad_bound = 0;
  bool holds = false;
};

/// Compares shad[F] with the colex-segment shadow of a family of the same size.
inline ClReport cl_check(const Family& f) {
  ClReport rep;
  rep.shad_actual = f.w >= 1 ? static_cast<std::int64_t>(shadow(f).size()) : 0;
  if (f.size() == 0 || f.w == 0) {
    rep.holds = true;
    return rep;
  }
  rep.v = decompose(f.size(), f.w, f.b);
  rep.shad_bound = to_int64(col(shadow_vector(rep.v), f.b));
  rep.holds = rep.shad_actual >= rep.shad_bound;
  return rep;
}

/// The real x with bmul[x,w,b] = f: the smallest integer n with bmul >= f,
/// then bisection on [n-1, n], where the value crosses f.
inline long double solve_x(std::int64_t f, int w, int b) {
  if (f < 1 || w < 0 || b < 1) throw InvalidParameter("solve_x needs f >= 1, w >= 0, b >= 1");
  if (w == 0) {
    if (f != 1) throw InvalidParameter("level 0 has a single member");
    return 0;
  }
  std::int64_t n = 1;
  while (bmul(n, w, b) < f) ++n;
  if (bmul(n, w, b) == f) return static_cast<long double>(n);
  long double lo = n - 1, hi = n;
  const long double target = static_cast<long double>(f);
  while (hi - lo > 1e-12L) {
    long double mid = (lo + hi) / 2;
    (bmul_real(mid, w, b) < target ? lo : hi) = mid;
  }
  return hi;
}

struct LovaszReport {
  long double x = 0;
  long double bound = 0;
  std::int64_t shad = 0;
  bool holds = false;
  /// x >= w/(b+1) + 1, the range where bmul is known to increase in x.
  bool in_domain = false;
};

namespace detail {

inline LovaszReport lovasz_form(const Family& f) {
  if (f.size() == 0 || f.w < 1) throw InvalidParameter("need a nonempty family of positive weight");
  LovaszReport rep;
  rep.x = solve_x(static_cast<std::int64_t>(f.size()), f.w, f.b);
  rep.bound = bmul_real(rep.x, f.w - 1, f.b);
  rep.shad = static_cast<std::int64_t>(shadow(f).size());
  rep.in_domain = rep.x * (f.b + 1) >= f.w + f.b + 1;
  // x comes from bisection, so allow the bound a relative slack of 1e-9
  rep.holds = static_cast<long double>(rep.shad) >= rep.bound - 1e-9L * std::max<long double>(1, rep.bound);
  return rep;
}

}  // namespace detail

inline LovaszReport lovasz_check(const Family& f) {
  if (f.b != 1) throw InvalidParameter("lovasz_check is for sets (b = 1)");
  return detail::lovasz_form(f);
}

/// The multiset analogue for b > 1. A failure would be a counterexample to
/// the conjectured bound, not a bug.
inline LovaszReport genlov_check(const Family& f) {
  if (f.b < 2) throw InvalidParameter("genlov_check is for b > 1");
  return detail::lovasz_form(f);
}

struct GenlovSweep {
  std::int64_t checked = 0;
  std::vector<std::pair<int, std::int64_t>> failures;  // (w, f)
};

/// genlov_check on every colex segment of BMSet[nmax,w,b] for 1 <= w <= wmax.
inline GenlovSweep genlov_segments(int wmax, int b, int nmax) {
  GenlovSweep out;
  for (int w = 1; w <= wmax; ++w) {
    const std::int64_t total = to_int64(bmul(nmax, w, b));
    for (std::int64_t f = 1; f <= total; ++f) {
      ++out.checked;
      if (!genlov_check(first_f(f, w, b)).holds) out.failures.push_back({w, f});
    }
  }
  return out;
}

namespace detail {

inline cpp_rational pow(cpp_rational x, int e) {
  cpp_rational r = 1;
  while (e-- > 0) r *= x;
  return r;
}

}  // namespace detail

/// p(F)^(b-1) - p(Shad F)^b for F the colex segment of BMSet[n,b,b] ending at
/// the multiset holding s with multiplicity b, from the closed forms.
inline cpp_rational supernormal_gap(int n, int b, int s) {
  if (!(2 <= s && s < n) || b < 2) throw InvalidParameter("supernormal_gap needs 2 <= s < n and b >= 2");
  cpp_rational pf(bin(s + b - 1, b), bin(n + b - 1, b));
  cpp_rational ps(bin(s + b - 2, b - 1), bin(n + b - 2, b - 1));
  return detail::pow(pf, b - 1) - detail::pow(ps, b);
}

/// The same gap recomputed from explicit families on n symbols.
inline cpp_rational supernormal_gap_explicit(int n, int b, int s) {
  if (!(2 <= s && s < n) || b < 2) throw InvalidParameter("supernormal_gap needs 2 <= s < n and b >= 2");
  std::vector<int> v(s, 0);
  v[s - 1] = b;
  const Key last = BoundedMultiset(v, b).key();
  Family top = level(n, b, b);
  Family f{b, b, {}};
  for (Key k : top.keys)
    if (k <= last) f.keys.push_back(k);
  Family sh = shadow(f);
  Family below = level(n, b - 1, b);
  cpp_rational pf(static_cast<std::int64_t>(f.size()), static_cast<std::int64_t>(top.size()));
  cpp_rational ps(static_cast<std::int64_t>(sh.size()), static_cast<std::int64_t>(below.size()));
  return detail::pow(pf, b - 1) - detail::pow(ps, b);
}

/// Normalized matching between levels u < w of BMSet{n,b}: for every size f
/// the (w-u)-fold shadow of the colex segment of size f, which is the
/// smallest possible, must cover at least the fraction f/|level w| of level u.
inline bool normal_check(int n, int b, int u, int w, std::int64_t max_level = 20000) {
  if (n < 1 || b < 1 || !(0 < u && u < w && w <= n * b)) throw InvalidParameter("normal_check needs 0 < u < w <= nb");
  const std::int64_t top = to_int64(bmul(n, w, b));
  const std::int64_t bottom = to_int64(bmul(n, u, b));
  if (top > max_level) throw ResourceLimit("level too large for normal_check");
  for (std::int64_t f = 1; f <= top; ++f) {
    Family cur = first_f(f, w, b);
    while (cur.w > u) cur = shadow(cur);
    if (static_cast<std::int64_t>(cur.size()) * top < f * bottom) return false;
  }
  return true;
}

/// Smallest shadow over all families of each size in BMSet[n,w,b]; index f
/// holds the minimum for |F| = f. The level must have at most 20 members.
inline std::vector<std::int64_t> min_shadow_by_size(int n, int w, int b) {
  Family all = level(n, w, b);
  const int m = static_cast<int>(all.size());
  if (m > 20) throw ResourceLimit("level too large for exhaustive families");
  std::vector<std::int64_t> best(m + 1, std::numeric_limits<std::int64_t>::max());
  best[0] = 0;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    Family f{w, b, {}};
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) f.keys.push_back(all.keys[i]);
    const int size = static_cast<int>(f.size());
    best[size] = std::min<std::int64_t>(best[size], static_cast<std::int64_t>(shadow(f).size()));
  }
  return best;
}

}  // namespace pebbling::lattice
