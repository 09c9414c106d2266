#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pebbling/error.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/solver.hpp"

namespace pebbling {

enum class Family {
  Path,
  Cycle,
  Complete,
  Star,
  Wheel,
  Hypercube,
  Grid,
  Kneser,
  Petersen,
  Lemke,
  FosterSnevily,
  Wang
};

struct FamilySpec {
  Family name;
  std::vector<int> params;
};

namespace detail {

struct FamilyName {
  Family family;
  const char* text;
};

inline constexpr std::array<FamilyName, 12> kFamilyNames{{
    {Family::Path, "path"},
    {Family::Cycle, "cycle"},
    {Family::Complete, "complete"},
    {Family::Star, "star"},
    {Family::Wheel, "wheel"},
    {Family::Hypercube, "hypercube"},
    {Family::Grid, "grid"},
    {Family::Kneser, "kneser"},
    {Family::Petersen, "petersen"},
    {Family::Lemke, "lemke"},
    {Family::FosterSnevily, "foster_snevily"},
    {Family::Wang, "wang"},
}};

inline void need_params(const FamilySpec& s, std::size_t lo, std::size_t hi) {
  if (s.params.size() < lo || s.params.size() > hi)
    throw InvalidParameter("wrong number of family parameters");
}

}  // namespace detail

inline std::string to_string(Family f) {
  for (auto& e : detail::kFamilyNames)
    if (e.family == f) return e.text;
  return "?";
}

/// Parses "name" or "name:p1,p2,..." such as "cycle:7", "grid:2,1,1",
/// "kneser:5,2", "wang:1" or "petersen".
inline FamilySpec parse_family(const std::string& text) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  std::optional<Family> family;
  for (auto& e : detail::kFamilyNames)
    if (name == e.text) family = e.family;
  if (!family) throw InvalidParameter("unknown family '" + name + "'");
  FamilySpec spec{*family, {}};
  if (colon != std::string::npos) {
    std::stringstream in(text.substr(colon + 1));
    std::string item;
    while (std::getline(in, item, ',')) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(item, &used);
      } catch (const std::exception&) {
        throw InvalidParameter("bad family parameter '" + item + "'");
      }
      if (used != item.size() || v < 0 || v > 1'000'000) throw InvalidParameter("bad family parameter '" + item + "'");
      spec.params.push_back(static_cast<int>(v));
    }
    if (spec.params.empty()) throw InvalidParameter("empty family parameter list");
  }
  return spec;
}

inline std::string to_string(const FamilySpec& s) {
  std::string out = to_string(s.name);
  for (std::size_t i = 0; i < s.params.size(); ++i) out += (i ? "," : ":") + std::to_string(s.params[i]);
  return out;
}

inline Graph path_graph(int v) {
  if (v < 1) throw InvalidParameter("path needs at least one vertex");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < v; ++i) e.push_back({i, i + 1});
  return Graph(v, e);
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw InvalidParameter("cycle needs at least three vertices");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, e);
}

inline Graph complete_graph(int n) {
  if (n < 1) throw InvalidParameter("complete graph needs at least one vertex");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

/// K_{1,n-1}; vertex 0 is the centre.
inline Graph star_graph(int n) {
  if (n < 2) throw InvalidParameter("star needs at least two vertices");
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i) e.push_back({0, i});
  return Graph(n, e);
}

/// Hub 0 joined to the cycle 1..n-1.
inline Graph wheel_graph(int n) {
  if (n < 4) throw InvalidParameter("wheel needs at least four vertices");
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i) {
    e.push_back({0, i});
    e.push_back({i, i == n - 1 ? 1 : i + 1});
  }
  return Graph(n, e);
}

inline Graph hypercube_graph(int m) {
  if (m < 0 || m > 16) throw InvalidParameter("hypercube dimension out of range");
  const int n = 1 << m;
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < m; ++j)
      if (!(v >> j & 1)) e.push_back({v, v | 1 << j});
  return Graph(n, e);
}

/// Product of paths with d_i edges; coordinates are row-major with the first
/// dimension most significant. `dimension_of_edge` receives each edge's axis.
inline Graph grid_graph(const std::vector<int>& dims, std::vector<int>* dimension_of_edge = nullptr) {
  if (dims.empty()) throw InvalidParameter("grid needs at least one dimension");
  long long n = 1;
  for (int d : dims) {
    if (d < 1) throw InvalidParameter("grid dimensions must be positive");
    n *= d + 1;
    if (n > 1'000'000) throw InvalidParameter("grid too large");
  }
  const int m = static_cast<int>(dims.size());
  std::vector<long long> stride(m, 1);
  for (int i = m - 2; i >= 0; --i) stride[i] = stride[i + 1] * (dims[i + 1] + 1);
  std::vector<Edge> e;
  std::vector<int> axis;
  for (long long v = 0; v < n; ++v)
    for (int i = 0; i < m; ++i) {
      long long coord = v / stride[i] % (dims[i] + 1);
      if (coord < dims[i]) {
        e.push_back({static_cast<int>(v), static_cast<int>(v + stride[i])});
        axis.push_back(i);
      }
    }
  Graph g(static_cast<int>(n), e);
  if (dimension_of_edge) {
    dimension_of_edge->assign(g.size(), 0);
    for (std::size_t j = 0; j < e.size(); ++j) (*dimension_of_edge)[g.edge_id(e[j].u, e[j].v)] = axis[j];
  }
  return g;
}

/// Per-edge costs for p-bar pebbling on a grid: a step along axis i costs p_i.
inline Costs grid_costs(const std::vector<int>& dims, const std::vector<int>& ps) {
  if (ps.size() != dims.size()) throw InvalidParameter("need one cost per grid dimension");
  std::vector<int> axis;
  grid_graph(dims, &axis);
  std::vector<int> table;
  for (int a : axis) table.push_back(ps[a]);
  return Costs::per_edge(table);
}

/// t-subsets of {0..n-1}, numbered in colex order, adjacent when disjoint.
inline Graph kneser_graph(int n, int t) {
  if (t < 1 || n < 2 * t + 1 || n > 20) throw InvalidParameter("kneser needs t >= 1 and n >= 2t+1");
  std::vector<std::uint32_t> sets;
  for (std::uint32_t s = 0; s < (1u << n); ++s)
    if (std::popcount(s) == t) sets.push_back(s);
  // ascending bitmask order is colex order
  std::vector<Edge> e;
  for (int i = 0; i < static_cast<int>(sets.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(sets.size()); ++j)
      if (!(sets[i] & sets[j])) e.push_back({i, j});
  return Graph(static_cast<int>(sets.size()), e);
}

/// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
inline Graph petersen_graph() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5});
    e.push_back({i, i + 5});
    e.push_back({5 + i, 5 + (i + 2) % 5});
  }
  return Graph(10, e);
}

/// Vertex numbers of the Lemke graph's labels a, b, c, d, w, x, y, z.
namespace lemke_label {
inline constexpr Vertex a = 0, b = 1, c = 2, d = 3, w = 4, x = 5, y = 6, z = 7;
}

namespace detail {

/// L_k (clique = false) or W_k (clique = true). New vertices are appended;
/// after each round the four edges at a lead to the newest four vertices.
inline Graph lemke_sequence(int k, bool clique) {
  using namespace lemke_label;
  if (k < 0 || k > 1000) throw InvalidParameter("sequence index out of range");
  std::vector<Edge> e{{a, b}, {a, c}, {a, d}, {b, w}, {b, z}, {c, w}, {c, z}, {d, w}, {d, z}, {w, x}, {x, y}, {y, z}, {z, a}};
  std::vector<Vertex> ends{b, c, d, z};
  int n = 8;
  for (int round = 0; round < k; ++round) {
    std::vector<Vertex> fresh;
    for (Vertex& end : ends) {
      Vertex s = n++;
      auto it = std::find_if(e.begin(), e.end(), [&](const Edge& x) {
        return (x.u == a && x.v == end) || (x.v == a && x.u == end);
      });
      *it = {end, s};
      e.push_back({a, s});
      fresh.push_back(s);
      end = s;
    }
    if (clique)
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) e.push_back({fresh[i], fresh[j]});
  }
  return Graph(n, e);
}

}  // namespace detail

inline Graph lemke_graph() { return detail::lemke_sequence(0, false); }
inline Graph foster_snevily_graph(int k) { return detail::lemke_sequence(k, false); }
inline Graph wang_graph(int k) { return detail::lemke_sequence(k, true); }

inline Graph generate(const FamilySpec& s) {
  using detail::need_params;
  switch (s.name) {
    case Family::Path: need_params(s, 1, 1); return path_graph(s.params[0]);
    case Family::Cycle: need_params(s, 1, 1); return cycle_graph(s.params[0]);
    case Family::Complete: need_params(s, 1, 1); return complete_graph(s.params[0]);
    case Family::Star: need_params(s, 1, 1); return star_graph(s.params[0]);
    case Family::Wheel: need_params(s, 1, 1); return wheel_graph(s.params[0]);
    case Family::Hypercube: need_params(s, 1, 1); return hypercube_graph(s.params[0]);
    case Family::Grid: need_params(s, 1, 16); return grid_graph(s.params);
    case Family::Kneser: need_params(s, 2, 2); return kneser_graph(s.params[0], s.params[1]);
    case Family::Petersen: need_params(s, 0, 0); return petersen_graph();
    case Family::Lemke: need_params(s, 0, 0); return lemke_graph();
    case Family::FosterSnevily: need_params(s, 1, 1); return foster_snevily_graph(s.params[0]);
    case Family::Wang: need_params(s, 1, 1); return wang_graph(s.params[0]);
  }
  throw InvalidParameter("unknown family");
}

using boost::multiprecision::cpp_int;

/// Closed-form pebbling number where one is known; nullopt means unknown.
/// `ps` gives per-dimension step costs and is accepted only for grids.
inline std::optional<cpp_int> formula(const FamilySpec& s, const std::optional<std::vector<int>>& ps = std::nullopt) {
  using detail::need_params;
  if (ps && s.name != Family::Grid) throw InvalidParameter("step costs are only accepted for grids");
  auto pow2 = [](int e) { return cpp_int(1) << e; };
  switch (s.name) {
    case Family::Path:
      need_params(s, 1, 1);
      if (s.params[0] < 1) throw InvalidParameter("path needs at least one vertex");
      return pow2(s.params[0] - 1);
    case Family::Cycle: {
      need_params(s, 1, 1);
      const int n = s.params[0];
      if (n < 3) throw InvalidParameter("cycle needs at least three vertices");
      const int k = n / 2;
      if (n % 2 == 0) return pow2(k);
      return 2 * (pow2(k + 1) / 3) + 1;
    }
    case Family::Complete:
      need_params(s, 1, 1);
      if (s.params[0] < 1) throw InvalidParameter("complete graph needs at least one vertex");
      return cpp_int(s.params[0]);
    case Family::Hypercube:
      need_params(s, 1, 1);
      return pow2(s.params[0]);
    case Family::Grid: {
      need_params(s, 1, 16);
      std::vector<int> costs = ps.value_or(std::vector<int>(s.params.size(), 2));
      if (costs.size() != s.params.size()) throw InvalidParameter("need one cost per grid dimension");
      cpp_int f = 1;
      for (std::size_t i = 0; i < costs.size(); ++i) {
        if (costs[i] < 2) throw InvalidParameter("pebbling cost must be at least 2");
        if (s.params[i] < 1) throw InvalidParameter("grid dimensions must be positive");
        f *= boost::multiprecision::pow(cpp_int(costs[i]), static_cast<unsigned>(s.params[i]));
      }
      return f;
    }
    default:
      generate(s);  // validates parameters
      return std::nullopt;
  }
}

}  // namespace pebbling
