#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pebbling/error.hpp"
#include "pebbling/graph.hpp"

namespace pebbling {

/// Edge-disjoint paths covering a tree, each stored as its vertex sequence.
/// For rooted partitions every path starts at its vertex nearest the root.
struct PathPartition {
  std::vector<std::vector<Vertex>> paths;

  /// Path lengths in nonincreasing order.
  std::vector<int> lengths() const {
    std::vector<int> q;
    for (auto& p : paths) q.push_back(static_cast<int>(p.size()) - 1);
    std::sort(q.rbegin(), q.rend());
    return q;
  }
};

/// True when `a` majorizes `b`: at the first index where the nonincreasing
/// length sequences differ, `a` is larger.
inline bool majorizes(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace detail {

struct RootedTree {
  std::vector<Vertex> parent;
  std::vector<std::vector<Vertex>> children;
  std::vector<int> height;  // edges on the longest downward chain
  std::vector<Vertex> order;  // BFS order from the root
};

inline RootedTree root_tree(const Graph& t, Vertex r) {
  if (!t.is_tree()) throw NotATree();
  if (r < 0 || r >= t.order()) throw InvalidParameter("root out of range");
  const int n = t.order();
  RootedTree rt{std::vector<Vertex>(n, -1), std::vector<std::vector<Vertex>>(n), std::vector<int>(n, 0), {}};
  std::vector<char> seen(n, 0);
  rt.order.push_back(r);
  seen[r] = 1;
  for (std::size_t i = 0; i < rt.order.size(); ++i) {
    Vertex u = rt.order[i];
    for (Vertex v : t.neighbors(u))
      if (!seen[v]) {
        seen[v] = 1;
        rt.parent[v] = u;
        rt.children[u].push_back(v);
        rt.order.push_back(v);
      }
  }
  for (auto it = rt.order.rbegin(); it != rt.order.rend(); ++it)
    for (Vertex c : rt.children[*it]) rt.height[*it] = std::max(rt.height[*it], rt.height[c] + 1);
  return rt;
}

}  // namespace detail

/// An r-maximum r-path partition: each path runs down from its top vertex,
/// continuing at every vertex into the tallest child.
inline PathPartition max_rooted_path_partition(const Graph& t, Vertex r) {
  auto rt = detail::root_tree(t, r);
  PathPartition out;
  std::vector<std::pair<Vertex, Vertex>> starts;
  for (Vertex c : rt.children[r]) starts.push_back({r, c});
  while (!starts.empty()) {
    auto [top, v] = starts.back();
    starts.pop_back();
    std::vector<Vertex> path{top, v};
    for (;;) {
      const auto& kids = rt.children[v];
      if (kids.empty()) break;
      Vertex tallest = *std::max_element(kids.begin(), kids.end(), [&](Vertex a, Vertex b) {
        return rt.height[a] < rt.height[b];
      });
      for (Vertex c : kids)
        if (c != tallest) starts.push_back({v, c});
      path.push_back(tallest);
      v = tallest;
    }
    out.paths.push_back(std::move(path));
  }
  return out;
}

/// A maximum path partition: the best r-maximum partition over all roots.
inline PathPartition max_path_partition(const Graph& t, std::optional<Vertex> r = std::nullopt) {
  if (r) return max_rooted_path_partition(t, *r);
  if (!t.is_tree()) throw NotATree();
  PathPartition best = max_rooted_path_partition(t, 0);
  for (Vertex v = 1; v < t.order(); ++v) {
    auto p = max_rooted_path_partition(t, v);
    if (majorizes(p.lengths(), best.lengths())) best = std::move(p);
  }
  return best;
}

/// Every r-path partition's length sequence, by choosing at each non-root
/// vertex which child (if any) continues the path arriving from its parent.
inline std::vector<std::vector<int>> all_rooted_partition_lengths(const Graph& t, Vertex r) {
  auto rt = detail::root_tree(t, r);
  const int n = t.order();
  std::vector<Vertex> inner;
  for (Vertex v : rt.order)
    if (v != r) inner.push_back(v);
  std::vector<int> choice(n, -1);  // index into children, or -1 to stop
  std::set<std::vector<int>> seen;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == inner.size()) {
      std::vector<int> q;
      // a path starts at each root edge and at each child edge not chosen
      std::function<int(Vertex)> run = [&](Vertex v) {
        return choice[v] < 0 ? 1 : 1 + run(rt.children[v][choice[v]]);
      };
      for (Vertex c : rt.children[r]) q.push_back(run(c));
      for (Vertex v : inner)
        for (int j = 0; j < static_cast<int>(rt.children[v].size()); ++j)
          if (j != choice[v]) q.push_back(run(rt.children[v][j]));
      std::sort(q.rbegin(), q.rend());
      seen.insert(q);
      return;
    }
    Vertex v = inner[i];
    for (int j = -1; j < static_cast<int>(rt.children[v].size()); ++j) {
      choice[v] = j;
      go(i + 1);
    }
    choice[v] = -1;
  };
  go(0);
  return {seen.begin(), seen.end()};
}

/// Every path partition's length sequence. A path partition is an r-path
/// partition for some root r, so this is the union over all roots.
inline std::vector<std::vector<int>> all_partition_lengths(const Graph& t) {
  if (!t.is_tree()) throw NotATree();
  std::set<std::vector<int>> seen;
  for (Vertex r = 0; r < t.order(); ++r)
    for (auto& q : all_rooted_partition_lengths(t, r)) seen.insert(q);
  return {seen.begin(), seen.end()};
}

using boost::multiprecision::cpp_int;

/// Evaluates k 2^{q_1} + sum_{i>=2} 2^{q_i} - m + 1 on a length sequence.
inline cpp_int partition_value(const std::vector<int>& q, int k) {
  if (q.empty()) return k;
  cpp_int f = cpp_int(k) << q[0];
  for (std::size_t i = 1; i < q.size(); ++i) f += cpp_int(1) << q[i];
  return f - static_cast<long>(q.size()) + 1;
}

/// f(T) from a maximum path partition, or f(T, r; k) from an r-maximum one.
inline cpp_int tree_formula(const Graph& t, std::optional<Vertex> r = std::nullopt, int k = 1) {
  if (k < 1) throw InvalidParameter("k must be at least 1");
  if (!r && k != 1) throw InvalidParameter("the unrooted formula takes k = 1");
  return partition_value(max_path_partition(t, r).lengths(), k);
}

/// Branches of T - r, each relabeled and rooted at the neighbour of r.
struct Branch {
  Graph tree;
  Vertex root;
};

inline std::vector<Branch> branches(const Graph& t, Vertex r) {
  auto rt = detail::root_tree(t, r);
  std::vector<Branch> out;
  for (Vertex c : rt.children[r]) {
    std::vector<Vertex> members{c};
    for (std::size_t i = 0; i < members.size(); ++i)
      for (Vertex x : rt.children[members[i]]) members.push_back(x);
    std::map<Vertex, Vertex> id;
    for (Vertex v : members) id.emplace(v, static_cast<Vertex>(id.size()));
    std::vector<Edge> e;
    for (Vertex v : members)
      if (v != c) e.push_back({id[rt.parent[v]], id[v]});
    out.push_back({Graph(static_cast<int>(members.size()), e), 0});
  }
  return out;
}

/// Right-hand side of the rooted recursion over the branches of T - r:
///   max over (k_1..k_s) with sum floor(k_i/2) < k of sum f(T_i, r_i; k_i + 1)
/// minus (s - 1) when `corrected`. `rooted_f(tree, root, k)` supplies the
/// branch values. A bare vertex gives k.
inline cpp_int rooted_recursion(const Graph& t, Vertex r, int k,
                                const std::function<cpp_int(const Graph&, Vertex, int)>& rooted_f,
                                bool corrected = true) {
  if (k < 1) throw InvalidParameter("k must be at least 1");
  auto parts = branches(t, r);
  const int s = static_cast<int>(parts.size());
  if (s == 0) return k;
  std::vector<std::vector<cpp_int>> value(s);
  for (int i = 0; i < s; ++i)
    for (int ki = 0; ki <= 2 * k - 1; ++ki) value[i].push_back(rooted_f(parts[i].tree, parts[i].root, ki + 1));
  cpp_int best = -1;
  std::function<void(int, int, cpp_int)> go = [&](int i, int halves, cpp_int sum) {
    if (i == s) {
      best = std::max(best, sum);
      return;
    }
    for (int ki = 0; halves + ki / 2 < k; ++ki) go(i + 1, halves + ki / 2, sum + value[i][ki]);
  };
  go(0, 0, 0);
  return corrected ? best - s + 1 : best;
}

/// AHU encoding of the tree rooted at r.
inline std::string rooted_code(const Graph& t, Vertex r) {
  auto rt = detail::root_tree(t, r);
  std::vector<std::string> code(t.order());
  for (auto it = rt.order.rbegin(); it != rt.order.rend(); ++it) {
    std::vector<std::string> kids;
    for (Vertex c : rt.children[*it]) kids.push_back(code[c]);
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (auto& k : kids) s += k;
    code[*it] = s + ")";
  }
  return code[r];
}

/// Isomorphism-invariant code: the smallest rooted code over the centres.
inline std::string tree_code(const Graph& t) {
  if (!t.is_tree()) throw NotATree();
  std::vector<int> ecc(t.order());
  for (Vertex v = 0; v < t.order(); ++v) ecc[v] = t.eccentricity(v);
  int radius = *std::min_element(ecc.begin(), ecc.end());
  std::string best;
  for (Vertex v = 0; v < t.order(); ++v)
    if (ecc[v] == radius) {
      auto c = rooted_code(t, v);
      if (best.empty() || c < best) best = c;
    }
  return best;
}

inline Graph tree_from_prufer(const std::vector<int>& seq) {
  const int n = static_cast<int>(seq.size()) + 2;
  std::vector<int> degree(n, 1);
  for (int x : seq) {
    if (x < 0 || x >= n) throw InvalidParameter("Pruefer entry out of range");
    ++degree[x];
  }
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  std::vector<Edge> e;
  for (int x : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    e.push_back({leaf, x});
    if (--degree[x] == 1) leaves.insert(x);
  }
  e.push_back({*leaves.begin(), *std::next(leaves.begin())});
  return Graph(n, e);
}

/// One labeled representative per isomorphism class of trees on n vertices,
/// from a scan of all n^(n-2) Pruefer sequences.
inline std::vector<Graph> all_trees(int n) {
  if (n < 1 || n > 10) throw InvalidParameter("all_trees: need 1 <= n <= 10");
  if (n == 1) return {Graph(1, {})};
  if (n == 2) return {Graph(2, {{0, 1}})};
  std::vector<int> seq(n - 2, 0);
  std::set<std::string> seen;
  std::vector<Graph> out;
  for (;;) {
    Graph t = tree_from_prufer(seq);
    if (seen.insert(tree_code(t)).second) out.push_back(std::move(t));
    int i = n - 3;
    while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return out;
}

}  // namespace pebbling
