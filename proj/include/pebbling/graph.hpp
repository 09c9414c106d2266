#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pebbling/error.hpp"

namespace pebbling {

using Vertex = int;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple connected undirected graph on vertices 0..n-1.
///
/// Edges are stored normalized (u < v) and sorted; `edge_id` indexes into
/// that list. Construction rejects loops, repeated edges, out-of-range
/// endpoints and disconnected inputs.
class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 1) throw InvalidParameter("graph needs at least one vertex");
    for (auto& e : edges) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
        throw InvalidParameter("edge endpoint out of range");
      if (e.u == e.v) throw InvalidParameter("loops are not allowed");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw InvalidParameter("repeated edge");
    edges_ = std::move(edges);
    adj_.assign(n_, {});
    edge_index_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
      const auto [u, v] = edges_[id];
      adj_[u].push_back(v);
      adj_[v].push_back(u);
      edge_index_[index(u, v)] = id;
      edge_index_[index(v, u)] = id;
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    if (!is_connected(n_, adj_)) throw InvalidParameter("graph is not connected");
  }

  int order() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  bool adjacent(Vertex u, Vertex v) const { return edge_index_[index(u, v)] >= 0; }
  /// Index of edge {u,v} in `edges()`, or -1.
  int edge_id(Vertex u, Vertex v) const { return edge_index_[index(u, v)]; }

  bool is_tree() const { return size() == n_ - 1; }

  /// BFS distances from `source`.
  std::vector<int> distances_from(Vertex source) const {
    std::vector<int> dist(n_, -1);
    std::queue<Vertex> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex v : adj_[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
      }
    }
    return dist;
  }

  std::vector<std::vector<int>> all_distances() const {
    std::vector<std::vector<int>> d;
    d.reserve(n_);
    for (Vertex v = 0; v < n_; ++v) d.push_back(distances_from(v));
    return d;
  }

  int eccentricity(Vertex v) const {
    auto d = distances_from(v);
    return *std::max_element(d.begin(), d.end());
  }

  int diameter() const {
    int best = 0;
    for (Vertex v = 0; v < n_; ++v) best = std::max(best, eccentricity(v));
    return best;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

  /// True when the edge list on `n` vertices forms a connected graph.
  static bool is_connected(int n, const std::vector<std::vector<Vertex>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  }

  static bool is_connected(int n, const std::vector<Edge>& edges) {
    std::vector<std::vector<Vertex>> adj(n);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    return is_connected(n, adj);
  }

 private:
  std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u) * n_ + v;
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<int> edge_index_;
};

// ---------------------------------------------------------------------------
// Structural invariants
// ---------------------------------------------------------------------------

struct Structure {
  int diameter = 0;
  std::optional<int> girth;  // empty for acyclic graphs
  int vertex_connectivity = 0;
  std::vector<Vertex> cut_vertices;
};

namespace detail {

inline std::optional<int> girth(const Graph& g) {
  const int n = g.order();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(n), parent(n);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::queue<Vertex> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex v : g.neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          q.push(v);
        } else if (parent[u] != v) {
          best = std::min(best, dist[u] + dist[v] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

// Maximum number of internally vertex-disjoint s-t paths (s, t non-adjacent),
// by unit-capacity augmenting paths on the split graph.
inline int local_connectivity(const Graph& g, Vertex s, Vertex t) {
  const int n = g.order();
  // node v_in = 2v, v_out = 2v+1
  const int N = 2 * n;
  std::vector<std::vector<int>> cap(N, std::vector<int>(N, 0));
  for (Vertex v = 0; v < n; ++v) cap[2 * v][2 * v + 1] = (v == s || v == t) ? n : 1;
  for (auto [u, v] : g.edges()) {
    cap[2 * u + 1][2 * v] = n;
    cap[2 * v + 1][2 * u] = n;
  }
  const int source = 2 * s + 1, sink = 2 * t;
  int flow = 0;
  std::vector<int> prev(N);
  while (true) {
    std::fill(prev.begin(), prev.end(), -1);
    prev[source] = source;
    std::queue<int> q;
    q.push(source);
    while (!q.empty() && prev[sink] < 0) {
      int x = q.front();
      q.pop();
      for (int y = 0; y < N; ++y) {
        if (prev[y] < 0 && cap[x][y] > 0) {
          prev[y] = x;
          q.push(y);
        }
      }
    }
    if (prev[sink] < 0) break;
    for (int y = sink; y != source; y = prev[y]) {
      --cap[prev[y]][y];
      ++cap[y][prev[y]];
    }
    ++flow;
  }
  return flow;
}

inline int vertex_connectivity(const Graph& g) {
  const int n = g.order();
  int best = n - 1;
  for (Vertex s = 0; s < n; ++s)
    for (Vertex t = s + 1; t < n; ++t)
      if (!g.adjacent(s, t)) best = std::min(best, local_connectivity(g, s, t));
  return best;
}

inline std::vector<Vertex> cut_vertices(const Graph& g) {
  const int n = g.order();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> is_cut(n, 0);
  int timer = 0;
  auto dfs = [&](auto&& self, Vertex u, Vertex parent) -> void {
    disc[u] = low[u] = timer++;
    int children = 0;
    for (Vertex v : g.neighbors(u)) {
      if (v == parent) continue;
      if (disc[v] >= 0) {
        low[u] = std::min(low[u], disc[v]);
      } else {
        ++children;
        self(self, v, u);
        low[u] = std::min(low[u], low[v]);
        if (parent >= 0 && low[v] >= disc[u]) is_cut[u] = 1;
      }
    }
    if (parent < 0 && children > 1) is_cut[u] = 1;
  };
  dfs(dfs, 0, -1);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (is_cut[v]) out.push_back(v);
  return out;
}

}  // namespace detail

inline Structure structure(const Graph& g) {
  Structure s;
  s.diameter = g.diameter();
  s.girth = detail::girth(g);
  s.vertex_connectivity = detail::vertex_connectivity(g);
  s.cut_vertices = detail::cut_vertices(g);
  return s;
}

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

/// Cartesian product with vertex (a, b) flattened to a * n2 + b.
/// `factor_of_edge`, when given, receives 0 or 1 per product edge (indexed by
/// edge id) naming the factor the edge came from.
inline Graph cartesian_product(const Graph& g1, const Graph& g2,
                               std::vector<int>* factor_of_edge = nullptr) {
  const int n1 = g1.order(), n2 = g2.order();
  std::vector<Edge> edges;
  std::vector<std::pair<Edge, int>> tagged;
  for (Vertex a = 0; a < n1; ++a)
    for (auto [x, y] : g2.edges()) tagged.push_back({{a * n2 + x, a * n2 + y}, 1});
  for (auto [x, y] : g1.edges())
    for (Vertex b = 0; b < n2; ++b) tagged.push_back({{x * n2 + b, y * n2 + b}, 0});
  for (auto& t : tagged) edges.push_back(t.first);
  Graph product(n1 * n2, edges);
  if (factor_of_edge) {
    factor_of_edge->assign(product.size(), 0);
    for (auto& [e, f] : tagged) (*factor_of_edge)[product.edge_id(e.u, e.v)] = f;
  }
  return product;
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

/// Reads "n m" followed by m lines "u v" (0-based, u < v).
inline Graph read_graph(std::istream& in) {
  long long n = 0, m = 0;
  if (!(in >> n >> m)) throw InvalidParameter("graph: expected header 'n m'");
  if (n < 1 || m < 0) throw InvalidParameter("graph: bad header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw InvalidParameter("graph: truncated edge list");
    if (u >= v) throw InvalidParameter("graph: edges must be written with u < v");
    if (v >= n) throw InvalidParameter("graph: edge endpoint out of range");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

// ---------------------------------------------------------------------------
// Small-graph enumeration
// ---------------------------------------------------------------------------

/// Canonical edge mask under all vertex relabelings (n <= 8).
inline std::uint64_t canonical_mask(int n, const std::vector<Edge>& edges) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  auto bit = [n](int a, int b) {
    if (a > b) std::swap(a, b);
    // pair index in lexicographic order of (a, b), a < b
    return a * n - a * (a + 1) / 2 + (b - a - 1);
  };
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t mask = 0;
    for (auto [u, v] : edges) mask |= std::uint64_t{1} << bit(perm[u], perm[v]);
    best = std::min(best, mask);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// One representative of every isomorphism class of connected graphs on n
/// vertices (n <= 6), found by scanning all adjacency masks.
inline std::vector<Graph> connected_graphs(int n) {
  if (n < 1 || n > 6) throw InvalidParameter("connected_graphs: need 1 <= n <= 6");
  std::vector<Edge> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  std::set<std::uint64_t> seen;
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) edges.push_back(pairs[i]);
    if (static_cast<int>(edges.size()) < n - 1) continue;
    if (!Graph::is_connected(n, edges)) continue;
    if (!seen.insert(canonical_mask(n, edges)).second) continue;
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

}  // namespace pebbling
