#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "entnet/error.hpp"

namespace entnet {

using AgentId = int;
using Edge = std::pair<AgentId, AgentId>;

inline Edge canonical_edge(AgentId a, AgentId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), components_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  /// Returns false if already joined.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --components_;
    return true;
  }

  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t components_;
};

/// Agents 0..n-1; an edge per shared EPR pair.
class EprGraph {
 public:
  EprGraph() = default;

  EprGraph(int n, const std::vector<Edge>& edges) : n_(n) {
    if (n < 1) throw InvalidInput("graph needs at least one agent");
    for (auto [a, b] : edges) {
      if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidInput("edge endpoint out of range");
      if (a == b) throw InvalidInput("self-loops are not allowed");
      edges_.push_back(canonical_edge(a, b));
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw InvalidInput("duplicate edge");
  }

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(AgentId a, AgentId b) const {
    return std::binary_search(edges_.begin(), edges_.end(), canonical_edge(a, b));
  }

  int degree(AgentId v) const {
    int d = 0;
    for (auto [a, b] : edges_) d += (a == v) + (b == v);
    return d;
  }

  std::vector<AgentId> neighbours(AgentId v) const {
    std::vector<AgentId> out;
    for (auto [a, b] : edges_) {
      if (a == v) out.push_back(b);
      if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<AgentId> leaves() const {
    std::vector<AgentId> out;
    for (AgentId v = 0; v < n_; ++v)
      if (degree(v) == 1) out.push_back(v);
    return out;
  }

  friend bool operator==(const EprGraph& a, const EprGraph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }
  friend bool operator<(const EprGraph& a, const EprGraph& b) {
    return std::tie(a.n_, a.edges_) < std::tie(b.n_, b.edges_);
  }

 private:
  int n_ = 1;
  std::vector<Edge> edges_;
};

inline EprGraph complete_graph(int n) {
  std::vector<Edge> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return EprGraph(n, e);
}

inline EprGraph path_graph(int n) {
  std::vector<Edge> e;
  for (int a = 0; a + 1 < n; ++a) e.emplace_back(a, a + 1);
  return EprGraph(n, e);
}

inline EprGraph star_graph(int n, AgentId hub = 0) {
  std::vector<Edge> e;
  for (int a = 0; a < n; ++a)
    if (a != hub) e.emplace_back(hub, a);
  return EprGraph(n, e);
}

inline bool is_connected(const EprGraph& g) {
  UnionFind uf(static_cast<std::size_t>(g.n()));
  for (auto [a, b] : g.edges()) uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  return uf.components() == 1;
}

inline bool is_spanning_tree(const EprGraph& g) {
  return static_cast<int>(g.edges().size()) == g.n() - 1 && is_connected(g);
}

inline void require_spanning_tree(const EprGraph& g) {
  if (!is_spanning_tree(g)) throw InvalidInput("graph is not a spanning tree");
}

struct WeightedEprGraph {
  EprGraph graph;
  std::vector<double> weights;  // parallel to graph.edges()

  WeightedEprGraph() = default;
  WeightedEprGraph(int n, const std::vector<Edge>& edges, const std::vector<double>& w) {
    if (edges.size() != w.size()) throw InvalidInput("every edge needs exactly one weight");
    std::map<Edge, double> by_edge;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (w[i] < 0) throw InvalidInput("edge weights must be non-negative");
      by_edge[canonical_edge(edges[i].first, edges[i].second)] = w[i];
    }
    graph = EprGraph(n, edges);
    for (const auto& e : graph.edges()) weights.push_back(by_edge.at(e));
  }

  double weight(const Edge& e) const {
    auto it = std::lower_bound(graph.edges().begin(), graph.edges().end(), e);
    if (it == graph.edges().end() || *it != e) throw InvalidInput("edge not in graph");
    return weights[static_cast<std::size_t>(it - graph.edges().begin())];
  }

  double total(const EprGraph& sub) const {
    double t = 0;
    for (const auto& e : sub.edges()) t += weight(e);
    return t;
  }
};

/// Kruskal with ties broken by lexicographic edge order.
inline EprGraph minimum_spanning_tree(const WeightedEprGraph& g) {
  std::vector<std::size_t> idx(g.graph.edges().size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return g.weights[a] < g.weights[b]; });
  UnionFind uf(static_cast<std::size_t>(g.graph.n()));
  std::vector<Edge> chosen;
  for (std::size_t i : idx) {
    auto [a, b] = g.graph.edges()[i];
    if (uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b))) chosen.push_back(g.graph.edges()[i]);
  }
  if (uf.components() != 1) throw NoSpanningTree("graph is disconnected; no spanning tree exists");
  return EprGraph(g.graph.n(), chosen);
}

inline EprGraph any_spanning_tree(const EprGraph& g) {
  return minimum_spanning_tree(WeightedEprGraph(g.n(), g.edges(), std::vector<double>(g.edges().size(), 1.0)));
}

inline constexpr int kMaxEnumerationAgents = 8;

/// All spanning trees, each once, in sorted edge-list order.
inline std::vector<EprGraph> enumerate_spanning_trees(const EprGraph& g) {
  if (g.n() > kMaxEnumerationAgents) throw LimitExceeded("spanning-tree enumeration is limited to 8 agents");
  const auto& edges = g.edges();
  const std::size_t need = static_cast<std::size_t>(g.n() - 1);
  std::vector<EprGraph> out;
  std::vector<Edge> chosen;

  // include/exclude over edges in order; prune cycles and hopeless branches
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (chosen.size() == need) {
      out.emplace_back(g.n(), chosen);
      return;
    }
    if (i == edges.size() || chosen.size() + (edges.size() - i) < need) return;
    // remaining edges must still be able to connect everything
    UnionFind reach(static_cast<std::size_t>(g.n()));
    for (const auto& e : chosen) reach.unite(static_cast<std::size_t>(e.first), static_cast<std::size_t>(e.second));
    for (std::size_t j = i; j < edges.size(); ++j)
      reach.unite(static_cast<std::size_t>(edges[j].first), static_cast<std::size_t>(edges[j].second));
    if (reach.components() != 1) return;

    UnionFind uf(static_cast<std::size_t>(g.n()));
    for (const auto& e : chosen) uf.unite(static_cast<std::size_t>(e.first), static_cast<std::size_t>(e.second));
    if (uf.find(static_cast<std::size_t>(edges[i].first)) != uf.find(static_cast<std::size_t>(edges[i].second))) {
      chosen.push_back(edges[i]);
      rec(i + 1);
      chosen.pop_back();
    }
    rec(i + 1);
  };
  if (g.n() == 1) return {EprGraph(1, {})};
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

inline int quantum_distance(const EprGraph& t1, const EprGraph& t2) {
  if (t1.n() != t2.n()) throw InvalidInput("trees have different agent counts");
  std::vector<Edge> diff;
  std::set_difference(t1.edges().begin(), t1.edges().end(), t2.edges().begin(), t2.edges().end(),
                      std::back_inserter(diff));
  return static_cast<int>(diff.size());
}

// ---------------------------------------------------------------------------
// Hypergraphs

using Hyperedge = std::vector<AgentId>;

class EntangledHypergraph {
 public:
  EntangledHypergraph() = default;

  EntangledHypergraph(int n, std::vector<Hyperedge> hyperedges, bool multi = false) : n_(n), multi_(multi) {
    if (n < 1) throw InvalidInput("hypergraph needs at least one agent");
    for (auto& e : hyperedges) {
      std::sort(e.begin(), e.end());
      if (e.size() < 2) throw InvalidInput("hyperedges need at least two agents");
      if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw InvalidInput("repeated agent in hyperedge");
      if (e.front() < 0 || e.back() >= n) throw InvalidInput("hyperedge agent out of range");
    }
    if (!multi) {
      auto sorted = hyperedges;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidInput("duplicate hyperedge (set multi to allow copies)");
    }
    hyperedges_ = std::move(hyperedges);
  }

  static EntangledHypergraph from_graph(const EprGraph& g) {
    std::vector<Hyperedge> hs;
    for (auto [a, b] : g.edges()) hs.push_back({a, b});
    return EntangledHypergraph(g.n(), std::move(hs));
  }

  int n() const { return n_; }
  bool multi() const { return multi_; }
  const std::vector<Hyperedge>& hyperedges() const { return hyperedges_; }

  /// Hyperedges sorted (for set comparisons); order of the input is otherwise kept.
  std::vector<Hyperedge> canonical_edges() const {
    auto s = hyperedges_;
    std::sort(s.begin(), s.end());
    return s;
  }

  int membership(AgentId v) const {
    int c = 0;
    for (const auto& e : hyperedges_) c += std::binary_search(e.begin(), e.end(), v);
    return c;
  }

  friend bool operator==(const EntangledHypergraph& a, const EntangledHypergraph& b) {
    return a.n_ == b.n_ && a.canonical_edges() == b.canonical_edges();
  }

 private:
  int n_ = 1;
  bool multi_ = false;
  std::vector<Hyperedge> hyperedges_;
};

inline bool hypergraph_is_connected(const EntangledHypergraph& h) {
  UnionFind uf(static_cast<std::size_t>(h.n()));
  for (const auto& e : h.hyperedges())
    for (std::size_t i = 1; i < e.size(); ++i) uf.unite(static_cast<std::size_t>(e[0]), static_cast<std::size_t>(e[i]));
  return uf.components() == 1;
}

inline std::vector<AgentId> pendant_vertices(const EntangledHypergraph& h) {
  std::vector<AgentId> out;
  for (AgentId v = 0; v < h.n(); ++v)
    if (h.membership(v) == 1) out.push_back(v);
  return out;
}

/// Acyclic in the sense that no two vertices are joined by hyperpaths through
/// distinct hyperedges; equivalently the vertex/hyperedge incidence graph is a forest.
inline bool is_r_uniform_hypertree(const EntangledHypergraph& h, int r) {
  if (r < 2) throw InvalidInput("r must be at least 2");
  const auto& hs = h.hyperedges();
  for (const auto& e : hs)
    if (static_cast<int>(e.size()) != r) return false;
  if (!hypergraph_is_connected(h)) return false;
  if (h.n() != static_cast<int>(hs.size()) * (r - 1) + 1) return false;
  UnionFind uf(static_cast<std::size_t>(h.n()) + hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (AgentId v : hs[i])
      if (!uf.unite(static_cast<std::size_t>(v), static_cast<std::size_t>(h.n()) + i)) return false;
  return true;
}

inline bool co_hyperedged(const EntangledHypergraph& h, AgentId u, AgentId v) {
  for (const auto& e : h.hyperedges())
    if (std::binary_search(e.begin(), e.end(), u) && std::binary_search(e.begin(), e.end(), v)) return true;
  return false;
}

/// First pair (u < v) sharing a hyperedge in h2 but none in h1.
inline std::pair<AgentId, AgentId> find_separating_pair(const EntangledHypergraph& h1, const EntangledHypergraph& h2) {
  if (h1.n() != h2.n()) throw InvalidInput("hypergraphs on different vertex sets");
  if (h1 == h2) throw PreconditionViolation("hypertrees must be distinct");
  for (AgentId u = 0; u < h1.n(); ++u)
    for (AgentId v = u + 1; v < h1.n(); ++v)
      if (co_hyperedged(h2, u, v) && !co_hyperedged(h1, u, v)) return {u, v};
  throw InternalError("no separating pair between distinct hypertrees");
}

/// All r-uniform hypertrees on n labelled vertices, sorted by canonical edges.
inline std::vector<EntangledHypergraph> enumerate_r_uniform_hypertrees(int n, int r) {
  if (r < 2 || n < 1) throw InvalidInput("need r >= 2 and n >= 1");
  if (n > 10) throw LimitExceeded("hypertree enumeration is limited to 10 vertices");
  if ((n - 1) % (r - 1) != 0) return {};
  const int m = (n - 1) / (r - 1);
  if (m == 0) return {};

  std::vector<Hyperedge> all;
  std::vector<int> pick(static_cast<std::size_t>(r));
  std::function<void(int, int)> comb = [&](int start, int depth) {
    if (depth == r) {
      all.push_back(pick);
      return;
    }
    for (int v = start; v < n; ++v) {
      pick[static_cast<std::size_t>(depth)] = v;
      comb(v + 1, depth + 1);
    }
  };
  comb(0, 0);

  std::vector<EntangledHypergraph> out;
  std::vector<Hyperedge> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(chosen.size()) == m) {
      EntangledHypergraph h(n, chosen);
      if (is_r_uniform_hypertree(h, r)) out.push_back(h);
      return;
    }
    for (std::size_t i = start; i < all.size(); ++i) {
      chosen.push_back(all[i]);
      // prune: incidence graph must stay acyclic
      UnionFind uf(static_cast<std::size_t>(n) + chosen.size());
      bool ok = true;
      for (std::size_t j = 0; j < chosen.size() && ok; ++j)
        for (AgentId v : chosen[j])
          if (!uf.unite(static_cast<std::size_t>(v), static_cast<std::size_t>(n) + j)) {
            ok = false;
            break;
          }
      if (ok) rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace entnet
