#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "entnet/error.hpp"
#include "entnet/netgraph.hpp"
#include "entnet/protocols.hpp"

namespace entnet {

enum class Color { A = 0, B = 1 };

/// Two-colouring of agents. Colourings are ordered lexicographically as
/// strings c_0 c_1 ... c_{n-1} with A < B, so agent 0 is the most
/// significant bit of the index.
struct Bicoloring {
  std::vector<Color> color;

  static Bicoloring from_index(std::uint64_t t, int n) {
    Bicoloring c;
    for (int i = 0; i < n; ++i) c.color.push_back(((t >> (n - 1 - i)) & 1) ? Color::B : Color::A);
    return c;
  }

  std::uint64_t index() const {
    std::uint64_t t = 0;
    for (Color x : color) t = (t << 1) | static_cast<std::uint64_t>(x);
    return t;
  }

  bool proper() const {
    return std::find(color.begin(), color.end(), Color::A) != color.end() &&
           std::find(color.begin(), color.end(), Color::B) != color.end();
  }

  std::string str() const {
    std::string s;
    for (Color x : color) s += x == Color::A ? 'A' : 'B';
    return s;
  }
};

struct Witness {
  Bicoloring coloring;
  int count_source = 0;
  int count_target = 0;
};

/// Either a witness of impossibility or nothing; the latter does not assert
/// that the transformation is possible.
struct Verdict {
  std::optional<Witness> witness;
  std::uint64_t colorings_examined = 0;

  bool impossible() const { return witness.has_value(); }
};

inline constexpr int kMaxColoringAgents = 20;

/// Hyperedges (with multiplicity) that carry both colours.
inline int merge_count(const EntangledHypergraph& h, const Bicoloring& c) {
  if (static_cast<int>(c.color.size()) != h.n()) throw InvalidInput("colouring does not cover every agent");
  int count = 0;
  for (const auto& e : h.hyperedges()) {
    bool a = false, b = false;
    for (AgentId v : e) (c.color[static_cast<std::size_t>(v)] == Color::A ? a : b) = true;
    count += a && b;
  }
  return count;
}

inline int merge_count(const EprGraph& g, const Bicoloring& c) {
  return merge_count(EntangledHypergraph::from_graph(g), c);
}

namespace detail {

// hyperedge masks in the colouring-index bit convention
inline std::vector<std::uint64_t> edge_masks(const EntangledHypergraph& h) {
  std::vector<std::uint64_t> out;
  for (const auto& e : h.hyperedges()) {
    std::uint64_t m = 0;
    for (AgentId v : e) m |= std::uint64_t{1} << (h.n() - 1 - v);
    out.push_back(m);
  }
  return out;
}

inline int fast_count(const std::vector<std::uint64_t>& masks, std::uint64_t t) {
  int c = 0;
  for (auto m : masks) c += (m & t) != 0 && (m & ~t) != 0;
  return c;
}

}  // namespace detail

/// Exhaustive bicoloured-merging search; returns the lexicographically first
/// witness. With jobs > 1 the index range is split across threads and the
/// smallest witness index wins, so the answer matches the sequential one.
inline Verdict find_witness(const EntangledHypergraph& source, const EntangledHypergraph& target, int jobs = 1) {
  if (source.n() != target.n()) throw InvalidInput("source and target have different agent counts");
  const int n = source.n();
  if (n > kMaxColoringAgents) throw LimitExceeded("bicoloured merging is limited to 20 agents");
  Verdict v;
  if (n < 2) return v;
  const auto ms = detail::edge_masks(source);
  const auto mt = detail::edge_masks(target);
  const std::uint64_t last = (std::uint64_t{1} << n) - 2;

  auto wins = [&](std::uint64_t t) { return detail::fast_count(mt, t) > detail::fast_count(ms, t); };

  std::uint64_t found = 0;
  jobs = std::max(1, jobs);
  if (jobs == 1 || last < 1024) {
    for (std::uint64_t t = 1; t <= last; ++t)
      if (wins(t)) {
        found = t;
        break;
      }
  } else {
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    std::vector<std::thread> pool;
    const std::uint64_t chunk = 256;
    std::atomic<std::uint64_t> next{1};
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (;;) {
          const std::uint64_t lo = next.fetch_add(chunk);
          if (lo > last || lo > best.load()) return;
          const std::uint64_t hi = std::min(last, lo + chunk - 1);
          for (std::uint64_t t = lo; t <= hi; ++t)
            if (wins(t)) {
              std::uint64_t cur = best.load();
              while (t < cur && !best.compare_exchange_weak(cur, t)) {
              }
              break;
            }
        }
      });
    for (auto& th : pool) th.join();
    if (best.load() != std::numeric_limits<std::uint64_t>::max()) found = best.load();
  }

  if (found) {
    auto c = Bicoloring::from_index(found, n);
    v.witness = Witness{c, merge_count(source, c), merge_count(target, c)};
    v.colorings_examined = found;
  } else {
    v.colorings_examined = last;
  }
  return v;
}

inline Verdict find_witness(const EprGraph& source, const EprGraph& target, int jobs = 1) {
  return find_witness(EntangledHypergraph::from_graph(source), EntangledHypergraph::from_graph(target), jobs);
}

/// Recomputes both counts from scratch.
inline bool witness_holds(const EntangledHypergraph& source, const EntangledHypergraph& target, const Witness& w) {
  return w.coloring.proper() && merge_count(source, w.coloring) == w.count_source &&
         merge_count(target, w.coloring) == w.count_target && w.count_target > w.count_source;
}

/// `copies` instances of the single hyperedge over all n agents.
inline EntangledHypergraph cat_copies(int n, int copies) {
  Hyperedge all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  return EntangledHypergraph(n, std::vector<Hyperedge>(static_cast<std::size_t>(copies), all), true);
}

struct TheoremReport {
  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

inline std::string describe(const EntangledHypergraph& h) {
  std::string s = "{";
  for (std::size_t i = 0; i < h.hyperedges().size(); ++i) {
    if (i) s += ",";
    for (AgentId v : h.hyperedges()[i]) s += std::to_string(v);
  }
  return s + "}";
}

/// Distinct spanning trees of K_n are pairwise incomparable.
inline TheoremReport verify_tree_incomparability(int n, int jobs = 1) {
  if (n > 6) throw LimitExceeded("tree incomparability check is limited to n <= 6");
  TheoremReport r{"tree-incomparability n=" + std::to_string(n), 0, {}};
  if (n < 2) return r;
  auto trees = enumerate_spanning_trees(complete_graph(n));
  std::vector<EntangledHypergraph> hs;
  for (const auto& t : trees) hs.push_back(EntangledHypergraph::from_graph(t));
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = 0; j < hs.size(); ++j) {
      if (i == j) continue;
      ++r.cases;
      auto v = find_witness(hs[i], hs[j], jobs);
      if (!v.witness || !witness_holds(hs[i], hs[j], *v.witness))
        r.failures.push_back(describe(hs[i]) + " -> " + describe(hs[j]));
    }
  return r;
}

/// n-2 copies of the n-CAT cannot yield any spanning tree; n-1 copies show no witness.
inline TheoremReport verify_cat_copy_lower_bound(int n) {
  if (n < 3 || n > 6) throw InvalidInput("copy lower bound check needs 3 <= n <= 6");
  TheoremReport r{"cat-copy-lower-bound n=" + std::to_string(n), 0, {}};
  const auto few = cat_copies(n, n - 2);
  const auto enough = cat_copies(n, n - 1);
  for (const auto& t : enumerate_spanning_trees(complete_graph(n))) {
    const auto th = EntangledHypergraph::from_graph(t);
    ++r.cases;
    auto v = find_witness(few, th);
    if (!v.witness || !witness_holds(few, th, *v.witness) || v.witness->count_source != n - 2)
      r.failures.push_back("no witness for n-2 copies -> " + describe(th));
    if (find_witness(enough, th).impossible()) r.failures.push_back("unexpected witness for n-1 copies -> " + describe(th));
  }
  return r;
}

/// Singleton colouring {u: A, rest: B}.
inline Bicoloring singleton_coloring(int n, AgentId u) {
  Bicoloring c;
  c.color.assign(static_cast<std::size_t>(n), Color::B);
  c.color[static_cast<std::size_t>(u)] = Color::A;
  return c;
}

struct PendantVerdicts {
  Verdict forward;   // h1 -> h2
  Verdict backward;  // h2 -> h1
  bool constructive_forward = false;
  bool constructive_backward = false;
};

/// When each hypergraph has a pendant vertex the other lacks, both directions
/// admit a witness. The singleton colouring is tried before the full search.
inline PendantVerdicts verify_pendant_theorem(const EntangledHypergraph& h1, const EntangledHypergraph& h2) {
  if (h1.n() != h2.n()) throw InvalidInput("hypergraphs on different vertex sets");
  const auto p1 = pendant_vertices(h1);
  const auto p2 = pendant_vertices(h2);
  std::vector<AgentId> only1, only2;
  std::set_difference(p1.begin(), p1.end(), p2.begin(), p2.end(), std::back_inserter(only1));
  std::set_difference(p2.begin(), p2.end(), p1.begin(), p1.end(), std::back_inserter(only2));
  if (only1.empty() || only2.empty())
    throw PreconditionViolation("pendant sets must each contain a vertex the other lacks");

  auto direction = [](const EntangledHypergraph& s, const EntangledHypergraph& t, const std::vector<AgentId>& cand,
                      bool& constructive) {
    for (AgentId u : cand) {
      auto c = singleton_coloring(s.n(), u);
      const int cs = merge_count(s, c), ct = merge_count(t, c);
      if (ct > cs) {
        constructive = true;
        return Verdict{Witness{c, cs, ct}, 0};
      }
    }
    return find_witness(s, t);
  };
  PendantVerdicts out;
  out.forward = direction(h1, h2, only1, out.constructive_forward);
  out.backward = direction(h2, h1, only2, out.constructive_backward);
  return out;
}

/// Every ordered pair of distinct r-uniform hypertrees on n vertices is witnessed.
inline TheoremReport verify_runiform_theorem(int r, int n, int jobs = 1) {
  if (r < 3 || r > 4 || n > 9) throw InvalidInput("r-uniform check needs r in {3,4} and n <= 9");
  TheoremReport rep{"r-uniform-incomparability r=" + std::to_string(r) + " n=" + std::to_string(n), 0, {}};
  const auto all = enumerate_r_uniform_hypertrees(n, r);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (i == j) continue;
      ++rep.cases;
      auto v = find_witness(all[i], all[j], jobs);
      if (!v.witness || !witness_holds(all[i], all[j], *v.witness))
        rep.failures.push_back(describe(all[i]) + " -> " + describe(all[j]));
    }
  return rep;
}

/// GHZ cannot become two EPR pairs sharing a vertex (the reduction used for
/// selective teleportation of two qubits).
inline Witness selective_teleportation_impossible() {
  EntangledHypergraph ghz(3, {{0, 1, 2}});
  EntangledHypergraph two(3, {{0, 1}, {0, 2}});
  auto v = find_witness(ghz, two);
  if (!v.witness) throw InternalError("GHZ -> two EPR pairs admitted no witness");
  return *v.witness;
}

/// An inductive merge step: a CAT over F plus a CAT over E meeting F in one
/// agent, versus the same resources with F's CAT moved onto a member of E.
/// Returns the verdict for (before -> moved), which the step's reversal would enable.
inline Verdict verify_inductive_step(int f_size, int e_size) {
  if (f_size < 2 || e_size < 2) throw InvalidInput("step needs groups of size >= 2");
  const int n = f_size + e_size - 1;
  Hyperedge F(static_cast<std::size_t>(f_size)), E;
  std::iota(F.begin(), F.end(), 0);
  for (int v = f_size - 1; v < n; ++v) E.push_back(v);
  Hyperedge moved(F.begin(), F.end() - 1);
  moved.push_back(n - 1);
  EntangledHypergraph before(n, {F, E}, true), after(n, {moved, E}, true);
  return find_witness(before, after);
}

// ---------------------------------------------------------------------------
// Copy bounds

struct CopyTask {
  std::vector<Edge> produces;                  // target edges delivered by this copy
  std::vector<std::vector<AgentId>> paths;     // path in t1 for each swapped edge (empty = direct)
};

struct CopyBounds {
  int lower = 1;
  int upper = 1;
  std::vector<CopyTask> plan;
};

inline std::vector<AgentId> tree_path(const EprGraph& t, AgentId from, AgentId to) {
  std::vector<AgentId> parent(static_cast<std::size_t>(t.n()), -1);
  std::vector<AgentId> stack{from};
  parent[static_cast<std::size_t>(from)] = from;
  while (!stack.empty()) {
    AgentId v = stack.back();
    stack.pop_back();
    for (AgentId w : t.neighbours(v))
      if (parent[static_cast<std::size_t>(w)] < 0) {
        parent[static_cast<std::size_t>(w)] = v;
        stack.push_back(w);
      }
  }
  if (parent[static_cast<std::size_t>(to)] < 0) throw InvalidInput("no path in tree");
  std::vector<AgentId> path{to};
  while (path.back() != from) path.push_back(parent[static_cast<std::size_t>(path.back())]);
  std::reverse(path.begin(), path.end());
  return path;
}

/// 2 <= C <= QD+1 copies of t1 suffice to obtain t2; the plan spends one copy
/// per missing edge (swapping along the t1 path) and one for the shared edges.
inline CopyBounds copy_bounds(const EprGraph& t1, const EprGraph& t2) {
  require_spanning_tree(t1);
  require_spanning_tree(t2);
  if (t1.n() != t2.n()) throw InvalidInput("trees on different agent counts");
  CopyBounds b;
  if (t1 == t2) {
    b.plan.push_back({t2.edges(), std::vector<std::vector<AgentId>>(t2.edges().size())});
    return b;
  }
  const int qd = quantum_distance(t2, t1);
  b.lower = 2;
  b.upper = qd + 1;
  CopyTask common;
  for (const auto& e : t2.edges()) {
    if (t1.has_edge(e.first, e.second)) {
      common.produces.push_back(e);
      common.paths.emplace_back();
    } else {
      b.plan.push_back({{e}, {tree_path(t1, e.first, e.second)}});
    }
  }
  b.plan.push_back(common);
  return b;
}

struct CopyExecution {
  NetworkState state;
  int copies_used = 0;
  bool reproduces_target = false;
};

/// Runs the plan: each copy of t1's EPR pairs is created, the planned swaps
/// are executed, unused pairs are discarded. The result is checked pair by
/// pair against the Bell pairs of t2.
inline CopyExecution execute_copy_plan(const EprGraph& t1, const EprGraph& t2, const CopyBounds& b, Rng& rng) {
  CopyExecution ex;
  std::vector<std::pair<Edge, std::pair<SiteId, SiteId>>> delivered;
  for (const auto& task : b.plan) {
    ++ex.copies_used;
    std::map<Edge, std::pair<SiteId, SiteId>> pairs;
    for (auto [a, c] : t1.edges()) pairs[{a, c}] = make_epr(ex.state, a, c);
    auto side = [&](AgentId at, AgentId toward) {
      auto p = pairs.at(canonical_edge(at, toward));
      return at < toward ? p.first : p.second;
    };
    std::set<Edge> consumed;
    for (std::size_t i = 0; i < task.produces.size(); ++i) {
      const Edge e = task.produces[i];
      if (task.paths[i].empty()) {
        delivered.push_back({e, pairs.at(e)});
        consumed.insert(e);
        continue;
      }
      const auto& path = task.paths[i];
      std::vector<std::pair<SiteId, SiteId>> hops;
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        hops.push_back({side(path[k], path[k + 1]), side(path[k + 1], path[k])});
        consumed.insert(canonical_edge(path[k], path[k + 1]));
      }
      auto ends = entanglement_swap_path(ex.state, hops, rng);
      if (path.front() == e.first)
        delivered.push_back({e, ends});
      else
        delivered.push_back({e, {ends.second, ends.first}});
    }
    for (const auto& [e, p] : pairs)
      if (!consumed.count(e)) discard(ex.state, {p.first, p.second});
  }
  ex.reproduces_target = delivered.size() == t2.edges().size();
  for (const auto& [e, p] : delivered) {
    if (!t2.has_edge(e.first, e.second) || ex.state.owner(p.first) != e.first || ex.state.owner(p.second) != e.second ||
        !is_bell_pair(ex.state, p.first, p.second))
      ex.reproduces_target = false;
  }
  return ex;
}

}  // namespace entnet
