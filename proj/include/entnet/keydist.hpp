#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "entnet/error.hpp"
#include "entnet/netgraph.hpp"
#include "entnet/protocols.hpp"
#include "entnet/rng.hpp"
#include "entnet/statevec.hpp"

namespace entnet {

using EdgeKeyTable = std::map<Edge, int>;

struct RandomizedRecord {
  AgentId agent = 0;
  std::vector<std::pair<Edge, int>> entries;  // (edge, bit xor x)
};

/// Each endpoint's copy of the pairwise bit on every tree edge. Copies agree
/// unless noise flipped one of them.
struct SideBits {
  std::map<Edge, std::pair<int, int>> bits;  // (lower-id endpoint, higher-id endpoint)

  int of(AgentId a, const Edge& e) const {
    const auto& p = bits.at(e);
    return a == e.first ? p.first : p.second;
  }

  static SideBits from_table(const EdgeKeyTable& t) {
    SideBits s;
    for (const auto& [e, b] : t) s.bits[e] = {b, b};
    return s;
  }
};

struct KeyRound {
  EprGraph tree;
  EdgeKeyTable table;
  std::vector<RandomizedRecord> announcements;
  AgentId chosen_terminal = 0;
  int shared_bit = 0;
  std::vector<int> reconstructions;  // per agent
};

namespace detail {

inline bool is_terminal(const EprGraph& tree, AgentId v) { return tree.degree(v) <= 1; }

inline std::vector<Edge> incident_edges(const EprGraph& tree, AgentId v) {
  std::vector<Edge> out;
  for (AgentId u : tree.neighbours(v)) out.push_back(canonical_edge(u, v));
  return out;
}

inline std::vector<RandomizedRecord> announce(const EprGraph& tree, const SideBits& bits, const std::vector<int>& flips) {
  std::vector<RandomizedRecord> out;
  for (AgentId v = 0; v < tree.n(); ++v) {
    if (is_terminal(tree, v)) continue;
    RandomizedRecord r{v, {}};
    for (const auto& e : incident_edges(tree, v)) r.entries.emplace_back(e, bits.of(v, e) ^ flips[static_cast<std::size_t>(v)]);
    out.push_back(std::move(r));
  }
  return out;
}

/// Agent j's view of the terminal's edge bit: start from j's own incident bits
/// and walk the tree, unmasking each announcer's flip from a known entry.
inline int reconstruct(const EprGraph& tree, const SideBits& bits, const std::vector<RandomizedRecord>& ann, AgentId j,
                       AgentId terminal) {
  const auto term_edges = incident_edges(tree, terminal);
  if (term_edges.size() != 1) throw InvalidInput("chosen agent is not a terminal");
  const Edge te = term_edges.front();
  if (j == terminal) return bits.of(j, te);

  std::map<AgentId, const RandomizedRecord*> by_agent;
  for (const auto& r : ann) by_agent[r.agent] = &r;
  std::map<Edge, int> val;
  for (const auto& e : incident_edges(tree, j)) val[e] = bits.of(j, e);

  std::set<AgentId> seen{j};
  std::deque<AgentId> queue{j};
  while (!queue.empty()) {
    const AgentId i = queue.front();
    queue.pop_front();
    if (i != j) {
      auto it = by_agent.find(i);
      if (it != by_agent.end()) {
        const auto& rec = *it->second;
        std::optional<int> x;
        for (const auto& [e, b] : rec.entries)
          if (val.count(e)) {
            x = b ^ val[e];
            break;
          }
        if (!x) throw InternalError("reconstruction reached an agent with no known edge");
        for (const auto& [e, b] : rec.entries)
          if (!val.count(e)) val[e] = b ^ *x;
      }
    }
    for (AgentId k : tree.neighbours(i))
      if (!seen.count(k)) {
        seen.insert(k);
        queue.push_back(k);
      }
  }
  return val.at(te);
}

}  // namespace detail

/// One round of the spanning-tree reduction: n-1 pairwise bits become one bit
/// shared by all n agents. `terminal` defaults to a uniformly random leaf.
inline KeyRound classical_nkd_round(const EprGraph& tree, Rng& rng, std::optional<EdgeKeyTable> table = std::nullopt,
                                    std::optional<std::vector<int>> flips = std::nullopt,
                                    std::optional<AgentId> terminal = std::nullopt) {
  require_spanning_tree(tree);
  if (tree.n() < 2) throw InvalidInput("need at least two agents");
  KeyRound kr{tree, {}, {}, 0, 0, {}};
  if (table) {
    for (const auto& e : tree.edges())
      if (!table->count(e)) throw InvalidInput("edge key table does not match the tree");
    if (table->size() != tree.edges().size()) throw InvalidInput("edge key table does not match the tree");
    kr.table = *table;
  } else {
    for (const auto& e : tree.edges()) kr.table[e] = rng.bit();
  }
  std::vector<int> x(static_cast<std::size_t>(tree.n()), 0);
  if (flips) {
    if (flips->size() != x.size()) throw InvalidInput("need one flip bit per agent");
    x = *flips;
  } else {
    for (AgentId v = 0; v < tree.n(); ++v)
      if (!detail::is_terminal(tree, v)) x[static_cast<std::size_t>(v)] = rng.bit();
  }
  const auto bits = SideBits::from_table(kr.table);
  kr.announcements = detail::announce(tree, bits, x);

  const auto leaves = tree.leaves();
  if (terminal) {
    if (tree.degree(*terminal) != 1) throw InvalidInput("chosen agent is not a terminal");
    kr.chosen_terminal = *terminal;
  } else {
    kr.chosen_terminal = leaves[rng.below(leaves.size())];
  }
  kr.shared_bit = kr.table.at(detail::incident_edges(tree, kr.chosen_terminal).front());
  for (AgentId j = 0; j < tree.n(); ++j)
    kr.reconstructions.push_back(detail::reconstruct(tree, bits, kr.announcements, j, kr.chosen_terminal));
  for (int r : kr.reconstructions)
    if (r != kr.shared_bit) throw InternalError("agents disagree on the shared bit");
  return kr;
}

struct EveView {
  std::vector<EdgeKeyTable> tables;  // every hidden table consistent with the announcements
  std::size_t configurations = 0;    // (table, flips) pairs
  std::map<int, std::size_t> by_shared_bit;

  bool balanced() const {
    return by_shared_bit.size() == 2 && by_shared_bit.at(0) == by_shared_bit.at(1);
  }
};

/// Brute force over all edge tables and flip bits, keeping those that
/// reproduce the public announcements.
inline EveView eve_consistent_configs(const EprGraph& tree, const std::vector<RandomizedRecord>& ann, AgentId terminal) {
  require_spanning_tree(tree);
  const auto edges = tree.edges();
  std::vector<AgentId> announcers;
  for (AgentId v = 0; v < tree.n(); ++v)
    if (!detail::is_terminal(tree, v)) announcers.push_back(v);
  if (edges.size() + announcers.size() > 24) throw LimitExceeded("too many hidden bits to enumerate");
  const Edge te = detail::incident_edges(tree, terminal).front();

  EveView view;
  for (std::uint32_t tm = 0; tm < (1u << edges.size()); ++tm) {
    EdgeKeyTable t;
    for (std::size_t i = 0; i < edges.size(); ++i) t[edges[i]] = static_cast<int>((tm >> i) & 1u);
    std::size_t hits = 0;
    for (std::uint32_t fm = 0; fm < (1u << announcers.size()); ++fm) {
      std::vector<int> x(static_cast<std::size_t>(tree.n()), 0);
      for (std::size_t i = 0; i < announcers.size(); ++i)
        x[static_cast<std::size_t>(announcers[i])] = static_cast<int>((fm >> i) & 1u);
      auto a = detail::announce(tree, SideBits::from_table(t), x);
      bool same = a.size() == ann.size();
      for (std::size_t i = 0; same && i < a.size(); ++i)
        same = a[i].agent == ann[i].agent && a[i].entries == ann[i].entries;
      if (same) ++hits;
    }
    if (hits) {
      view.tables.push_back(t);
      view.configurations += hits;
      view.by_shared_bit[t.at(te)] += hits;
    }
  }
  view.by_shared_bit.try_emplace(0, 0);
  view.by_shared_bit.try_emplace(1, 0);
  return view;
}

inline EveView eve_consistent_configs(const KeyRound& r) {
  return eve_consistent_configs(r.tree, r.announcements, r.chosen_terminal);
}

struct Rational {
  long long num = 0, den = 1;
  bool operator==(const Rational&) const = default;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Key bits per pairwise bit consumed: (k n) / (2 m (n-1)).
inline Rational random_efficiency(long long n, long long m, long long k) {
  if (n < 2 || m < 1 || k < 1 || k > m) throw InvalidInput("need n >= 2 and 1 <= k <= m");
  long long num = k * n, den = 2 * m * (n - 1);
  const long long g = std::gcd(num, den);
  return {num / g, den / g};
}

// ---------------------------------------------------------------------------
// Binary linear codes, systematic form G = [I_k | P].

class LinearCode {
 public:
  LinearCode(int m, int k, std::vector<std::vector<int>> parity) : m_(m), k_(k), p_(std::move(parity)) {
    if (k < 1 || m < k || m > 24) throw InvalidInput("code needs 1 <= k <= m <= 24");
    if (static_cast<int>(p_.size()) != k) throw InvalidInput("parity block needs k rows");
    for (const auto& row : p_) {
      if (static_cast<int>(row.size()) != m - k) throw InvalidInput("parity rows need m-k columns");
      for (int b : row)
        if (b != 0 && b != 1) throw InvalidInput("parity entries must be bits");
    }
    d_ = m_ + 1;
    for (std::uint32_t w = 1; w < (1u << k_); ++w) d_ = std::min(d_, std::popcount(encode_mask(w)));
    if (k_ == m_) d_ = 1;
  }

  static LinearCode hamming74() { return LinearCode(7, 4, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}); }
  static LinearCode repetition(int m) { return LinearCode(m, 1, {std::vector<int>(static_cast<std::size_t>(m - 1), 1)}); }

  int m() const { return m_; }
  int k() const { return k_; }
  int d() const { return d_; }
  int t() const { return (d_ - 1) / 2; }
  const std::vector<std::vector<int>>& parity() const { return p_; }

  // bit i of a mask is position i of the word
  std::uint32_t encode_mask(std::uint32_t msg) const {
    std::uint32_t c = msg & ((1u << k_) - 1u);
    for (int j = 0; j < m_ - k_; ++j) {
      int b = 0;
      for (int i = 0; i < k_; ++i) b ^= static_cast<int>((msg >> i) & 1u) & p_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      c |= static_cast<std::uint32_t>(b) << (k_ + j);
    }
    return c;
  }

  std::vector<int> encode(std::uint32_t msg) const { return to_bits(encode_mask(msg), m_); }

  /// Nearest codeword; ties go to the lowest message index.
  std::uint32_t decode_index(const std::vector<int>& word) const {
    const std::uint32_t w = from_bits(word, m_);
    std::uint32_t best = 0;
    int best_d = m_ + 1;
    for (std::uint32_t msg = 0; msg < (1u << k_); ++msg) {
      const int dist = std::popcount(encode_mask(msg) ^ w);
      if (dist < best_d) best_d = dist, best = msg;
    }
    return best;
  }

  std::vector<int> decode(const std::vector<int>& word) const { return encode(decode_index(word)); }

  std::vector<int> syndrome(const std::vector<int>& word) const {
    const auto w = from_bits(word, m_);
    std::vector<int> s(static_cast<std::size_t>(m_ - k_));
    for (int j = 0; j < m_ - k_; ++j) {
      int b = static_cast<int>((w >> (k_ + j)) & 1u);
      for (int i = 0; i < k_; ++i) b ^= static_cast<int>((w >> i) & 1u) & p_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      s[static_cast<std::size_t>(j)] = b;
    }
    return s;
  }

  static std::vector<int> to_bits(std::uint32_t v, int len) {
    std::vector<int> out(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) out[static_cast<std::size_t>(i)] = static_cast<int>((v >> i) & 1u);
    return out;
  }

  static std::uint32_t from_bits(const std::vector<int>& b, int len) {
    if (static_cast<int>(b.size()) != len) throw InvalidInput("word has the wrong length");
    std::uint32_t v = 0;
    for (int i = 0; i < len; ++i) {
      if (b[static_cast<std::size_t>(i)] != 0 && b[static_cast<std::size_t>(i)] != 1) throw InvalidInput("word entries must be bits");
      v |= static_cast<std::uint32_t>(b[static_cast<std::size_t>(i)]) << i;
    }
    return v;
  }

 private:
  int m_, k_, d_ = 0;
  std::vector<std::vector<int>> p_;
};

// ---------------------------------------------------------------------------
// n-QKD pipeline over a spanning tree

struct QkdOutcome {
  bool aborted = false;
  double error_rate = 0;            // worst agent's check-bit disagreement fraction
  int max_disagreements = 0;
  std::vector<int> check_positions;  // among the 2m slots
  std::vector<AgentId> terminals;    // per slot
  std::vector<int> broadcast;        // c xor v
  std::uint32_t key_index = 0;       // leader's
  std::vector<int> key;              // k bits
  std::vector<std::uint32_t> agent_keys;
  bool agree = false;
  int cbits = 0;
};

namespace detail {

/// One perfect EPR pair measured in the computational basis on both sides;
/// the second copy is flipped with probability p.
inline std::pair<int, int> measured_pair(double p, Rng& rng) {
  Register r = cat_state(2);
  auto [o1, r1] = measure(std::move(r), 0, Basis::Computational, rng);
  auto [o2, r2] = measure(std::move(r1), 1, Basis::Computational, rng);
  (void)r2;
  int b = o2.value;
  if (p > 0 && rng.bernoulli(p)) b ^= 1;
  return {o1.value, b};
}

inline std::vector<int> choose_checks(int m, Rng& rng) {
  auto perm = rng.permutation(static_cast<std::size_t>(2 * m));
  std::vector<int> checks;
  for (int i = 0; i < m; ++i) checks.push_back(static_cast<int>(perm[static_cast<std::size_t>(i)]));
  std::sort(checks.begin(), checks.end());
  return checks;
}

}  // namespace detail

inline QkdOutcome nqkd_pipeline(const EprGraph& tree, const LinearCode& code, double noise_p, Rng& rng,
                                AgentId leader = 0) {
  require_spanning_tree(tree);
  const int n = tree.n();
  if (n < 2) throw InvalidInput("need at least two agents");
  if (noise_p < 0 || noise_p > 1) throw InvalidInput("noise probability must lie in [0,1]");
  if (leader < 0 || leader >= n) throw InvalidInput("leader out of range");
  const int m = code.m(), slots = 2 * m;
  QkdOutcome out;

  // steps 1-4: per slot, pairwise bits then the spanning-tree reduction
  std::vector<std::vector<int>> value(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(slots)));
  const auto leaves = tree.leaves();
  for (int s = 0; s < slots; ++s) {
    SideBits bits;
    for (const auto& e : tree.edges()) bits.bits[e] = detail::measured_pair(noise_p, rng);
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    for (AgentId v = 0; v < n; ++v)
      if (!detail::is_terminal(tree, v)) x[static_cast<std::size_t>(v)] = rng.bit();
    auto ann = detail::announce(tree, bits, x);
    for (const auto& r : ann) out.cbits += static_cast<int>(r.entries.size());
    const AgentId term = leaves[rng.below(leaves.size())];
    out.terminals.push_back(term);
    out.cbits += 1;
    for (AgentId j = 0; j < n; ++j)
      value[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] = detail::reconstruct(tree, bits, ann, j, term);
  }

  // step 5: public comparison of m check bits against the leader's
  out.check_positions = detail::choose_checks(m, rng);
  const auto& lv = value[static_cast<std::size_t>(leader)];
  for (AgentId j = 0; j < n; ++j) {
    int dis = 0;
    for (int c : out.check_positions) dis += value[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] != lv[static_cast<std::size_t>(c)];
    out.max_disagreements = std::max(out.max_disagreements, dis);
  }
  out.cbits += n * m;
  out.error_rate = static_cast<double>(out.max_disagreements) / m;
  if (out.max_disagreements > code.t()) {
    out.aborted = true;
    return out;
  }

  // steps 6-8: leader broadcasts c xor v; everyone corrects to a codeword
  std::vector<int> keep;
  for (int s = 0, ci = 0; s < slots; ++s) {
    if (ci < m && out.check_positions[static_cast<std::size_t>(ci)] == s) {
      ++ci;
      continue;
    }
    keep.push_back(s);
  }
  out.key_index = static_cast<std::uint32_t>(rng.below(1ull << code.k()));
  const auto c = code.encode(out.key_index);
  for (int i = 0; i < m; ++i) out.broadcast.push_back(c[static_cast<std::size_t>(i)] ^ lv[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])]);
  out.cbits += m;
  out.agree = true;
  for (AgentId j = 0; j < n; ++j) {
    std::vector<int> w(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      w[static_cast<std::size_t>(i)] = out.broadcast[static_cast<std::size_t>(i)] ^ value[static_cast<std::size_t>(j)][static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])];
    const auto idx = j == leader ? out.key_index : code.decode_index(w);
    out.agent_keys.push_back(idx);
    out.agree &= idx == out.key_index;
  }
  out.key = LinearCode::to_bits(out.key_index, code.k());
  return out;
}

// ---------------------------------------------------------------------------
// Two-group parity QKD

struct GroupBits {
  int effective_a = 0;
  int effective_b = 0;
  std::vector<int> outcomes;  // per agent, diagonal basis
};

namespace detail {

inline std::vector<int> group_mask(int n, const std::vector<AgentId>& group_a) {
  if (n < 2) throw InvalidInput("need at least two agents");
  std::vector<int> in_a(static_cast<std::size_t>(n), 0);
  for (AgentId a : group_a) {
    if (a < 0 || a >= n) throw InvalidInput("group member out of range");
    if (in_a[static_cast<std::size_t>(a)]) throw InvalidInput("duplicate group member");
    in_a[static_cast<std::size_t>(a)] = 1;
  }
  if (group_a.empty() || static_cast<int>(group_a.size()) == n) throw InvalidInput("group A must be a nonempty proper subset");
  return in_a;
}

}  // namespace detail

/// n-CAT prepared by Protocol II on a path, every agent measures in the
/// diagonal basis, each group XORs its outcomes.
inline GroupBits two_group_round(int n, const std::vector<AgentId>& group_a, Rng& rng, double noise_p = 0) {
  const auto in_a = detail::group_mask(n, group_a);
  auto rep = protocol_two_ncat(path_graph(n), rng);
  auto& ns = rep.final;
  GroupBits g;
  for (AgentId a = 0; a < n; ++a) {
    const auto mine = ns.sites_of(a);
    if (mine.size() != 1) throw InternalError("expected one qubit per agent");
    int b = local_measure(ns, a, mine.front(), Basis::Diagonal, rng);
    if (noise_p > 0 && rng.bernoulli(noise_p)) b ^= 1;
    g.outcomes.push_back(b);
    (in_a[static_cast<std::size_t>(a)] ? g.effective_a : g.effective_b) ^= b;
  }
  return g;
}

/// Exact check: after H on every qubit of the n-CAT, every basis state with
/// nonzero amplitude has equal group parities.
inline bool two_group_parity_exact(int n, const std::vector<AgentId>& group_a) {
  const auto in_a = detail::group_mask(n, group_a);
  if (n > 20) throw LimitExceeded("too many qubits for exact enumeration");
  Register r = cat_state(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) apply_inplace(r, gates::H(static_cast<std::size_t>(i)));
  for (std::size_t idx = 0; idx < r.size(); ++idx) {
    if (std::abs(r.amps()[static_cast<Eigen::Index>(idx)]) < 1e-12) continue;
    int pa = 0, pb = 0;
    for (int i = 0; i < n; ++i) {
      const int bit = r.digit(idx, static_cast<std::size_t>(i));
      (in_a[static_cast<std::size_t>(i)] ? pa : pb) ^= bit;
    }
    if (pa != pb) return false;
  }
  return true;
}

/// Key agreement between two groups: 2m parity rounds, m public checks,
/// then the same code reconciliation as the two-party case.
inline QkdOutcome two_group_pipeline(int n, const std::vector<AgentId>& group_a, const LinearCode& code, double noise_p,
                                     Rng& rng) {
  detail::group_mask(n, group_a);
  const int m = code.m(), slots = 2 * m;
  std::vector<int> va, vb;
  QkdOutcome out;
  for (int s = 0; s < slots; ++s) {
    auto g = two_group_round(n, group_a, rng, noise_p);
    va.push_back(g.effective_a);
    vb.push_back(g.effective_b);
  }
  out.check_positions = detail::choose_checks(m, rng);
  for (int c : out.check_positions) out.max_disagreements += va[static_cast<std::size_t>(c)] != vb[static_cast<std::size_t>(c)];
  out.cbits += 2 * m;
  out.error_rate = static_cast<double>(out.max_disagreements) / m;
  if (out.max_disagreements > code.t()) {
    out.aborted = true;
    return out;
  }
  std::vector<int> keep;
  for (int s = 0, ci = 0; s < slots; ++s) {
    if (ci < m && out.check_positions[static_cast<std::size_t>(ci)] == s) {
      ++ci;
      continue;
    }
    keep.push_back(s);
  }
  out.key_index = static_cast<std::uint32_t>(rng.below(1ull << code.k()));
  const auto c = code.encode(out.key_index);
  std::vector<int> w(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto s = static_cast<std::size_t>(keep[static_cast<std::size_t>(i)]);
    out.broadcast.push_back(c[static_cast<std::size_t>(i)] ^ va[s]);
    w[static_cast<std::size_t>(i)] = out.broadcast.back() ^ vb[s];
  }
  out.cbits += m;
  out.agent_keys = {out.key_index, code.decode_index(w)};
  out.agree = out.agent_keys[0] == out.agent_keys[1];
  out.key = LinearCode::to_bits(out.key_index, code.k());
  return out;
}

/// Probability that a group of s independent bits, each wrong with
/// probability p, has the wrong parity.
inline double group_error_prob(int s, double p) {
  if (s < 1) throw InvalidInput("group size must be positive");
  if (p < 0 || p > 1) throw InvalidInput("probability must lie in [0,1]");
  double total = 0, binom = 1;  // C(s, r)
  for (int r = 0; r <= s; ++r) {
    if (r > 0) binom = binom * (s - r + 1) / r;
    if (r % 2 == 1) total += binom * std::pow(p, r) * std::pow(1 - p, s - r);
  }
  return total;
}

inline double binary_entropy(double p) {
  if (p < 0 || p > 1) throw InvalidInput("probability must lie in [0,1]");
  if (p == 0 || p == 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

inline double channel_capacity(double p) { return 1 - binary_entropy(p); }

// ---------------------------------------------------------------------------
// Security hypergraphs

using SecurityHypergraph = EntangledHypergraph;

struct SecurityGraph {
  std::vector<AgentId> survivors;
  std::vector<Edge> edges;  // original agent ids
};

/// Keep agents in at least two trustful groups; join survivors that share a group.
inline SecurityGraph reduce_security_hypergraph(const SecurityHypergraph& h) {
  if (!hypergraph_is_connected(h)) throw NoScheme("security hypergraph is disconnected");
  SecurityGraph g;
  for (AgentId v = 0; v < h.n(); ++v)
    if (h.membership(v) >= 2) g.survivors.push_back(v);
  for (std::size_t i = 0; i < g.survivors.size(); ++i)
    for (std::size_t j = i + 1; j < g.survivors.size(); ++j)
      if (co_hyperedged(h, g.survivors[i], g.survivors[j])) g.edges.emplace_back(g.survivors[i], g.survivors[j]);
  return g;
}

}  // namespace entnet
