#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entnet/error.hpp"
#include "entnet/qss/access.hpp"
#include "entnet/qss/encryption.hpp"
#include "entnet/qss/homogenize.hpp"
#include "entnet/qss/qutrit_code.hpp"
#include "entnet/qss/shamir.hpp"
#include "entnet/rng.hpp"
#include "entnet/statevec.hpp"

namespace entnet::qss {

// ---------------------------------------------------------------------------
// Threshold parameter rules

struct AssistedParams {
  int k = 0, n = 0, gamma = 0;
  int k_assisted = 0, n_assisted = 0;  // ((k+gamma, n+gamma))
  int resident = 0;
};

inline AssistedParams assisted_params(int k, int n) {
  if (k < 1 || k > n) throw InvalidInput("need 1 <= k <= n");
  const int gamma = 2 * k > n ? 0 : n - 2 * k + 1;
  return {k, n, gamma, k + gamma, n + gamma, gamma};
}

struct Inflation {
  int k = 0, n = 0, gamma = 0;
  int k_new = 0, n_new = 0;
  int added_c_players = 0;
};

inline Inflation inflate_conformal(int k, int n, int gamma) {
  if (k < 1 || k > n) throw InvalidInput("need 1 <= k <= n");
  if (2 * k <= n) throw InvalidInput("((" + std::to_string(k) + "," + std::to_string(n) + ")) violates no-cloning");
  if (gamma < 1) throw InvalidInput("inflation needs gamma >= 1");
  return {k, n, gamma, k + gamma, n + gamma, gamma};
}

/// Validates a request to grow ((k,n)) into ((k2,n2)) with c-players only.
inline Inflation request_inflation(int k, int n, int k2, int n2) {
  if (k < 1 || k > n || k2 < 1 || k2 > n2) throw InvalidInput("need 1 <= k <= n");
  if (n2 <= n) throw InvalidInput("inflation must add players");
  if (k2 == k)
    throw SchemeRejected("a threshold scheme cannot be inflated at constant threshold: restricting ((" + std::to_string(k) +
                         "," + std::to_string(n2) + ")) by " + std::to_string(n2 - n) + " players gives ((" +
                         std::to_string(k - (n2 - n)) + "," + std::to_string(n) + "))");
  if (k2 - k != n2 - n) throw SchemeRejected("only conformal inflations ((k+g, n+g)) restrict back to ((k,n))");
  return inflate_conformal(k, n, n2 - n);
}

// ---------------------------------------------------------------------------
// Scheme trees

enum class NodeKind { Quantum, Classical, Encrypt, Player, Dealer, Homogenize };

/// Quantum / Classical: ((k,n)) / (k,n) threshold over the children.
/// Encrypt: children[0] receives the encrypted quantum data, children[1] the key.
/// Homogenize: children are the q-players receiving homogenized qubits.
struct PlanNode {
  NodeKind kind = NodeKind::Player;
  int k = 0;
  int player = -1;
  int qubits = 1;  // for players under a Homogenize node
  std::vector<PlanNode> children;

  int n() const { return static_cast<int>(children.size()); }
};

inline PlanNode player_node(int p, int qubits = 1) { return {NodeKind::Player, 0, p, qubits, {}}; }
inline PlanNode dealer_node() { return {NodeKind::Dealer, 0, -1, 1, {}}; }
inline PlanNode encrypt_node(PlanNode data, PlanNode key) {
  return {NodeKind::Encrypt, 0, -1, 1, {std::move(data), std::move(key)}};
}

inline PlanNode threshold_node(NodeKind kind, int k, std::vector<PlanNode> children) {
  if (children.size() == 1 && k == 1) return std::move(children.front());  // ((1,1)) is the identity
  return {kind, k, -1, 1, std::move(children)};
}

inline PlanNode players_node(NodeKind kind, int k, PlayerSet s) {
  std::vector<PlanNode> c;
  for (int p : members(s)) c.push_back(player_node(p));
  return threshold_node(kind, k, std::move(c));
}

struct SchemePlan {
  std::string kind;
  AccessStructure access;
  PlanNode root;
  PlayerSet q_players = 0;
  PlayerSet c_players = 0;
  int resident_shares = 0;
  std::string diagram;
};

namespace detail {

inline void collect_roles(const PlanNode& node, bool quantum, PlayerSet& q, PlayerSet& all, int& resident) {
  switch (node.kind) {
    case NodeKind::Player:
      all |= PlayerSet{1} << node.player;
      if (quantum) q |= PlayerSet{1} << node.player;
      return;
    case NodeKind::Dealer:
      if (quantum) ++resident;
      return;
    case NodeKind::Encrypt:
      collect_roles(node.children[0], quantum, q, all, resident);
      collect_roles(node.children[1], false, q, all, resident);
      return;
    case NodeKind::Quantum:
    case NodeKind::Homogenize:
    case NodeKind::Classical:
      for (const auto& c : node.children)
        collect_roles(c, quantum && node.kind != NodeKind::Classical, q, all, resident);
      return;
  }
}

inline bool all_players(const PlanNode& node) {
  for (const auto& c : node.children)
    if (c.kind != NodeKind::Player) return false;
  return true;
}

inline std::vector<std::string> render(const PlanNode& node, const std::vector<std::string>& names) {
  auto pname = [&](int p) { return p < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(p)] : std::to_string(p); };
  std::string head;
  switch (node.kind) {
    case NodeKind::Player: return {pname(node.player)};
    case NodeKind::Dealer: return {"dealer"};
    case NodeKind::Encrypt: {
      auto data = render(node.children[0], names);
      auto key = render(node.children[1], names);
      std::vector<std::string> out(data.begin(), data.end() - 1);
      out.push_back(data.back() + " -> " + key.front());
      for (std::size_t i = 1; i < key.size(); ++i) out.push_back(key[i]);
      return out;
    }
    case NodeKind::Quantum: head = "((" + std::to_string(node.k) + "," + std::to_string(node.n()) + "))"; break;
    case NodeKind::Classical: head = "(" + std::to_string(node.k) + "," + std::to_string(node.n()) + ")"; break;
    case NodeKind::Homogenize: head = "homogenize"; break;
  }
  if (all_players(node)) {
    std::string line = head + " :";
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      line += (i ? ", " : " ") + pname(node.children[i].player);
      if (node.children[i].qubits != 1) line += "[" + std::to_string(node.children[i].qubits) + "]";
    }
    return {line};
  }
  std::vector<std::string> out{head + " {"};
  for (const auto& c : node.children)
    for (const auto& l : render(c, names)) out.push_back("  " + l);
  out.push_back("}");
  return out;
}

}  // namespace detail

inline std::string brace_diagram(const PlanNode& root, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& l : detail::render(root, names)) out += l + "\n";
  return out;
}

inline SchemePlan finish_plan(std::string kind, const AccessStructure& access, PlanNode root) {
  PlayerSet q = 0, all = 0;
  int resident = 0;
  detail::collect_roles(root, true, q, all, resident);
  const PlayerSet everyone = (PlayerSet{1} << access.n()) - 1;
  SchemePlan plan{std::move(kind), access, std::move(root), q, everyone & ~q, resident, {}};
  plan.diagram = brace_diagram(plan.root, access.names());
  return plan;
}

/// Can `coalition`, together with the dealer's resident shares, recover the
/// data entering this node?
inline bool recovers(const PlanNode& node, PlayerSet coalition) {
  switch (node.kind) {
    case NodeKind::Player: return coalition >> node.player & 1u;
    case NodeKind::Dealer: return true;
    case NodeKind::Encrypt: return recovers(node.children[0], coalition) && recovers(node.children[1], coalition);
    case NodeKind::Homogenize:
      for (const auto& c : node.children)
        if (!recovers(c, coalition)) return false;
      return true;
    case NodeKind::Quantum:
    case NodeKind::Classical: {
      int got = 0;
      for (const auto& c : node.children) got += recovers(c, coalition);
      return got >= node.k;
    }
  }
  return false;
}

inline AccessStructure plan_access(const SchemePlan& plan) {
  return induced_access(plan.access.n(), [&](PlayerSet s) { return recovers(plan.root, s); }, plan.access.names());
}

struct PlanValidation {
  bool ok = true;
  std::vector<std::string> problems;
};

namespace detail {

inline void check_nodes(const PlanNode& node, PlanValidation& v) {
  auto fail = [&](std::string s) {
    v.ok = false;
    v.problems.push_back(std::move(s));
  };
  const std::string tag = "(" + std::to_string(node.k) + "," + std::to_string(node.n()) + ")";
  switch (node.kind) {
    case NodeKind::Quantum:
      if (node.k < 1 || node.k > node.n()) fail("bad quantum threshold " + tag);
      if (2 * node.k <= node.n()) fail("quantum node (" + tag + ") violates no-cloning");
      break;
    case NodeKind::Classical:
      if (node.k < 1 || node.k > node.n()) fail("bad classical threshold " + tag);
      break;
    case NodeKind::Encrypt:
      if (node.children.size() != 2) fail("encryption node needs data and key");
      break;
    case NodeKind::Homogenize:
      for (const auto& c : node.children)
        if (c.kind != NodeKind::Player) fail("homogenized qubits go to players");
      break;
    default: break;
  }
  for (const auto& c : node.children) check_nodes(c, v);
}

}  // namespace detail

/// Structural checks: no-cloning at quantum nodes, the tree realizes exactly
/// the target access structure, and every minimal set holds a q-share.
inline PlanValidation validate(const SchemePlan& plan) {
  PlanValidation v;
  detail::check_nodes(plan.root, v);
  if (!v.ok) return v;
  const auto induced = plan_access(plan);
  if (!(induced == plan.access)) {
    v.ok = false;
    v.problems.push_back("plan realizes " + induced.str() + " instead of " + plan.access.str());
  }
  for (auto alpha : plan.access.sets())
    if ((alpha & plan.q_players) == 0) {
      v.ok = false;
      v.problems.push_back("authorized set " + plan.access.name_of(alpha) + " holds no q-share");
    }
  return v;
}

// ---------------------------------------------------------------------------
// Planners

/// Layered assisted scheme: ((r,2r-1)) over ((|a_j|,|a_j|)) blocks plus r-1
/// resident shares.
inline SchemePlan assisted_plan(const AccessStructure& a) {
  const int r = static_cast<int>(a.sets().size());
  std::vector<PlanNode> top;
  for (auto alpha : a.sets()) top.push_back(players_node(NodeKind::Quantum, set_size(alpha), alpha));
  for (int i = 0; i < r - 1; ++i) top.push_back(dealer_node());
  PlanNode root = r == 1 ? std::move(top.front()) : threshold_node(NodeKind::Quantum, r, std::move(top));
  return finish_plan("assisted", a, std::move(root));
}

/// Hitting-set compression: M q-players receive encrypted shares of a
/// ((M,2M-1)) scheme, each key shared inside the authorized sets it serves.
inline SchemePlan compress_plan(const AccessStructure& a) {
  const auto hit = min_q_players(a);
  const int M = hit.size;
  std::vector<PlanNode> top;
  for (int h : hit.players) {
    std::vector<PlanNode> blocks;
    for (auto alpha : a.sets()) {
      // each set is served by its first hitting-set member
      int owner = -1;
      for (int c : hit.players)
        if (alpha >> c & 1u) {
          owner = c;
          break;
        }
      if (owner == h) blocks.push_back(players_node(NodeKind::Classical, set_size(alpha), alpha));
    }
    const int nb = static_cast<int>(blocks.size());
    PlanNode key = nb == 1 ? std::move(blocks.front()) : PlanNode{NodeKind::Classical, 1, -1, 1, std::move(blocks)};
    top.push_back(encrypt_node(player_node(h), std::move(key)));
  }
  for (int i = 0; i < M - 1; ++i) top.push_back(dealer_node());
  PlanNode root{NodeKind::Quantum, M, -1, 1, std::move(top)};
  return finish_plan("compressed", a, std::move(root));
}

/// ((k,n)) with at most n-k+1 q-players: ((k+g, n+g)) first layer, the
/// first n-k+1 players get encrypted shares, keys shared (k,n).
inline SchemePlan compress_threshold(int k, int n) {
  const auto ap = assisted_params(k, n);
  const auto access = AccessStructure::threshold(k, n);
  const PlayerSet everyone = (PlayerSet{1} << n) - 1;
  std::vector<PlanNode> top;
  for (int p = 0; p < n - k + 1; ++p) top.push_back(encrypt_node(player_node(p), players_node(NodeKind::Classical, k, everyone)));
  for (int i = 0; i < ap.gamma + k - 1; ++i) top.push_back(dealer_node());
  PlanNode root{NodeKind::Quantum, ap.k_assisted, -1, 1, std::move(top)};
  return finish_plan("threshold-compressed", access, std::move(root));
}

// ---------------------------------------------------------------------------
// Twin-threshold schemes. Players 0..q-1 are the q-players.

struct TwinThresholdSpec {
  int k_c = 0, k_q = 0, n = 0, q = 0;
  PlayerSet common = 0;

  PlayerSet q_set() const { return (PlayerSet{1} << q) - 1; }
  PlayerSet c_set() const { return ((PlayerSet{1} << n) - 1) & ~q_set(); }
  int lambda_q() const { return set_size(common & q_set()); }
  int lambda_c() const { return set_size(common & c_set()); }

  bool authorized(PlayerSet t) const {
    return set_size(t & q_set()) >= k_q && set_size(t & c_set()) >= k_c && (t & common) == common;
  }
};

enum class Scheme2Split { AllCommon, CommonClassicalOnly };

namespace detail {

inline void check_twin_basics(const TwinThresholdSpec& s, const std::string& scheme) {
  auto bad = [&](const std::string& m) { throw SchemeRejected(scheme + ": " + m); };
  if (s.n < 1 || s.n > kMaxPlayers) bad("player count out of range");
  if (s.q < 1 || s.q > s.n) bad("need 1 <= q <= n");
  if (s.common & ~((PlayerSet{1} << s.n) - 1)) bad("common set names an unknown player");
  if (s.k_q < 1 || s.k_q > s.q) bad("need 1 <= k_q <= q");
  if (s.k_c < 0 || s.k_c > s.n - s.q) bad("need 0 <= k_c <= n - q");
  if (s.lambda_q() > s.k_q) bad("more common q-players than k_q");
  if (s.lambda_c() > s.k_c) bad("more common c-players than k_c");
}

inline PlanNode join(NodeKind kind, std::vector<PlanNode> parts) {
  if (parts.size() == 1) return std::move(parts.front());
  const int k = static_cast<int>(parts.size());
  return {kind, k, -1, 1, std::move(parts)};
}

inline AccessStructure twin_access(const TwinThresholdSpec& s) {
  return induced_access(s.n, [&](PlayerSet t) { return s.authorized(t); });
}

}  // namespace detail

inline SchemePlan plan_twin_threshold(const TwinThresholdSpec& s, int variant,
                                      Scheme2Split split = Scheme2Split::AllCommon,
                                      std::vector<int> qubits_per_player = {}) {
  const std::string name = "Scheme " + std::to_string(variant);
  if (variant < 1 || variant > 3) throw InvalidInput("scheme variant must be 1, 2 or 3");
  detail::check_twin_basics(s, name);
  const PlayerSet Q = s.q_set(), Qc = s.c_set(), C = s.common;

  if (variant == 1) {
    if (C) throw SchemeRejected(name + ": no common set (use Scheme 2)");
    if (2 * s.k_q <= s.q) throw SchemeRejected(name + ": need k_q > q/2 for no-cloning");
    PlanNode data = players_node(NodeKind::Quantum, s.k_q, Q);
    PlanNode root = s.k_c == 0 ? std::move(data) : encrypt_node(std::move(data), players_node(NodeKind::Classical, s.k_c, Qc));
    return finish_plan("twin-threshold scheme 1", detail::twin_access(s), std::move(root));
  }

  const int lq = s.lambda_q(), lc = s.lambda_c();
  if (variant == 2) {
    const int kq2 = s.k_q - lq, q2 = s.q - lq;
    if (q2 > 0 && 2 * kq2 <= q2) throw SchemeRejected(name + ": need (k_q - lambda_q) > (q - lambda_q)/2 for no-cloning");
    std::vector<PlanNode> qparts;
    if (lq > 0) qparts.push_back(players_node(NodeKind::Quantum, lq, Q & C));
    if (q2 > 0 && kq2 > 0) qparts.push_back(players_node(NodeKind::Quantum, kq2, Q & ~C));
    std::vector<PlanNode> kparts;
    if (split == Scheme2Split::AllCommon) {
      if (C) kparts.push_back(players_node(NodeKind::Classical, set_size(C), C));
    } else if (lc > 0) {
      kparts.push_back(players_node(NodeKind::Classical, lc, Qc & C));
    }
    if (s.k_c - lc > 0) kparts.push_back(players_node(NodeKind::Classical, s.k_c - lc, Qc & ~C));
    PlanNode data = detail::join(NodeKind::Quantum, std::move(qparts));
    PlanNode root = kparts.empty() ? std::move(data) : encrypt_node(std::move(data), detail::join(NodeKind::Classical, std::move(kparts)));
    return finish_plan(split == Scheme2Split::AllCommon ? "twin-threshold scheme 2" : "twin-threshold scheme 2 (alternative key split)",
                       detail::twin_access(s), std::move(root));
  }

  // Scheme 3: homogenization, all q-players required
  if ((Q & C) != Q) throw SchemeRejected(name + ": requires every q-player in the common set");
  if (s.k_q != s.q) throw SchemeRejected(name + ": requires k_q = q");
  if (qubits_per_player.empty()) qubits_per_player.assign(static_cast<std::size_t>(s.q), 1);
  if (static_cast<int>(qubits_per_player.size()) != s.q) throw InvalidInput(name + ": need one qubit count per q-player");
  int total = 0;
  std::vector<PlanNode> holders;
  for (int p = 0; p < s.q; ++p) {
    const int m = qubits_per_player[static_cast<std::size_t>(p)];
    if (m < 1) throw InvalidInput(name + ": every q-player needs at least one qubit");
    total += m;
    holders.push_back(player_node(p, m));
  }
  if (total > 9) throw LimitExceeded(name + ": at most 9 homogenized qubits");
  PlanNode data{NodeKind::Homogenize, s.q, -1, 1, std::move(holders)};
  std::vector<PlanNode> kparts;
  kparts.push_back(players_node(NodeKind::Classical, s.q + lc, Q | (Qc & C)));
  if (s.k_c - lc > 0) kparts.push_back(players_node(NodeKind::Classical, s.k_c - lc, Qc & ~C));
  PlanNode root = encrypt_node(std::move(data), detail::join(NodeKind::Classical, std::move(kparts)));
  return finish_plan("twin-threshold scheme 3", detail::twin_access(s), std::move(root));
}

// ---------------------------------------------------------------------------
// Simulation

/// Informationally complete test secrets for dimension d (d^2 states).
inline std::vector<Register> probe_secrets(int d) {
  std::vector<Register> out;
  for (int j = 0; j < d; ++j) out.push_back(basis_state({d}, {j}));
  const double r = 1 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      std::vector<cplx> a(static_cast<std::size_t>(d), 0), b(static_cast<std::size_t>(d), 0);
      a[static_cast<std::size_t>(j)] = b[static_cast<std::size_t>(j)] = r;
      a[static_cast<std::size_t>(k)] = r;
      b[static_cast<std::size_t>(k)] = cplx(0, r);
      out.push_back(from_amplitudes({d}, a));
      out.push_back(from_amplitudes({d}, b));
    }
  return out;
}

struct SimulationReport {
  int secret_dim = 0;
  int authorized_checked = 0;
  int unauthorized_checked = 0;
  double min_fidelity = 1;          // over authorized coalitions and probe secrets
  double max_view_deviation = 0;    // unauthorized views vs. each other across secrets
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

namespace detail {

struct Dealt {
  std::vector<std::size_t> sites;         // quantum leaf site / code positions
  std::vector<std::int64_t> values;       // classical leaf data
  std::vector<std::size_t> ordering;      // homogenize shuffle
  std::vector<std::vector<std::size_t>> player_sites;  // homogenize: sites per child
};

inline bool quantum_simulable(const PlanNode& node) {
  switch (node.kind) {
    case NodeKind::Quantum:
      if (!(node.k == node.n() || (node.k == 2 && node.n() == 3))) return false;
      break;
    case NodeKind::Encrypt: return quantum_simulable(node.children[0]);
    case NodeKind::Homogenize:
    case NodeKind::Player:
    case NodeKind::Dealer: return true;
    case NodeKind::Classical: return false;
  }
  for (const auto& c : node.children)
    if (!quantum_simulable(c)) return false;
  return true;
}

inline bool has_homogenize(const PlanNode& node) {
  if (node.kind == NodeKind::Homogenize) return true;
  for (const auto& c : node.children)
    if (has_homogenize(c)) return true;
  return false;
}

inline int count_encrypt(const PlanNode& node) {
  int c = node.kind == NodeKind::Encrypt;
  for (const auto& ch : node.children) c += count_encrypt(ch);
  return c;
}

// Ordering indices can exceed the share field; they travel as base-p digits.
inline std::vector<std::int64_t> key_digits(std::int64_t v) {
  std::vector<std::int64_t> d;
  for (int i = 0; i < 3; ++i, v /= kDefaultPrime) d.push_back(v % kDefaultPrime);
  return d;
}

inline std::int64_t from_key_digits(const std::vector<std::int64_t>& d) {
  std::int64_t v = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * kDefaultPrime + *it;
  return v;
}

/// One run of the distribution phase with fixed encryption keys.
class Dealer {
 public:
  Dealer(int dim, double theta, Rng& rng) : dim_(dim), theta_(theta), rng_(rng) {}

  Register reg;
  std::map<const PlanNode*, Dealt> dealt;
  std::vector<int> owner;  // per site: player, -1 dealer, -2 nobody

  // encryption keys in tree order; entries are (a,b) for Weyl or (index, 0) for orderings
  std::vector<std::pair<int, int>> keys;
  std::size_t next_key = 0;

  void deal(const PlanNode& root, const Register& secret) {
    reg = secret;
    owner = {-2};
    quantum(root, 0);
  }

 private:
  int dim_;
  double theta_;
  Rng& rng_;

  std::size_t fresh() {
    reg = tensor(reg, basis_state({dim_}, {0}));
    owner.push_back(-2);
    return reg.num_sites() - 1;
  }

  void place(const PlanNode& leaf, std::size_t site) {
    dealt[&leaf].sites = {site};
    owner[site] = leaf.kind == NodeKind::Player ? leaf.player : -1;
  }

  // ((m,m)) as a chain of ((2,2)) splits; each level encodes with the (2,3)
  // code and drops position 2.
  void chain(const PlanNode& node, std::size_t from, std::size_t site) {
    if (from + 1 == node.children.size()) {
      quantum(node.children[from], site);
      return;
    }
    const auto a1 = fresh(), a2 = fresh();
    auto pos = qts23_encode_sites(reg, site, a1, a2);
    dealt[&node].sites.insert(dealt[&node].sites.end(), pos.begin(), pos.end());
    quantum(node.children[from], pos[0]);
    chain(node, from + 1, pos[1]);
  }

  void quantum(const PlanNode& node, std::size_t site) {
    switch (node.kind) {
      case NodeKind::Player:
      case NodeKind::Dealer: place(node, site); return;
      case NodeKind::Quantum:
        if (node.k == 2 && node.n() == 3) {
          const auto a1 = fresh(), a2 = fresh();
          auto pos = qts23_encode_sites(reg, site, a1, a2);
          dealt[&node].sites = {pos.begin(), pos.end()};
          for (int i = 0; i < 3; ++i) quantum(node.children[static_cast<std::size_t>(i)], pos[static_cast<std::size_t>(i)]);
        } else if (node.k == node.n()) {
          chain(node, 0, site);
        } else {
          throw NotSimulable("no construction for ((" + std::to_string(node.k) + "," + std::to_string(node.n()) + "))");
        }
        return;
      case NodeKind::Encrypt: {
        const auto key = keys.at(next_key++);
        if (node.children[0].kind == NodeKind::Homogenize) {
          homogenize_into(node.children[0], site, static_cast<std::size_t>(key.first));
          classical(node.children[1], key_digits(key.first));
        } else {
          weyl_encrypt_site(reg, site, key.first, key.second);
          quantum(node.children[0], site);
          classical(node.children[1], {key.first, key.second});
        }
        return;
      }
      case NodeKind::Homogenize: throw NotSimulable("homogenization needs a classical ordering key");
      case NodeKind::Classical: throw InvalidInput("classical node in a quantum position");
    }
  }

  void homogenize_into(const PlanNode& node, std::size_t site, std::size_t key_index) {
    int total = 0;
    for (const auto& c : node.children) total += c.qubits;
    std::vector<std::size_t> logical{site};
    for (int j = 1; j < total; ++j) logical.push_back(fresh());
    for (int j = 1; j < total; ++j) apply_inplace(reg, gates::PartialSwap(site, logical[static_cast<std::size_t>(j)], theta_));
    const auto order = ordering_from_index(key_index, static_cast<std::size_t>(total));
    auto& d = dealt[&node];
    d.ordering = order;
    d.sites = logical;
    // physical slot i (handed out in child order) holds logical qubit order[i]
    std::size_t slot = 0;
    for (const auto& c : node.children) {
      std::vector<std::size_t> mine;
      for (int m = 0; m < c.qubits; ++m, ++slot) {
        const auto s = logical[order[slot]];
        mine.push_back(s);
        owner[s] = c.player;
      }
      d.player_sites.push_back(mine);
      dealt[&c].sites = mine;
    }
  }

  void classical(const PlanNode& node, const std::vector<std::int64_t>& values) {
    switch (node.kind) {
      case NodeKind::Player:
      case NodeKind::Dealer: dealt[&node].values = values; return;
      case NodeKind::Classical: {
        std::vector<std::vector<std::int64_t>> per(node.children.size());
        for (auto v : values) {
          auto sh = shamir_split(v, node.k, node.n(), rng_);
          for (std::size_t i = 0; i < sh.size(); ++i) per[i].push_back(sh[i].y);
        }
        for (std::size_t i = 0; i < per.size(); ++i) classical(node.children[i], per[i]);
        return;
      }
      default: throw InvalidInput("quantum node in a classical position");
    }
  }
};

/// Reconstruction by a coalition (plus resident shares) on a copy of the dealt state.
class Reconstructor {
 public:
  Reconstructor(const Dealer& d, PlayerSet coalition, double theta) : reg(d.reg), d_(d), t_(coalition), theta_(theta) {}

  Register reg;

  std::optional<std::size_t> quantum(const PlanNode& node) {
    switch (node.kind) {
      case NodeKind::Player:
        if (!(t_ >> node.player & 1u)) return std::nullopt;
        return d_.dealt.at(&node).sites.front();
      case NodeKind::Dealer: return d_.dealt.at(&node).sites.front();
      case NodeKind::Quantum: {
        if (node.k == 2 && node.n() == 3) {
          std::vector<std::pair<int, std::size_t>> got;
          for (int i = 0; i < 3 && got.size() < 2; ++i)
            if (auto s = quantum(node.children[static_cast<std::size_t>(i)])) got.emplace_back(i, *s);
          if (got.size() < 2) return std::nullopt;
          return qts23_decode_sites(reg, got[0].second, got[0].first, got[1].second, got[1].first);
        }
        return chain(node, 0);
      }
      case NodeKind::Encrypt: {
        const auto key = classical(node.children[1]);
        if (node.children[0].kind == NodeKind::Homogenize) {
          if (!key) return std::nullopt;
          return unwind_into(node.children[0], static_cast<std::size_t>(from_key_digits(*key)));
        }
        auto s = quantum(node.children[0]);
        if (!s || !key) return std::nullopt;
        weyl_decrypt_site(reg, *s, static_cast<int>((*key)[0]), static_cast<int>((*key)[1]));
        return s;
      }
      default: return std::nullopt;
    }
  }

  std::optional<std::vector<std::int64_t>> classical(const PlanNode& node) {
    switch (node.kind) {
      case NodeKind::Player:
        if (!(t_ >> node.player & 1u)) return std::nullopt;
        return d_.dealt.at(&node).values;
      case NodeKind::Dealer: return d_.dealt.at(&node).values;
      case NodeKind::Classical: {
        std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> got;
        for (std::size_t i = 0; i < node.children.size(); ++i)
          if (auto v = classical(node.children[i])) got.emplace_back(static_cast<std::int64_t>(i) + 1, *v);
        if (static_cast<int>(got.size()) < node.k) return std::nullopt;
        std::vector<std::int64_t> out;
        for (std::size_t j = 0; j < got.front().second.size(); ++j) {
          std::vector<Share> sh;
          for (const auto& [x, v] : got) sh.push_back({x, v[j]});
          out.push_back(shamir_reconstruct(sh, node.k));
        }
        return out;
      }
      default: return std::nullopt;
    }
  }

 private:
  const Dealer& d_;
  PlayerSet t_;
  double theta_;

  std::optional<std::size_t> chain(const PlanNode& node, std::size_t from) {
    if (from + 1 == node.children.size()) return quantum(node.children[from]);
    auto a = quantum(node.children[from]);
    auto b = chain(node, from + 1);
    if (!a || !b) return std::nullopt;
    return qts23_decode_sites(reg, *a, 0, *b, 1);
  }

  std::optional<std::size_t> unwind_into(const PlanNode& node, std::size_t key_index) {
    const auto& dd = d_.dealt.at(&node);
    for (const auto& c : node.children)
      if (!(t_ >> c.player & 1u)) return std::nullopt;
    // players hand in their qubits in slot order; the key says which logical role each has
    std::vector<std::size_t> slots;
    for (const auto& ps : dd.player_sites) slots.insert(slots.end(), ps.begin(), ps.end());
    const auto order = ordering_from_index(key_index, slots.size());
    std::vector<std::size_t> logical(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) logical[order[i]] = slots[i];
    for (std::size_t j = logical.size(); j-- > 1;) apply_inplace(reg, gates::PartialSwap(logical[0], logical[j], -theta_));
    return logical[0];
  }
};

inline std::vector<std::pair<int, int>> draw_keys(int count, bool homog, int total_qubits, int dim, Rng& rng) {
  std::vector<std::pair<int, int>> k;
  for (int i = 0; i < count; ++i) {
    if (homog) {
      std::size_t f = 1;
      for (int j = 2; j <= total_qubits; ++j) f *= static_cast<std::size_t>(j);
      k.emplace_back(static_cast<int>(rng.below(f)), 0);
    } else {
      k.emplace_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(dim))), static_cast<int>(rng.below(static_cast<std::uint64_t>(dim))));
    }
  }
  return k;
}

inline int homogenized_qubits(const PlanNode& node) {
  if (node.kind == NodeKind::Homogenize) {
    int t = 0;
    for (const auto& c : node.children) t += c.qubits;
    return t;
  }
  for (const auto& c : node.children)
    if (int t = homogenized_qubits(c)) return t;
  return 0;
}

/// Which encryption keys (tree order) the coalition can rebuild.
inline void known_keys(const PlanNode& node, PlayerSet t, std::vector<bool>& out) {
  if (node.kind == NodeKind::Encrypt) out.push_back(recovers(node.children[1], t));
  for (const auto& c : node.children) known_keys(c, t, out);
}

}  // namespace detail

/// Runs the plan end to end. Authorized minimal sets must recover every probe
/// secret exactly; for each maximal unauthorized set the quantum view,
/// averaged over the keys it cannot rebuild, must not depend on the secret.
/// Homogenization plans are checked for reconstruction only (the dilution is
/// approximate), with the unauthorized deviation reported.
inline SimulationReport simulate(const SchemePlan& plan, Rng& rng, double theta = kDefaultTheta) {
  if (!detail::quantum_simulable(plan.root)) throw NotSimulable("plan contains a quantum node without a simulated construction");
  const bool homog = detail::has_homogenize(plan.root);
  const int dim = homog ? 2 : 3;
  const int n = plan.access.n();
  const int enc = detail::count_encrypt(plan.root);
  const int total_q = detail::homogenized_qubits(plan.root);
  SimulationReport rep;
  rep.secret_dim = dim;
  const auto secrets = probe_secrets(dim);
  auto authorized = [&](PlayerSet s) { return recovers(plan.root, s); };

  for (PlayerSet t = 0; t < (PlayerSet{1} << n); ++t) {
    const bool auth = authorized(t);
    bool minimal = auth, maximal = !auth;
    for (int p = 0; p < n; ++p) {
      const PlayerSet bit = PlayerSet{1} << p;
      if (auth && (t & bit) && authorized(t & ~bit)) minimal = false;
      if (!auth && !(t & bit) && !authorized(t | bit)) maximal = false;
    }
    if (minimal) {
      ++rep.authorized_checked;
      for (const auto& s : secrets) {
        detail::Dealer d(dim, theta, rng);
        d.keys = detail::draw_keys(enc, homog, total_q, dim, rng);
        d.deal(plan.root, s);
        detail::Reconstructor r(d, t, theta);
        auto site = r.quantum(plan.root);
        if (!site) {
          rep.failures.push_back("authorized coalition " + plan.access.name_of(t) + " failed to reconstruct");
          break;
        }
        const double f = subset_fidelity(r.reg, {*site}, s);
        rep.min_fidelity = std::min(rep.min_fidelity, f);
        if (f < 1 - 1e-9) rep.failures.push_back("coalition " + plan.access.name_of(t) + " reconstructed with fidelity " + std::to_string(f));
      }
    }
    if (maximal) {
      ++rep.unauthorized_checked;
      std::vector<bool> known;
      detail::known_keys(plan.root, t, known);
      // enumerate all key assignments; group by the known part
      std::vector<int> radix;
      for (int i = 0; i < enc; ++i) radix.push_back(homog ? 0 : dim * dim);
      if (homog) {
        std::size_t f = 1;
        for (int j = 2; j <= total_q; ++j) f *= static_cast<std::size_t>(j);
        for (auto& r : radix) r = static_cast<int>(f);
      }
      std::size_t combos = 1;
      for (int r : radix) combos *= static_cast<std::size_t>(r);
      if (combos > 4096) throw NotSimulable("too many key assignments to average");
      std::map<std::vector<int>, std::vector<Matrix>> views;  // known-key part -> per-secret view
      std::map<std::vector<int>, int> group_size;
      for (std::size_t c = 0; c < combos; ++c) {
        std::vector<int> idx(static_cast<std::size_t>(enc));
        auto rem = c;
        for (int i = 0; i < enc; ++i) {
          idx[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(radix[static_cast<std::size_t>(i)]));
          rem /= static_cast<std::size_t>(radix[static_cast<std::size_t>(i)]);
        }
        std::vector<int> known_part;
        std::vector<std::pair<int, int>> keys;
        for (int i = 0; i < enc; ++i) {
          const int v = idx[static_cast<std::size_t>(i)];
          keys.push_back(homog ? std::pair{v, 0} : std::pair{v / dim, v % dim});
          known_part.push_back(known[static_cast<std::size_t>(i)] ? v : -1);
        }
        ++group_size[known_part];
        auto& slot = views[known_part];
        for (std::size_t si = 0; si < secrets.size(); ++si) {
          detail::Dealer d(dim, theta, rng);
          d.keys = keys;
          d.deal(plan.root, secrets[si]);
          std::vector<std::size_t> held;
          for (std::size_t s = 0; s < d.owner.size(); ++s)
            if (d.owner[s] == -1 || (d.owner[s] >= 0 && (t >> d.owner[s] & 1u))) held.push_back(s);
          Matrix rho = held.empty() ? Matrix::Ones(1, 1) : reduced_density(d.reg, held);
          if (slot.size() <= si) slot.push_back(rho);
          else slot[si] += rho;
        }
      }
      double dev = 0;
      for (const auto& [k, per] : views)
        for (std::size_t si = 1; si < per.size(); ++si) dev = std::max(dev, (per[si] - per[0]).cwiseAbs().maxCoeff() / group_size[k]);
      rep.max_view_deviation = std::max(rep.max_view_deviation, dev);
      if (!homog && dev > 1e-10)
        rep.failures.push_back("unauthorized coalition " + plan.access.name_of(t) + " view depends on the secret");
    }
  }
  return rep;
}

}  // namespace entnet::qss
