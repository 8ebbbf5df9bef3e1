#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "entnet/error.hpp"
#include "entnet/netgraph.hpp"
#include "entnet/rng.hpp"
#include "entnet/statevec.hpp"

namespace entnet {

/// Stable handle for a site; survives discards that shift register indices.
struct SiteId {
  int value = -1;
  auto operator<=>(const SiteId&) const = default;
};

struct SiteInfo {
  SiteId id;
  AgentId owner = 0;
  std::string label;
};

struct Message {
  AgentId sender = 0;
  std::optional<AgentId> receiver;  // nullopt = broadcast
  std::vector<int> bits;
};

struct Transcript {
  std::vector<Message> messages;

  int cbits() const {
    int c = 0;
    for (const auto& m : messages) c += static_cast<int>(m.bits.size());
    return c;
  }
};

/// One local operation, kept so tests can audit that agents only ever touch
/// their own sites.
struct LocalOp {
  AgentId agent = 0;
  std::string name;
  std::vector<SiteId> sites;
};

class NetworkState {
 public:
  Register reg;
  std::vector<SiteInfo> sites;  // parallel to register sites
  Transcript transcript;
  std::vector<LocalOp> ops;
  std::map<int, AgentId> created_owner;  // every site ever created

  std::size_t index(SiteId id) const {
    for (std::size_t i = 0; i < sites.size(); ++i)
      if (sites[i].id == id) return i;
    throw InvalidInput("unknown site id " + std::to_string(id.value));
  }

  const SiteInfo& info(SiteId id) const { return sites[index(id)]; }
  AgentId owner(SiteId id) const { return info(id).owner; }

  std::vector<SiteId> sites_of(AgentId agent) const {
    std::vector<SiteId> out;
    for (const auto& s : sites)
      if (s.owner == agent) out.push_back(s.id);
    return out;
  }

  std::vector<AgentId> agents() const {
    std::set<AgentId> a;
    for (const auto& s : sites) a.insert(s.owner);
    return {a.begin(), a.end()};
  }

  /// Appends a fresh site in |0>.
  SiteId add_site(AgentId owner, int dim = 2, std::string label = {}) {
    SiteId id{next_id_++};
    reg = tensor(reg, basis_state({dim}, {0}));
    sites.push_back({id, owner, label.empty() ? "q" + std::to_string(id.value) : std::move(label)});
    created_owner[id.value] = owner;
    return id;
  }

  /// Appends a resource state whose sites are owned as given.
  std::vector<SiteId> add_resource(const Register& r, const std::vector<AgentId>& owners,
                                   const std::vector<std::string>& labels = {}) {
    if (owners.size() != r.num_sites()) throw InvalidInput("owner list does not match resource sites");
    reg = tensor(reg, r);
    std::vector<SiteId> ids;
    for (std::size_t i = 0; i < owners.size(); ++i) {
      SiteId id{next_id_++};
      std::string label = i < labels.size() ? labels[i] : "q" + std::to_string(id.value);
      sites.push_back({id, owners[i], std::move(label)});
      created_owner[id.value] = owners[i];
      ids.push_back(id);
    }
    return ids;
  }

  std::vector<std::size_t> indices(const std::vector<SiteId>& ids) const {
    std::vector<std::size_t> out;
    for (auto id : ids) out.push_back(index(id));
    return out;
  }

 private:
  int next_id_ = 0;
};

// ---------------------------------------------------------------------------
// Local primitives

inline void local_apply(NetworkState& ns, AgentId agent, const Matrix& m, const std::vector<SiteId>& targets,
                        const std::string& name) {
  for (auto t : targets)
    if (ns.owner(t) != agent)
      throw LoccViolation("agent " + std::to_string(agent) + " applied " + name + " to a site it does not own");
  apply_inplace(ns.reg, gates::Custom(m, ns.indices(targets), name));
  ns.ops.push_back({agent, name, targets});
}

inline void local_x(NetworkState& ns, AgentId a, SiteId s) { local_apply(ns, a, gates::pauli_x(), {s}, "X"); }
inline void local_z(NetworkState& ns, AgentId a, SiteId s) { local_apply(ns, a, gates::pauli_z(), {s}, "Z"); }
inline void local_h(NetworkState& ns, AgentId a, SiteId s) { local_apply(ns, a, gates::hadamard(), {s}, "H"); }
inline void local_cnot(NetworkState& ns, AgentId a, SiteId control, SiteId target) {
  local_apply(ns, a, gates::cnot(), {control, target}, "CNOT");
}

inline int local_measure(NetworkState& ns, AgentId agent, SiteId s, Basis basis, Rng& rng) {
  if (ns.owner(s) != agent) throw LoccViolation("agent measured a site it does not own");
  auto [out, reg] = measure(std::move(ns.reg), ns.index(s), basis, rng);
  ns.reg = std::move(reg);
  ns.ops.push_back({agent, basis == Basis::Diagonal ? "MeasureX" : "Measure", {s}});
  return out.value;
}

inline void send(NetworkState& ns, AgentId sender, std::optional<AgentId> receiver, std::vector<int> bits) {
  ns.transcript.messages.push_back({sender, receiver, std::move(bits)});
}

/// Traces out sites that are no longer entangled with the rest.
inline void discard(NetworkState& ns, const std::vector<SiteId>& ids) {
  if (ids.empty()) return;
  auto idx = ns.indices(ids);
  ns.reg = discard_sites(ns.reg, idx);
  std::vector<SiteInfo> kept;
  for (std::size_t i = 0; i < ns.sites.size(); ++i)
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) kept.push_back(ns.sites[i]);
  ns.sites = std::move(kept);
}

/// Reorders register sites; new position i holds `order[i]`.
inline void reorder(NetworkState& ns, const std::vector<SiteId>& order) {
  auto idx = ns.indices(order);
  ns.reg = permuted(ns.reg, idx);
  std::vector<SiteInfo> s;
  for (auto i : idx) s.push_back(ns.sites[i]);
  ns.sites = std::move(s);
}

inline void reorder_by_owner(NetworkState& ns) {
  std::vector<SiteInfo> s = ns.sites;
  std::stable_sort(s.begin(), s.end(), [](const SiteInfo& a, const SiteInfo& b) { return a.owner < b.owner; });
  std::vector<SiteId> order;
  for (const auto& x : s) order.push_back(x.id);
  reorder(ns, order);
}

inline Register bell_pair() { return cat_state(2); }

inline std::pair<SiteId, SiteId> make_epr(NetworkState& ns, AgentId a, AgentId b, const std::string& la = {},
                                          const std::string& lb = {}) {
  auto ids = ns.add_resource(bell_pair(), {a, b}, {la.empty() ? "" : la, lb.empty() ? "" : lb});
  if (la.empty()) ns.sites[ns.index(ids[0])].label = "e" + std::to_string(a) + "_" + std::to_string(b);
  if (lb.empty()) ns.sites[ns.index(ids[1])].label = "e" + std::to_string(b) + "_" + std::to_string(a);
  return {ids[0], ids[1]};
}

/// (|01> - |10>)/sqrt(2).
inline std::pair<SiteId, SiteId> make_singlet(NetworkState& ns, AgentId a, AgentId b) {
  Register r = from_amplitudes({2, 2}, {0, M_SQRT1_2, -M_SQRT1_2, 0});
  auto ids = ns.add_resource(r, {a, b});
  return {ids[0], ids[1]};
}

/// Applies XZ on the second half; turns a singlet into (|00>+|11>)/sqrt(2) up to phase.
inline void convert_singlet_to_triplet(NetworkState& ns, SiteId second) {
  const AgentId b = ns.owner(second);
  local_z(ns, b, second);
  local_x(ns, b, second);
}

/// Shares an m-CAT among distinct agents, one site each.
inline std::vector<SiteId> make_cat(NetworkState& ns, const std::vector<AgentId>& agents) {
  if (agents.size() < 2) throw InvalidInput("a CAT resource needs at least two agents");
  std::set<AgentId> u(agents.begin(), agents.end());
  if (u.size() != agents.size()) throw InvalidInput("CAT agents must be distinct");
  return ns.add_resource(cat_state(agents.size()), agents);
}

inline bool is_bell_pair(const NetworkState& ns, SiteId a, SiteId b, double tol = 1e-9) {
  return subset_fidelity(ns.reg, ns.indices({a, b}), bell_pair()) >= 1.0 - tol;
}

/// True if the given sites (in order) hold an m-CAT up to global phase.
inline bool is_cat(const NetworkState& ns, const std::vector<SiteId>& sites, double tol = 1e-9) {
  return subset_fidelity(ns.reg, ns.indices(sites), cat_state(sites.size())) >= 1.0 - tol;
}

// ---------------------------------------------------------------------------
// Protocol primitives

/// Standard teleportation of `source` over the pair (epr_sender, epr_receiver).
/// Returns the receiver site, which now carries the source state.
inline SiteId teleport(NetworkState& ns, SiteId source, SiteId epr_sender, SiteId epr_receiver, Rng& rng) {
  const AgentId sender = ns.owner(source);
  if (ns.owner(epr_sender) != sender) throw LoccViolation("sender must own both the source and its EPR half");
  if (source == epr_sender || source == epr_receiver || epr_sender == epr_receiver)
    throw InvalidInput("teleport sites must be distinct");
  const AgentId receiver = ns.owner(epr_receiver);
  if (!is_bell_pair(ns, epr_sender, epr_receiver)) throw InvalidChannel("EPR sites are not in a Bell state");

  local_cnot(ns, sender, source, epr_sender);
  local_h(ns, sender, source);
  const int m1 = local_measure(ns, sender, source, Basis::Computational, rng);
  const int m2 = local_measure(ns, sender, epr_sender, Basis::Computational, rng);
  send(ns, sender, receiver, {m1, m2});
  if (m2) local_x(ns, receiver, epr_receiver);
  if (m1) local_z(ns, receiver, epr_receiver);
  discard(ns, {source, epr_sender});
  return epr_receiver;
}

/// CNOT from an agent's CAT site onto a fresh |0> the same agent holds:
/// m-CAT -> (m+1)-CAT.
inline SiteId entangle_new_qubit(NetworkState& ns, SiteId site) {
  const AgentId a = ns.owner(site);
  SiteId fresh = ns.add_site(a, 2, ns.info(site).label + "'");
  local_cnot(ns, a, site, fresh);
  return fresh;
}

/// Reverse of entangle_new_qubit: CNOT from another site of the same agent
/// onto `site`, which must then be |0> and is discarded.
inline void disentangle_qubit(NetworkState& ns, SiteId site, std::optional<SiteId> control = std::nullopt) {
  const AgentId a = ns.owner(site);
  std::vector<SiteId> candidates;
  if (control) {
    if (ns.owner(*control) != a) throw LoccViolation("disentangling control must belong to the same agent");
    candidates.push_back(*control);
  } else {
    for (auto s : ns.sites_of(a))
      if (s != site) candidates.push_back(s);
  }
  for (auto c : candidates) {
    Register trial = apply(ns.reg, gates::CNOT(ns.index(c), ns.index(site)));
    if (outcome_probabilities(trial, ns.index(site))[1] < kTol) {
      local_cnot(ns, a, c, site);
      discard(ns, {site});
      return;
    }
  }
  throw InvalidInput("site cannot be removed by a local CNOT");
}

/// Fuses two disjoint CAT groups through sites x (group 1) and y (group 2)
/// held by the same agent. Costs one broadcast cbit; y is discarded.
inline void zeilinger_merge(NetworkState& ns, const std::vector<SiteId>& group1, const std::vector<SiteId>& group2,
                            SiteId x, SiteId y, Rng& rng) {
  for (auto s : group1)
    if (std::find(group2.begin(), group2.end(), s) != group2.end()) throw InvalidInput("merge groups overlap");
  if (std::find(group1.begin(), group1.end(), x) == group1.end() ||
      std::find(group2.begin(), group2.end(), y) == group2.end())
    throw InvalidInput("merge sites must come from their groups");
  const AgentId a = ns.owner(x);
  if (ns.owner(y) != a) throw LoccViolation("merge control and target must be held by one agent");
  local_cnot(ns, a, x, y);
  const int m = local_measure(ns, a, y, Basis::Computational, rng);
  send(ns, a, std::nullopt, {m});
  if (m)
    for (auto s : group2)
      if (s != y) local_x(ns, ns.owner(s), s);
  discard(ns, {y});
}

/// Removes sites from a CAT by diagonal measurement; each outcome is
/// broadcast and a 1 is fixed by Z at `partner`.
inline void reduce_cat(NetworkState& ns, const std::vector<SiteId>& removed, SiteId partner, Rng& rng) {
  for (auto s : removed) {
    const AgentId a = ns.owner(s);
    const int m = local_measure(ns, a, s, Basis::Diagonal, rng);
    send(ns, a, std::nullopt, {m});
    if (m) local_z(ns, ns.owner(partner), partner);
    local_h(ns, a, s);  // back to |0>/|1> so the discarded factor is canonical
    discard(ns, {s});
  }
}

/// GHZ over (a, b, c) -> EPR over (a, b): the third party measures in the
/// diagonal basis and b fixes the phase.
inline void ghz_to_epr(NetworkState& ns, SiteId keep_a, SiteId keep_b, SiteId third, Rng& rng) {
  (void)keep_a;
  reduce_cat(ns, {third}, keep_b, rng);
}

/// Chains teleports along a path of EPR pairs so the two ends share a pair.
/// pairs[i] = (site at path[i], site at path[i+1]). Returns the end sites.
inline std::pair<SiteId, SiteId> entanglement_swap_path(NetworkState& ns, const std::vector<std::pair<SiteId, SiteId>>& pairs,
                                                        Rng& rng) {
  if (pairs.empty()) throw InvalidInput("empty path");
  SiteId far = pairs[0].second;
  for (std::size_t i = 1; i < pairs.size(); ++i) far = teleport(ns, far, pairs[i].first, pairs[i].second, rng);
  return {pairs[0].first, far};
}

// ---------------------------------------------------------------------------
// Protocols

struct LabeledState {
  std::string label;
  std::vector<std::string> sites;
  Register state;
};

struct ProtocolReport {
  NetworkState final;
  int cbits_used = 0;
  std::vector<LabeledState> intermediate_states;
  std::vector<int> outcomes;
};

inline LabeledState snapshot(const NetworkState& ns, const std::string& label, const std::vector<SiteId>& order) {
  LabeledState out{label, {}, permuted(ns.reg, ns.indices(order))};
  for (auto id : order) out.sites.push_back(ns.info(id).label);
  return out;
}

/// A shares an EPR pair with each of B and C; sites ordered (a1, b, a2, c).
inline NetworkState protocol_one_setup(AgentId a = 0, AgentId b = 1, AgentId c = 2) {
  NetworkState ns;
  make_epr(ns, a, b, "a1", "b");
  make_epr(ns, a, c, "a2", "c");
  return ns;
}

inline ProtocolReport protocol_one_ghz(NetworkState ns, Rng& rng) {
  if (ns.sites.size() != 4) throw InvalidInput("expected exactly two EPR pairs");
  const SiteId a1 = ns.sites[0].id, b = ns.sites[1].id, a2 = ns.sites[2].id, c = ns.sites[3].id;
  const AgentId A = ns.owner(a1), B = ns.owner(b), C = ns.owner(c);
  if (ns.owner(a2) != A || A == B || A == C || B == C)
    throw InvalidInput("expected A sharing one EPR pair with B and one with C");
  if (!is_bell_pair(ns, a1, b) || !is_bell_pair(ns, a2, c)) throw InvalidInput("initial pairs are not Bell pairs");
  ns.transcript = {};
  ns.ops.clear();

  ProtocolReport rep;
  const SiteId a3 = ns.add_site(A, 2, "a3");
  local_cnot(ns, A, a1, a3);
  rep.intermediate_states.push_back(snapshot(ns, "phi1", {a1, b, a3, a2, c}));
  local_cnot(ns, A, a3, a2);
  rep.intermediate_states.push_back(snapshot(ns, "phi2", {a1, b, a3, a2, c}));
  const int m2 = local_measure(ns, A, a2, Basis::Computational, rng);
  rep.intermediate_states.push_back(snapshot(ns, "phi3", {a1, b, a3, a2, c}));
  local_h(ns, A, a3);
  rep.intermediate_states.push_back(snapshot(ns, "phi4", {a1, b, a3, c, a2}));
  const int m1 = local_measure(ns, A, a3, Basis::Computational, rng);
  rep.intermediate_states.push_back(snapshot(ns, "phi5", {a1, b, c, a3, a2}));
  if (m2) local_x(ns, A, a1);
  send(ns, A, B, {m2});
  send(ns, A, C, {m1});
  if (m2) local_x(ns, B, b);
  rep.intermediate_states.push_back(snapshot(ns, "phi6", {a1, b, c, a3, a2}));
  if (m1) local_z(ns, C, c);
  rep.intermediate_states.push_back(snapshot(ns, "phi7", {a1, b, c, a3, a2}));
  discard(ns, {a3, a2});
  reorder(ns, {a1, b, c});
  rep.outcomes = {m2, m1};
  rep.cbits_used = ns.transcript.cbits();
  rep.final = std::move(ns);
  return rep;
}

/// n-CAT over the agents of a spanning tree, one qubit per agent, ordered by
/// agent id. Leaf acknowledgements and the start signal are counted.
inline ProtocolReport protocol_two_ncat(const EprGraph& tree, Rng& rng) {
  require_spanning_tree(tree);
  const int n = tree.n();
  if (n < 2) throw InvalidInput("need at least two agents");
  NetworkState ns;
  std::map<Edge, std::pair<SiteId, SiteId>> epr;  // canonical edge -> (lower-id side, higher-id side)
  for (auto [a, b] : tree.edges()) epr[{a, b}] = make_epr(ns, a, b);
  auto half = [&](AgentId at, AgentId toward) {
    auto p = epr.at(canonical_edge(at, toward));
    return at < toward ? p.first : p.second;
  };

  ProtocolReport rep;
  if (n == 2) {
    rep.cbits_used = 0;
    rep.final = std::move(ns);
    return rep;
  }

  const auto leaves = tree.leaves();
  const AgentId T = leaves.front();
  const AgentId S = tree.neighbours(T).front();
  AgentId R = -1;
  for (AgentId v : tree.neighbours(S))
    if (v != T) {
      R = v;
      break;
    }

  std::map<AgentId, SiteId> cat;
  std::set<AgentId> entangled{S, T};
  cat[S] = half(S, T);
  cat[T] = half(T, S);

  send(ns, S, std::nullopt, {1});

  SiteId anc = entangle_new_qubit(ns, cat[S]);
  cat[R] = teleport(ns, anc, half(S, R), half(R, S), rng);
  entangled.insert(R);

  std::deque<AgentId> queue{S, R};
  while (!queue.empty()) {
    const AgentId i = queue.front();
    queue.pop_front();
    if (tree.degree(i) == 1) {
      if (i != T) send(ns, i, std::nullopt, {1});
      continue;
    }
    for (AgentId k : tree.neighbours(i)) {
      if (entangled.count(k)) continue;
      SiteId extra = entangle_new_qubit(ns, cat[i]);
      cat[k] = teleport(ns, extra, half(i, k), half(k, i), rng);
      entangled.insert(k);
      queue.push_back(k);
    }
  }
  if (static_cast<int>(entangled.size()) != n) throw InternalError("tree traversal missed agents");
  reorder_by_owner(ns);
  rep.cbits_used = ns.transcript.cbits();
  rep.final = std::move(ns);
  return rep;
}

/// Any connected EPR graph: pick a spanning tree, then run Protocol II.
inline ProtocolReport prepare_cat_on_epr_graph(const EprGraph& g, Rng& rng) {
  if (!is_connected(g)) throw NoProtocol("EPR graph is disconnected; no LOCC protocol yields an n-CAT");
  return protocol_two_ncat(any_spanning_tree(g), rng);
}

/// n-CAT from a connected entangled hypergraph by successive merges.
inline ProtocolReport protocol_three_hypergraph(const EntangledHypergraph& h, Rng& rng) {
  if (!hypergraph_is_connected(h)) throw NoProtocol("entangled hypergraph is disconnected");
  const int n = h.n();
  ProtocolReport rep;
  if (n == 1) return rep;

  std::vector<Hyperedge> edges = h.hyperedges();
  std::stable_sort(edges.begin(), edges.end(), [](const Hyperedge& a, const Hyperedge& b) { return a.size() > b.size(); });

  NetworkState ns;
  std::vector<std::map<AgentId, SiteId>> cats;
  for (const auto& e : edges) {
    auto ids = make_cat(ns, e);
    std::map<AgentId, SiteId> m;
    for (std::size_t i = 0; i < e.size(); ++i) m[e[i]] = ids[i];
    cats.push_back(std::move(m));
  }

  std::map<AgentId, SiteId> F = cats[0];
  std::vector<bool> used(edges.size(), false);
  used[0] = true;
  while (static_cast<int>(F.size()) < n) {
    std::size_t pick = edges.size();
    for (std::size_t i = 1; i < edges.size() && pick == edges.size(); ++i) {
      if (used[i]) continue;
      bool meets = false, new_agent = false;
      for (AgentId a : edges[i]) (F.count(a) ? meets : new_agent) = true;
      if (meets && new_agent) pick = i;
    }
    if (pick == edges.size()) throw InternalError("no mergeable hyperedge in a connected hypergraph");
    used[pick] = true;
    std::vector<AgentId> common;
    for (AgentId a : edges[pick])
      if (F.count(a)) common.push_back(a);
    const AgentId j = common.front();

    std::vector<SiteId> g1, g2;
    for (auto& [a, s] : F) g1.push_back(s);
    for (auto& [a, s] : cats[pick]) g2.push_back(s);
    zeilinger_merge(ns, g1, g2, F.at(j), cats[pick].at(j), rng);
    for (std::size_t c = 1; c < common.size(); ++c)
      disentangle_qubit(ns, cats[pick].at(common[c]), F.at(common[c]));
    for (auto& [a, s] : cats[pick])
      if (!F.count(a)) F[a] = s;
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (used[i]) continue;
    std::vector<SiteId> ids;
    for (auto& [a, s] : cats[i]) ids.push_back(s);
    discard(ns, ids);
  }
  reorder_by_owner(ns);
  rep.cbits_used = ns.transcript.cbits();
  rep.final = std::move(ns);
  return rep;
}

/// Every logged operation touched only sites its agent owned.
inline bool locc_discipline_holds(const NetworkState& ns) {
  for (const auto& op : ns.ops)
    for (auto s : op.sites) {
      auto it = ns.created_owner.find(s.value);
      if (it == ns.created_owner.end() || it->second != op.agent) return false;
    }
  for (const auto& s : ns.sites)
    if (ns.created_owner.at(s.id.value) != s.owner) return false;
  return true;
}

}  // namespace entnet
