#pragma once

// JSON readers/writers for the CLI and for saving results. Needs the
// single-header nlohmann json (vendor/json.hpp) on the include path.

#include <cctype>
#include <string>
#include <vector>

#include "json.hpp"

#include "entnet/keydist.hpp"
#include "entnet/locc.hpp"
#include "entnet/netgraph.hpp"
#include "entnet/protocols.hpp"
#include "entnet/qss.hpp"

namespace entnet::io {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Graphs: {"n": 4, "edges": [[0,1],...], "weights": [...]}
//         {"n": 5, "hyperedges": [[0,1,2],...], "multi": false}

inline Json to_json(const EprGraph& g) {
  Json edges = Json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  return {{"n", g.n()}, {"edges", edges}};
}

inline Json to_json(const WeightedEprGraph& g) {
  Json j = to_json(g.graph);
  j["weights"] = g.weights;
  return j;
}

inline Json to_json(const EntangledHypergraph& h) {
  return {{"n", h.n()}, {"hyperedges", h.canonical_edges()}, {"multi", h.multi()}};
}

inline int require_n(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) throw InvalidInput("expected an object with integer \"n\"");
  return j["n"].get<int>();
}

inline EprGraph graph_from_json(const Json& j) {
  const int n = require_n(j);
  std::vector<Edge> edges;
  for (const auto& e : j.value("edges", Json::array())) {
    if (!e.is_array() || e.size() != 2) throw InvalidInput("edges are [a, b] pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return EprGraph(n, edges);
}

inline WeightedEprGraph weighted_graph_from_json(const Json& j) {
  const auto g = graph_from_json(j);
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  return WeightedEprGraph(g.n(), edges, j.at("weights").get<std::vector<double>>());
}

/// Accepts the hypergraph format, or a plain graph (edges become 2-hyperedges).
inline EntangledHypergraph hypergraph_from_json(const Json& j) {
  const int n = require_n(j);
  if (!j.contains("hyperedges")) return EntangledHypergraph::from_graph(graph_from_json(j));
  std::vector<Hyperedge> hs;
  for (const auto& e : j["hyperedges"]) hs.push_back(e.get<Hyperedge>());
  return EntangledHypergraph(n, std::move(hs), j.value("multi", false));
}

// ---------------------------------------------------------------------------
// States and protocol reports

inline Json to_json(const Register& r) {
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < r.amps().size(); ++i) amps.push_back({r.amps()[i].real(), r.amps()[i].imag()});
  return {{"dims", r.dims()}, {"amplitudes", amps}};
}

inline Json to_json(const Transcript& t) {
  Json msgs = Json::array();
  for (const auto& m : t.messages) {
    Json j{{"from", m.sender}};
    j["to"] = m.receiver ? Json(*m.receiver) : Json("broadcast");
    j["bits"] = m.bits;
    msgs.push_back(j);
  }
  return msgs;
}

inline Json to_json(const NetworkState& ns) {
  Json sites = Json::array();
  for (const auto& s : ns.sites) sites.push_back({{"id", s.id.value}, {"owner", s.owner}, {"label", s.label}});
  return {{"sites", sites}, {"state", to_json(ns.reg)}};
}

inline Json to_json(const ProtocolReport& r) {
  Json states = Json::array();
  for (const auto& s : r.intermediate_states) states.push_back({{"label", s.label}, {"sites", s.sites}, {"state", to_json(s.state)}});
  return {{"cbits", r.cbits_used},
          {"outcomes", r.outcomes},
          {"final", to_json(r.final)},
          {"transcript", to_json(r.final.transcript)},
          {"intermediate_states", states}};
}

// ---------------------------------------------------------------------------
// LOCC witnesses: {"coloring": [...], "count_source": int, "count_target": int}

inline Json to_json(const Witness& w) {
  Json colors = Json::array();
  for (Color c : w.coloring.color) colors.push_back(c == Color::A ? "A" : "B");
  return {{"coloring", colors}, {"count_source", w.count_source}, {"count_target", w.count_target}};
}

inline Witness witness_from_json(const Json& j) {
  Witness w;
  for (const auto& c : j.at("coloring")) {
    const auto s = c.get<std::string>();
    if (s != "A" && s != "B") throw InvalidInput("colours are \"A\" or \"B\"");
    w.coloring.color.push_back(s == "A" ? Color::A : Color::B);
  }
  w.count_source = j.at("count_source").get<int>();
  w.count_target = j.at("count_target").get<int>();
  return w;
}

inline Json to_json(const Verdict& v) {
  Json j{{"impossible", v.impossible()}, {"colorings_examined", v.colorings_examined}};
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Key distribution transcripts

inline Json to_json(const KeyRound& r) {
  Json table = Json::array();
  for (const auto& [e, b] : r.table) table.push_back({{"edge", {e.first, e.second}}, {"bit", b}});
  Json ann = Json::array();
  for (const auto& rec : r.announcements) {
    Json entries = Json::array();
    for (const auto& [e, b] : rec.entries) entries.push_back({{"edge", {e.first, e.second}}, {"bit", b}});
    ann.push_back({{"agent", rec.agent}, {"entries", entries}});
  }
  return {{"tree", to_json(r.tree)},
          {"edge_bits", table},
          {"announcements", ann},
          {"terminal", r.chosen_terminal},
          {"shared_bit", r.shared_bit},
          {"reconstructions", r.reconstructions}};
}

inline Json to_json(const QkdOutcome& o) {
  return {{"aborted", o.aborted},
          {"error_rate", o.error_rate},
          {"max_disagreements", o.max_disagreements},
          {"check_positions", o.check_positions},
          {"terminals", o.terminals},
          {"broadcast", o.broadcast},
          {"key", o.key},
          {"agent_keys", o.agent_keys},
          {"agree", o.agree},
          {"cbits", o.cbits}};
}

inline Json to_json(const SecurityGraph& g) {
  Json edges = Json::array();
  for (auto [a, b] : g.edges) edges.push_back({a, b});
  return {{"survivors", g.survivors}, {"edges", edges}};
}

// ---------------------------------------------------------------------------
// Secret sharing: {"n": 5, "sets": ["ABC", "DE"]} or {"n": 5, "sets": [[0,1,2],[3,4]]}
//                 or {"threshold": [k, n]}; optional "names".

inline qss::AccessStructure access_from_json(const Json& j) {
  if (j.contains("threshold")) {
    const auto t = j["threshold"].get<std::vector<int>>();
    if (t.size() != 2) throw InvalidInput("threshold is [k, n]");
    return qss::AccessStructure::threshold(t[0], t[1]);
  }
  const int n = require_n(j);
  std::vector<qss::PlayerSet> sets;
  for (const auto& s : j.at("sets")) {
    if (s.is_string()) {
      qss::PlayerSet m = 0;
      for (char c : s.get<std::string>()) {
        const int p = std::toupper(static_cast<unsigned char>(c)) - 'A';
        if (p < 0 || p >= n) throw InvalidInput(std::string("unknown player '") + c + "'");
        m |= qss::PlayerSet{1} << p;
      }
      sets.push_back(m);
    } else {
      for (int p : s.get<std::vector<int>>())
        if (p < 0 || p >= n) throw InvalidInput("player index out of range");
      sets.push_back(qss::set_of(s.get<std::vector<int>>()));
    }
  }
  return qss::AccessStructure(n, sets, j.value("names", std::vector<std::string>{}));
}

inline Json to_json(const qss::AccessStructure& a) {
  Json sets = Json::array();
  for (auto s : a.sets()) sets.push_back(a.name_of(s));
  return {{"n", a.n()}, {"sets", sets}, {"names", a.names()}};
}

inline std::string node_kind_name(qss::NodeKind k) {
  switch (k) {
    case qss::NodeKind::Quantum: return "quantum";
    case qss::NodeKind::Classical: return "classical";
    case qss::NodeKind::Encrypt: return "encrypt";
    case qss::NodeKind::Player: return "player";
    case qss::NodeKind::Dealer: return "dealer";
    case qss::NodeKind::Homogenize: return "homogenize";
  }
  return "?";
}

inline Json to_json(const qss::PlanNode& node, const std::vector<std::string>& names) {
  Json j{{"kind", node_kind_name(node.kind)}};
  if (node.kind == qss::NodeKind::Player) {
    j["player"] = names.at(static_cast<std::size_t>(node.player));
    if (node.qubits != 1) j["qubits"] = node.qubits;
    return j;
  }
  if (node.kind == qss::NodeKind::Quantum || node.kind == qss::NodeKind::Classical) {
    j["k"] = node.k;
    j["n"] = node.n();
  }
  if (!node.children.empty()) {
    Json c = Json::array();
    for (const auto& ch : node.children) c.push_back(to_json(ch, names));
    j["children"] = c;
  }
  return j;
}

inline Json to_json(const qss::SchemePlan& p) {
  auto names_of = [&](qss::PlayerSet s) {
    std::vector<std::string> out;
    for (int m : qss::members(s)) out.push_back(p.access.names()[static_cast<std::size_t>(m)]);
    return out;
  };
  const auto v = qss::validate(p);
  return {{"kind", p.kind},
          {"access", to_json(p.access)},
          {"q_players", names_of(p.q_players)},
          {"c_players", names_of(p.c_players)},
          {"resident_shares", p.resident_shares},
          {"valid", v.ok},
          {"problems", v.problems},
          {"diagram", p.diagram},
          {"layers", to_json(p.root, p.access.names())}};
}

inline Json to_json(const qss::SimulationReport& r) {
  return {{"secret_dim", r.secret_dim},
          {"authorized_checked", r.authorized_checked},
          {"unauthorized_checked", r.unauthorized_checked},
          {"min_fidelity", r.min_fidelity},
          {"max_view_deviation", r.max_view_deviation},
          {"ok", r.ok()},
          {"failures", r.failures}};
}

inline qss::TwinThresholdSpec twin_from_json(const Json& j) {
  qss::TwinThresholdSpec s;
  s.k_c = j.at("k_c").get<int>();
  s.k_q = j.at("k_q").get<int>();
  s.n = j.at("n").get<int>();
  s.q = j.at("q").get<int>();
  for (int p : j.value("common", std::vector<int>{})) {
    if (p < 0 || p >= s.n) throw InvalidInput("common-set player out of range");
    s.common |= qss::PlayerSet{1} << p;
  }
  return s;
}

}  // namespace entnet::io
