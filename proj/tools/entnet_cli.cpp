// entnet: command-line front end. Every command writes one JSON (or text)
// report; identical arguments and seed give identical bytes.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "entnet/json_io.hpp"

using namespace entnet;
using io::Json;

namespace {

struct Options {
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string input, output, format = "json";
  int jobs = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  if (path.empty()) throw UsageError("this command needs --input");
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::uint64_t effective_seed(const Options& o) {
  if (o.seed_given) return o.seed;
  if (const char* env = std::getenv("ENTNET_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("ENTNET_SEED must be an unsigned integer");
  }
  return o.seed;
}

std::string render_text(const Json& j) {
  std::ostringstream out;
  for (const auto& [k, v] : j.items()) {
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s.find('\n') != std::string::npos) out << k << ":\n" << s;
      else out << k << ": " << s << "\n";
    } else {
      out << k << ": " << v.dump() << "\n";
    }
  }
  return out.str();
}

void emit(const Options& o, const Json& report) {
  const std::string text = o.format == "text" ? render_text(report) : report.dump(2) + "\n";
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw UsageError("cannot write " + o.output);
  out << text;
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

LinearCode parse_code(const std::string& name) {
  if (name == "hamming") return LinearCode::hamming74();
  if (name.rfind("rep", 0) == 0) return LinearCode::repetition(std::stoi(name.substr(3)));
  throw UsageError("unknown code '" + name + "' (hamming or repN)");
}

// ---------------------------------------------------------------------------

Json cmd_protocol(const Options& o, const std::string& kind, Rng& rng) {
  ProtocolReport rep;
  if (kind == "one") {
    rep = protocol_one_ghz(protocol_one_setup(), rng);
  } else if (kind == "two") {
    const auto g = io::graph_from_json(read_json(o.input));
    rep = prepare_cat_on_epr_graph(g, rng);
  } else {
    rep = protocol_three_hypergraph(io::hypergraph_from_json(read_json(o.input)), rng);
  }
  Json j{{"command", "protocol"}, {"protocol", kind}};
  j.update(io::to_json(rep));
  return j;
}

Json cmd_locc(const Options& o, const std::string& source, const std::string& target) {
  EntangledHypergraph s, t;
  if (!source.empty() || !target.empty()) {
    if (source.empty() || target.empty()) throw UsageError("give both --source and --target");
    s = io::hypergraph_from_json(read_json(source));
    t = io::hypergraph_from_json(read_json(target));
  } else {
    const auto both = read_json(o.input);
    s = io::hypergraph_from_json(both.at("source"));
    t = io::hypergraph_from_json(both.at("target"));
  }
  const auto v = find_witness(s, t, o.jobs);
  Json j{{"command", "locc"}, {"source", io::to_json(s)}, {"target", io::to_json(t)}};
  j.update(io::to_json(v));
  j["verified"] = v.witness ? Json(witness_holds(s, t, *v.witness)) : Json(nullptr);
  j["verdict"] = v.impossible() ? "no LOCC protocol: witness found" : "no witness";
  return j;
}

struct QkdArgs {
  int n = 3, rounds = 1, leader = 0;
  double p = 0;
  std::string code = "hamming", group;
};

EprGraph qkd_tree(const Options& o, const QkdArgs& a) {
  return o.input.empty() ? path_graph(a.n) : io::graph_from_json(read_json(o.input));
}

Json cmd_qkd(const Options& o, const std::string& mode, const QkdArgs& a, Rng& rng) {
  if (a.rounds < 1 || a.rounds > 100000) throw UsageError("--rounds must be in 1..100000");
  Json j{{"command", "qkd"}, {"mode", mode}};
  if (mode == "classical") {
    const auto tree = qkd_tree(o, a);
    require_spanning_tree(tree);
    Json rounds = Json::array();
    bool unanimous = true;
    for (int r = 0; r < a.rounds; ++r) {
      const auto round = classical_nkd_round(tree, rng);
      for (int b : round.reconstructions) unanimous = unanimous && b == round.shared_bit;
      const auto eve = eve_consistent_configs(round);
      Json rj = io::to_json(round);
      rj["eve_configurations"] = eve.configurations;
      rj["eve_balanced"] = eve.balanced();
      rounds.push_back(rj);
    }
    j["unanimous"] = unanimous;
    j["rounds"] = rounds;
  } else if (mode == "pipeline") {
    const auto tree = qkd_tree(o, a);
    const auto code = parse_code(a.code);
    Json rounds = Json::array();
    int aborted = 0, agreed = 0;
    for (int r = 0; r < a.rounds; ++r) {
      const auto out = nqkd_pipeline(tree, code, a.p, rng, a.leader);
      aborted += out.aborted;
      agreed += !out.aborted && out.agree;
      rounds.push_back(io::to_json(out));
    }
    j["tree"] = io::to_json(tree);
    j["code"] = {{"m", code.m()}, {"k", code.k()}, {"d", code.d()}, {"t", code.t()}};
    j["noise"] = a.p;
    j["aborted"] = aborted;
    j["agreed"] = agreed;
    j["rounds"] = rounds;
  } else if (mode == "two-group") {
    const auto group = parse_list(a.group);
    Json rounds = Json::array();
    int equal = 0;
    for (int r = 0; r < a.rounds; ++r) {
      const auto g = two_group_round(a.n, group, rng, a.p);
      equal += g.effective_a == g.effective_b;
      rounds.push_back({{"effective_a", g.effective_a}, {"effective_b", g.effective_b}, {"outcomes", g.outcomes}});
    }
    j["n"] = a.n;
    j["group_a"] = group;
    j["noise"] = a.p;
    j["parity_equal"] = equal;
    if (a.n <= 12) j["exact_parity_check"] = two_group_parity_exact(a.n, group);
    j["group_error_prob"] = group_error_prob(static_cast<int>(group.size()), a.p);
    j["rounds"] = rounds;
  } else {
    const auto h = io::hypergraph_from_json(read_json(o.input));
    j["security_hypergraph"] = io::to_json(h);
    j["reduced"] = io::to_json(reduce_security_hypergraph(h));
  }
  return j;
}

struct QssArgs {
  int k = 0, n = 0, to_k = 0, to_n = 0, variant = 0;
  std::string scheme = "compressed";
  bool alt_split = false;
};

qss::SchemePlan qss_plan_from_input(const Json& in, const QssArgs& a, const std::string& scheme) {
  if (in.contains("k_c")) {
    const int variant = a.variant ? a.variant : in.value("variant", 1);
    std::vector<int> qubits = in.value("qubits", std::vector<int>{});
    const auto split = a.alt_split || in.value("alternative_split", false) ? qss::Scheme2Split::CommonClassicalOnly
                                                                          : qss::Scheme2Split::AllCommon;
    return qss::plan_twin_threshold(io::twin_from_json(in), variant, split, qubits);
  }
  if (in.contains("threshold") && scheme == "compressed") {
    const auto t = in["threshold"].get<std::vector<int>>();
    return qss::compress_threshold(t.at(0), t.at(1));
  }
  const auto access = io::access_from_json(in);
  if (scheme == "assisted") return qss::assisted_plan(access);
  if (scheme == "compressed") return qss::compress_plan(access);
  throw UsageError("unknown scheme '" + scheme + "' (assisted or compressed)");
}

Json cmd_qss(const Options& o, const std::string& action, const QssArgs& a, Rng& rng) {
  Json j{{"command", "qss"}, {"action", action}};
  if (action == "assist") {
    const auto p = qss::assisted_params(a.k, a.n);
    j["k"] = p.k;
    j["n"] = p.n;
    j["gamma"] = p.gamma;
    j["assisted"] = "((" + std::to_string(p.k_assisted) + "," + std::to_string(p.n_assisted) + "))";
    j["resident_shares"] = p.resident;
    return j;
  }
  if (action == "inflate") {
    const auto inf = qss::request_inflation(a.k, a.n, a.to_k, a.to_n);
    j["from"] = "((" + std::to_string(inf.k) + "," + std::to_string(inf.n) + "))";
    j["to"] = "((" + std::to_string(inf.k_new) + "," + std::to_string(inf.n_new) + "))";
    j["gamma"] = inf.gamma;
    j["added_c_players"] = inf.added_c_players;
    return j;
  }
  const auto in = read_json(o.input);
  if (action == "check") {
    const auto access = io::access_from_json(in);
    const auto hit = qss::min_q_players(access);
    j["access"] = io::to_json(access);
    j["violates_no_cloning"] = qss::violates_no_cloning(access);
    std::vector<std::string> names;
    for (int p : hit.players) names.push_back(access.names()[static_cast<std::size_t>(p)]);
    j["min_q_players"] = hit.size;
    j["hitting_set"] = names;
    return j;
  }
  const std::string scheme = action == "plan" ? (a.scheme == "compressed" ? "assisted" : a.scheme) : a.scheme;
  const auto plan = qss_plan_from_input(in, a, action == "compress" ? "compressed" : scheme);
  j["diagram"] = plan.diagram;
  j["plan"] = io::to_json(plan);
  if (action == "simulate") j["simulation"] = io::to_json(qss::simulate(plan, rng));
  return j;
}

std::string error_kind(const DomainRejection& e) {
  if (dynamic_cast<const NoProtocol*>(&e)) return "no-protocol";
  if (dynamic_cast<const NoScheme*>(&e)) return "no-scheme";
  if (dynamic_cast<const SchemeRejected*>(&e)) return "scheme-rejected";
  return "domain-rejection";
}

void report_error(const std::string& kind, const std::string& msg) {
  std::cerr << Json{{"error", kind}, {"message", msg}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entnet: entanglement networks, key distribution and quantum secret sharing"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "RNG seed (falls back to ENTNET_SEED, then 1)")->each([&](const std::string&) { o.seed_given = true; });
  app.add_option("--input", o.input, "input JSON file");
  app.add_option("--output", o.output, "write the report here instead of stdout");
  app.add_option("--jobs", o.jobs, "worker threads for witness search")->check(CLI::Range(1, 256));
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "text"}));

  std::string protocol_kind;
  auto* protocol = app.add_subcommand("protocol", "run Protocol I (GHZ), II (tree -> n-CAT) or III (hypergraph -> n-CAT)");
  protocol->add_option("kind", protocol_kind)->required()->check(CLI::IsMember({"one", "two", "three"}));

  std::string source, target;
  auto* locc = app.add_subcommand("locc", "search for a bicoloured-merging witness of LOCC impossibility");
  locc->add_option("--source", source, "source graph/hypergraph JSON");
  locc->add_option("--target", target, "target graph/hypergraph JSON");

  std::string qkd_mode;
  QkdArgs qa;
  auto* qkd = app.add_subcommand("qkd", "key distribution over EPR trees and security hypergraphs");
  qkd->add_option("mode", qkd_mode)->required()->check(CLI::IsMember({"classical", "pipeline", "two-group", "hypergraph"}));
  qkd->add_option("--n", qa.n, "agents (path tree when no --input)")->check(CLI::Range(2, 16));
  qkd->add_option("--rounds", qa.rounds, "rounds to run");
  qkd->add_option("--p", qa.p, "bit-flip noise probability")->check(CLI::Range(0.0, 1.0));
  qkd->add_option("--code", qa.code, "error-correcting code: hamming or repN");
  qkd->add_option("--leader", qa.leader, "agent broadcasting the reconciliation message");
  qkd->add_option("--group", qa.group, "comma-separated agents of group A (two-group mode)");

  std::string qss_action;
  QssArgs sa;
  auto* qss = app.add_subcommand("qss", "plan, compress, inflate and simulate quantum secret sharing schemes");
  qss->add_option("action", qss_action)
      ->required()
      ->check(CLI::IsMember({"check", "plan", "compress", "simulate", "assist", "inflate"}));
  qss->add_option("--k", sa.k, "threshold k");
  qss->add_option("--n", sa.n, "player count n");
  qss->add_option("--to-k", sa.to_k, "requested threshold after inflation");
  qss->add_option("--to-n", sa.to_n, "requested player count after inflation");
  qss->add_option("--scheme", sa.scheme, "assisted or compressed")->check(CLI::IsMember({"assisted", "compressed"}));
  qss->add_option("--variant", sa.variant, "twin-threshold scheme 1, 2 or 3")->check(CLI::Range(1, 3));
  qss->add_flag("--alternative-split", sa.alt_split, "Scheme 2: split the common key among common c-players only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Rng rng(effective_seed(o));
    Json report;
    if (*protocol) report = cmd_protocol(o, protocol_kind, rng);
    else if (*locc) report = cmd_locc(o, source, target);
    else if (*qkd) report = cmd_qkd(o, qkd_mode, qa, rng);
    else report = cmd_qss(o, qss_action, sa, rng);
    emit(o, report);
    return 0;
  } catch (const DomainRejection& e) {
    report_error(error_kind(e), e.what());
    return 2;
  } catch (const UsageError& e) {
    report_error("usage", e.what());
    return 1;
  } catch (const Error& e) {
    report_error("invalid-input", e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("error", e.what());
    return 1;
  }
}
