#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "entnet/protocols.hpp"

using namespace entnet;

namespace {

// Qubit register from signed basis terms, e.g. {{+1, "000"}, {-1, "111"}}, normalized.
Register ket(const std::vector<std::pair<double, std::string>>& terms) {
  const std::size_t n = terms.front().second.size();
  Vector amps = Vector::Zero(Eigen::Index{1} << n);
  for (const auto& [c, bits] : terms) amps[static_cast<Eigen::Index>(std::stoul(bits, nullptr, 2))] += c;
  amps /= amps.norm();
  return Register(std::vector<int>(n, 2), amps);
}

bool exactly_equal(const Register& a, const Register& b) {
  return a.dims() == b.dims() && (a.amps() - b.amps()).norm() <= 1e-10;
}

// Reference table, site orders: phi1-3 (a1 b a3 a2 c), phi4 (a1 b a3 c a2), phi5-7 (a1 b c a3 a2).
std::vector<Register> golden(int m2, int m1) {
  std::vector<Register> g;
  g.push_back(ket({{1, "00000"}, {1, "00011"}, {1, "11100"}, {1, "11111"}}));
  g.push_back(ket({{1, "00000"}, {1, "00011"}, {1, "11110"}, {1, "11101"}}));
  if (m2 == 0) {
    g.push_back(ket({{1, "00000"}, {1, "11101"}}));
    g.push_back(ket({{1, "00000"}, {1, "00100"}, {1, "11010"}, {-1, "11110"}}));
    if (m1 == 0) {
      for (int i = 0; i < 3; ++i) g.push_back(ket({{1, "00000"}, {1, "11100"}}));
    } else {
      g.push_back(ket({{1, "00010"}, {-1, "11110"}}));
      g.push_back(ket({{1, "00010"}, {-1, "11110"}}));
      g.push_back(ket({{1, "00010"}, {1, "11110"}}));
    }
  } else {
    g.push_back(ket({{1, "00011"}, {1, "11110"}}));
    g.push_back(ket({{1, "00011"}, {1, "00111"}, {1, "11001"}, {-1, "11101"}}));
    if (m1 == 0) {
      g.push_back(ket({{1, "00101"}, {1, "11001"}}));
      g.push_back(ket({{1, "11101"}, {1, "00001"}}));
      g.push_back(ket({{1, "11101"}, {1, "00001"}}));
    } else {
      g.push_back(ket({{1, "00111"}, {-1, "11011"}}));
      g.push_back(ket({{1, "11111"}, {-1, "00011"}}));
      g.push_back(ket({{-1, "11111"}, {-1, "00011"}}));
    }
  }
  return g;
}

void expect_cat(const ProtocolReport& rep, std::size_t n) {
  ASSERT_EQ(rep.final.sites.size(), n);
  EXPECT_GE(fidelity(rep.final.reg, cat_state(n)), 1 - 1e-9);
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(rep.final.sites[i].owner, static_cast<AgentId>(i));
  EXPECT_EQ(rep.cbits_used, rep.final.transcript.cbits());
  EXPECT_TRUE(locc_discipline_holds(rep.final));
}

}  // namespace

TEST(protocols, make_epr) {
  NetworkState ns;
  auto [a, b] = make_epr(ns, 0, 1);
  EXPECT_TRUE(equal_up_to_global_phase(ns.reg, cat_state(2)));
  EXPECT_EQ(ns.owner(a), 0);
  EXPECT_EQ(ns.owner(b), 1);
  make_epr(ns, 0, 2);
  EXPECT_TRUE(equal_up_to_global_phase(ns.reg, tensor(cat_state(2), cat_state(2))));
}

TEST(protocols, teleport_plus_state_all_branches) {
  for (int m1 = 0; m1 < 2; ++m1)
    for (int m2 = 0; m2 < 2; ++m2) {
      NetworkState ns;
      auto src = ns.add_site(0);
      local_h(ns, 0, src);
      auto [es, er] = make_epr(ns, 0, 1);
      Rng rng(1);
      rng.force_outcomes({m1, m2});
      auto out = teleport(ns, src, es, er, rng);
      ASSERT_EQ(ns.sites.size(), 1u);
      EXPECT_EQ(ns.owner(out), 1);
      EXPECT_GE(fidelity(ns.reg, apply(basis_state({2}, {0}), gates::H(0))), 1 - 1e-10);
      EXPECT_EQ(ns.transcript.cbits(), 2);
      ASSERT_EQ(ns.transcript.messages.size(), 1u);
      EXPECT_EQ(ns.transcript.messages[0].receiver, std::optional<AgentId>(1));
    }
}

TEST(protocols, teleport_swaps_entanglement) {
  NetworkState ns;
  Rng rng(3);
  auto [x, y] = make_epr(ns, 0, 1);
  auto [ys, z] = make_epr(ns, 1, 2);
  auto out = teleport(ns, y, ys, z, rng);
  EXPECT_TRUE(is_bell_pair(ns, x, out));
  EXPECT_EQ(ns.owner(out), 2);
}

TEST(protocols, teleport_rejects_bad_channel) {
  NetworkState ns;
  Rng rng(3);
  auto src = ns.add_site(0);
  auto es = ns.add_site(0);
  auto er = ns.add_site(1);
  EXPECT_THROW(teleport(ns, src, es, er, rng), InvalidChannel);
  auto [a, b] = make_epr(ns, 1, 2);
  EXPECT_THROW(teleport(ns, src, a, b, rng), LoccViolation);
}

TEST(protocols, local_ops_enforce_ownership) {
  NetworkState ns;
  auto [a, b] = make_epr(ns, 0, 1);
  EXPECT_THROW(local_x(ns, 0, b), LoccViolation);
  EXPECT_THROW(local_cnot(ns, 0, a, b), LoccViolation);
}

TEST(protocols, protocol_one_golden_table) {
  for (int m2 = 0; m2 < 2; ++m2)
    for (int m1 = 0; m1 < 2; ++m1) {
      Rng rng(0);
      rng.force_outcomes({m2, m1});
      auto rep = protocol_one_ghz(protocol_one_setup(), rng);
      auto expect = golden(m2, m1);
      ASSERT_EQ(rep.intermediate_states.size(), 7u);
      for (int i = 0; i < 7; ++i)
        EXPECT_TRUE(exactly_equal(rep.intermediate_states[static_cast<std::size_t>(i)].state,
                                  expect[static_cast<std::size_t>(i)]))
            << "phi" << i + 1 << " M2=" << m2 << " M1=" << m1;
      EXPECT_EQ(rep.intermediate_states[0].sites, (std::vector<std::string>{"a1", "b", "a3", "a2", "c"}));
      EXPECT_EQ(rep.intermediate_states[6].sites, (std::vector<std::string>{"a1", "b", "c", "a3", "a2"}));
      EXPECT_EQ(rep.cbits_used, 2);
      EXPECT_TRUE(equal_up_to_global_phase(rep.final.reg, cat_state(3)));
      EXPECT_EQ(rep.outcomes, (std::vector<int>{m2, m1}));
      EXPECT_TRUE(locc_discipline_holds(rep.final));
    }
}

TEST(protocols, protocol_one_rejects_wrong_configuration) {
  Rng rng(0);
  NetworkState ns;
  make_epr(ns, 0, 1);
  EXPECT_THROW(protocol_one_ghz(ns, rng), InvalidInput);
  NetworkState chain;
  make_epr(chain, 0, 1);
  make_epr(chain, 1, 2);
  EXPECT_THROW(protocol_one_ghz(chain, rng), InvalidInput);
}

TEST(protocols, entangle_and_disentangle) {
  NetworkState ns;
  auto ids = make_cat(ns, {0, 1, 2});
  auto extra = entangle_new_qubit(ns, ids[2]);
  EXPECT_TRUE(is_cat(ns, {ids[0], ids[1], ids[2], extra}));
  disentangle_qubit(ns, extra);
  EXPECT_TRUE(equal_up_to_global_phase(ns.reg, cat_state(3)));

  NetworkState pair;
  auto [a, b] = make_epr(pair, 0, 1);
  auto e = entangle_new_qubit(pair, b);
  EXPECT_TRUE(is_cat(pair, {a, b, e}));

  NetworkState bad;
  auto [p, q] = make_epr(bad, 0, 1);
  auto r = bad.add_site(1);
  local_h(bad, 1, r);
  EXPECT_THROW(disentangle_qubit(bad, r), InvalidInput);
}

TEST(protocols, zeilinger_merge_both_branches) {
  for (int m = 0; m < 2; ++m) {
    NetworkState ns;
    auto [a, b] = make_epr(ns, 0, 1);
    auto [c, d] = make_epr(ns, 1, 2);
    Rng rng(0);
    rng.force_outcomes({m});
    zeilinger_merge(ns, {a, b}, {c, d}, b, c, rng);
    EXPECT_TRUE(is_cat(ns, {a, b, d}));
    EXPECT_EQ(ns.transcript.cbits(), 1);
  }
  NetworkState ns;
  auto g = make_cat(ns, {0, 1, 2});
  auto [x, y] = make_epr(ns, 2, 3);
  Rng rng(4);
  zeilinger_merge(ns, g, {x, y}, g[2], x, rng);
  EXPECT_TRUE(is_cat(ns, {g[0], g[1], g[2], y}));
  EXPECT_THROW(zeilinger_merge(ns, {g[0], g[1]}, {g[1], y}, g[1], g[1], rng), InvalidInput);
}

TEST(protocols, ghz_to_epr_and_singlet_conversion) {
  for (int m = 0; m < 2; ++m) {
    NetworkState ns;
    auto g = make_cat(ns, {0, 1, 2});
    Rng rng(0);
    rng.force_outcomes({m});
    ghz_to_epr(ns, g[0], g[1], g[2], rng);
    EXPECT_TRUE(is_bell_pair(ns, g[0], g[1]));
  }
  NetworkState ns;
  auto [a, b] = make_singlet(ns, 0, 1);
  convert_singlet_to_triplet(ns, b);
  EXPECT_TRUE(is_bell_pair(ns, a, b));
}

TEST(protocols, protocol_two_examples) {
  Rng rng(5);
  auto p3 = protocol_two_ncat(path_graph(3), rng);
  expect_cat(p3, 3);
  EXPECT_EQ(p3.cbits_used, 4);
  auto s5 = protocol_two_ncat(star_graph(5), rng);
  expect_cat(s5, 5);
  EXPECT_EQ(s5.cbits_used, 10);
  auto two = protocol_two_ncat(path_graph(2), rng);
  expect_cat(two, 2);
  EXPECT_EQ(two.cbits_used, 0);
  EXPECT_THROW(protocol_two_ncat(EprGraph(3, {{0, 1}}), rng), InvalidInput);
}

TEST(protocols, protocol_two_every_tree_up_to_five) {
  for (int n = 3; n <= 5; ++n)
    for (const auto& t : enumerate_spanning_trees(complete_graph(n)))
      for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        Rng rng(seed);
        auto rep = protocol_two_ncat(t, rng);
        expect_cat(rep, static_cast<std::size_t>(n));
        const int k = static_cast<int>(t.leaves().size());
        EXPECT_EQ(rep.cbits_used, 2 * n + k - 4);
        EXPECT_LE(rep.cbits_used, 3 * n - 5);
      }
}

TEST(protocols, protocol_two_all_measurement_branches) {
  // n = 5 path: 3 teleports, 6 measurements, 64 branches
  for (int mask = 0; mask < 64; ++mask) {
    Rng rng(0);
    std::vector<int> f;
    for (int b = 0; b < 6; ++b) f.push_back((mask >> b) & 1);
    rng.force_outcomes(f);
    auto rep = protocol_two_ncat(path_graph(5), rng);
    expect_cat(rep, 5);
    EXPECT_FALSE(rng.has_forced());
  }
}

TEST(protocols, protocol_three_examples) {
  Rng rng(8);
  auto a = protocol_three_hypergraph(EntangledHypergraph(5, {{0, 1, 2}, {2, 3, 4}}), rng);
  expect_cat(a, 5);
  auto b = protocol_three_hypergraph(EntangledHypergraph(4, {{0, 1, 2}, {1, 2, 3}}), rng);
  expect_cat(b, 4);
  auto chain = protocol_three_hypergraph(EntangledHypergraph(4, {{0, 1}, {1, 2}, {2, 3}}), rng);
  auto two = protocol_two_ncat(path_graph(4), rng);
  EXPECT_TRUE(equal_up_to_global_phase(chain.final.reg, two.final.reg, 1e-9));
  EXPECT_THROW(protocol_three_hypergraph(EntangledHypergraph(6, {{0, 1, 2}, {3, 4, 5}}), rng), NoProtocol);
  // redundant hyperedge already covered by F is left unused and traced out
  auto red = protocol_three_hypergraph(EntangledHypergraph(4, {{0, 1, 2, 3}, {0, 1}}), rng);
  expect_cat(red, 4);
}

TEST(protocols, connectivity_iff_on_random_instances) {
  std::mt19937_64 gen(99);
  Rng rng(99);
  int connected = 0, disconnected = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(gen() % 4);
    std::vector<Edge> e;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (gen() % 100 < 35) e.emplace_back(a, b);
    EprGraph g(n, e);
    if (is_connected(g)) {
      ++connected;
      expect_cat(prepare_cat_on_epr_graph(g, rng), static_cast<std::size_t>(n));
    } else {
      ++disconnected;
      EXPECT_THROW(prepare_cat_on_epr_graph(g, rng), NoProtocol);
    }
    std::vector<Hyperedge> hs;
    const int m = 1 + static_cast<int>(gen() % 3);
    for (int i = 0; i < m; ++i) {
      std::vector<int> v(static_cast<std::size_t>(n));
      std::iota(v.begin(), v.end(), 0);
      std::shuffle(v.begin(), v.end(), gen);
      v.resize(2 + gen() % static_cast<std::uint64_t>(n - 1));
      hs.push_back(v);
    }
    EntangledHypergraph h(n, hs, true);
    if (hypergraph_is_connected(h))
      expect_cat(protocol_three_hypergraph(h, rng), static_cast<std::size_t>(n));
    else
      EXPECT_THROW(protocol_three_hypergraph(h, rng), NoProtocol);
  }
  EXPECT_GT(connected, 20);
  EXPECT_GT(disconnected, 20);
}
