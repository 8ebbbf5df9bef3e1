#include <gtest/gtest.h>

#include <cmath>

#include "entnet/keydist.hpp"

using namespace entnet;

namespace {

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// P(weight of m independent p-flips <= t)
double at_most(int m, int t, double p) {
  double s = 0;
  for (int r = 0; r <= t; ++r) s += binom(m, r) * std::pow(p, r) * std::pow(1 - p, m - r);
  return s;
}

}  // namespace

TEST(keydist, two_agents_share_the_edge_bit) {
  Rng rng(1);
  EprGraph g(2, {{0, 1}});
  for (int b = 0; b <= 1; ++b) {
    auto r = classical_nkd_round(g, rng, EdgeKeyTable{{{0, 1}, b}});
    EXPECT_TRUE(r.announcements.empty());
    EXPECT_EQ(r.shared_bit, b);
    EXPECT_EQ(r.reconstructions, (std::vector<int>{b, b}));
  }
  auto eve = eve_consistent_configs(classical_nkd_round(g, rng));
  EXPECT_EQ(eve.by_shared_bit.at(0), 1u);
  EXPECT_EQ(eve.by_shared_bit.at(1), 1u);
}

TEST(keydist, star_exhaustive_truth_table) {
  auto star = star_graph(4);
  Rng rng(0);
  for (int tm = 0; tm < 8; ++tm)
    for (int x = 0; x <= 1; ++x)
      for (AgentId term : star.leaves()) {
        EdgeKeyTable t;
        int i = 0;
        for (const auto& e : star.edges()) t[e] = (tm >> i++) & 1;
        auto r = classical_nkd_round(star, rng, t, std::vector<int>{x, 0, 0, 0}, term);
        ASSERT_EQ(r.announcements.size(), 1u);
        EXPECT_EQ(r.announcements[0].agent, 0);
        EXPECT_EQ(r.announcements[0].entries.size(), 3u);
        for (int v : r.reconstructions) EXPECT_EQ(v, r.shared_bit);
        auto eve = eve_consistent_configs(r);
        ASSERT_EQ(eve.tables.size(), 2u);
        for (const auto& e : star.edges()) EXPECT_NE(eve.tables[0].at(e), eve.tables[1].at(e));
        EXPECT_TRUE(eve.balanced());
      }
}

TEST(keydist, path_rounds_and_every_small_tree) {
  auto path = path_graph(5);
  Rng rng(64);
  for (int i = 0; i < 64; ++i) {
    auto r = classical_nkd_round(path, rng);
    for (int v : r.reconstructions) EXPECT_EQ(v, r.shared_bit);
  }
  for (int n = 2; n <= 6; ++n)
    for (const auto& t : enumerate_spanning_trees(complete_graph(n))) {
      for (AgentId term : t.leaves()) {
        auto r = classical_nkd_round(t, rng, std::nullopt, std::nullopt, term);
        auto eve = eve_consistent_configs(r);
        EXPECT_EQ(eve.tables.size(), 2u);
        EXPECT_TRUE(eve.balanced());
      }
    }
}

TEST(keydist, random_efficiency_values) {
  EXPECT_EQ(random_efficiency(2, 1, 1), (Rational{1, 1}));
  EXPECT_EQ(random_efficiency(5, 3, 3), (Rational{5, 8}));  // k = m: n / (2(n-1))
  EXPECT_EQ(random_efficiency(4, 7, 4), (Rational{8, 21}));
  EXPECT_NEAR(random_efficiency(100000, 7, 4).value(), 4.0 / 14.0, 1e-5);
  EXPECT_THROW(random_efficiency(1, 1, 1), InvalidInput);
}

TEST(keydist, hamming_code) {
  auto h = LinearCode::hamming74();
  EXPECT_EQ(h.m(), 7);
  EXPECT_EQ(h.k(), 4);
  EXPECT_EQ(h.d(), 3);
  EXPECT_EQ(h.t(), 1);
  for (std::uint32_t w = 0; w < 16; ++w) {
    const auto c = h.encode(w);
    EXPECT_EQ(h.decode_index(c), w);
    EXPECT_EQ(h.syndrome(c), (std::vector<int>{0, 0, 0}));
    for (int e = 0; e < 7; ++e) {
      auto r = c;
      r[static_cast<std::size_t>(e)] ^= 1;
      EXPECT_EQ(h.decode(r), c);
    }
  }
  EXPECT_EQ(LinearCode::repetition(5).d(), 5);
  EXPECT_EQ(LinearCode::repetition(5).t(), 2);
}

TEST(keydist, noiseless_pipeline_always_agrees) {
  auto code = LinearCode::hamming74();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    auto out = nqkd_pipeline(path_graph(4), code, 0.0, rng);
    ASSERT_FALSE(out.aborted);
    EXPECT_TRUE(out.agree);
    EXPECT_EQ(out.max_disagreements, 0);
    EXPECT_EQ(out.key.size(), 4u);
    EXPECT_EQ(out.check_positions.size(), 7u);
    EXPECT_EQ(out.agent_keys, std::vector<std::uint32_t>(4, out.key_index));
  }
}

TEST(keydist, low_noise_agreement_matches_binomial_oracle) {
  // n = 2: a slot's copies differ iff its pair was flipped. Check and key
  // blocks are independent, each clean (weight <= 1 of 7) with probability q.
  auto code = LinearCode::hamming74();
  const double p = 0.02;
  const double q = at_most(7, 1, p);  // ~0.99215
  Rng rng(2024);
  int decoded = 0, agree = 0;
  const int rounds = 1000;
  for (int i = 0; i < rounds; ++i) {
    auto out = nqkd_pipeline(EprGraph(2, {{0, 1}}), code, p, rng);
    if (out.aborted) continue;
    ++decoded;
    agree += out.agree;
  }
  const double kept = double(decoded) / rounds, rate = double(agree) / decoded;
  EXPECT_NEAR(kept, q, 4 * std::sqrt(q * (1 - q) / rounds));
  EXPECT_NEAR(rate, q, 4 * std::sqrt(q * (1 - q) / decoded));
  // the expected agreement clears 99%; one 1000-round sample has sd ~0.003
  EXPECT_GE(q, 0.99);
  RecordProperty("observed_agreement", std::to_string(rate));
}

TEST(keydist, high_noise_aborts) {
  auto code = LinearCode::hamming74();
  Rng rng(7);
  int aborted = 0;
  for (int i = 0; i < 1000; ++i) aborted += nqkd_pipeline(path_graph(5), code, 0.4, rng).aborted;
  EXPECT_GE(aborted, 990);
}

TEST(keydist, two_group_parity) {
  for (int n = 2; n <= 6; ++n)
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
      std::vector<AgentId> a;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1u) a.push_back(i);
      EXPECT_TRUE(two_group_parity_exact(n, a));
    }
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    auto g = two_group_round(4, {0, 1}, rng);
    ASSERT_EQ(g.effective_a, g.effective_b);
  }
  for (int i = 0; i < 200; ++i) {
    auto g = two_group_round(3, {0}, rng);
    ASSERT_EQ(g.effective_a, g.effective_b);
  }
  EXPECT_THROW(two_group_round(3, {0, 1, 2}, rng), InvalidInput);
  EXPECT_THROW(two_group_round(3, {}, rng), InvalidInput);

  auto out = two_group_pipeline(4, {0, 1}, LinearCode::hamming74(), 0.0, rng);
  EXPECT_FALSE(out.aborted);
  EXPECT_TRUE(out.agree);
}

TEST(keydist, group_error_and_capacity) {
  for (double p : {0.0, 0.1, 0.3}) EXPECT_NEAR(group_error_prob(1, p), p, 1e-15);
  EXPECT_NEAR(group_error_prob(2, 0.1), 0.18, 1e-15);
  for (int s = 1; s <= 8; ++s)
    for (double p : {0.05, 0.2, 0.45}) EXPECT_NEAR(group_error_prob(s, p), (1 - std::pow(1 - 2 * p, s)) / 2, 1e-12);
  EXPECT_NEAR(channel_capacity(0.5), 0.0, 1e-15);
  EXPECT_NEAR(channel_capacity(0.0), 1.0, 1e-15);
  double prev = 2;
  for (int i = 0; i <= 50; ++i) {
    const double c = channel_capacity(i / 100.0);
    EXPECT_LT(c, prev);
    prev = c;
  }
}

TEST(keydist, security_hypergraph_reduction) {
  // groups {1,2,3}, {3,4,6,7}, {4,5,7,8,9,10} relabelled from 0
  SecurityHypergraph h(10, {{0, 1, 2}, {2, 3, 5, 6}, {3, 4, 6, 7, 8, 9}});
  auto g = reduce_security_hypergraph(h);
  EXPECT_EQ(g.survivors, (std::vector<AgentId>{2, 3, 6}));
  EXPECT_EQ(g.edges, (std::vector<Edge>{{2, 3}, {2, 6}, {3, 6}}));

  auto single = reduce_security_hypergraph(SecurityHypergraph(3, {{0, 1, 2}}));
  EXPECT_TRUE(single.survivors.empty());
  auto two = reduce_security_hypergraph(SecurityHypergraph(5, {{0, 1, 2}, {2, 3, 4}}));
  EXPECT_EQ(two.survivors, (std::vector<AgentId>{2}));
  EXPECT_TRUE(two.edges.empty());
  EXPECT_THROW(reduce_security_hypergraph(SecurityHypergraph(4, {{0, 1}, {2, 3}})), NoScheme);
}
