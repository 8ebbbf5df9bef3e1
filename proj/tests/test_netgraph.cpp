#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "entnet/netgraph.hpp"

using namespace entnet;

namespace {

// Berge: a connected hypergraph is a hypertree iff sum(|E|-1) = n-1.
bool berge_hypertree(const EntangledHypergraph& h, int r) {
  int s = 0;
  for (const auto& e : h.hyperedges()) {
    if (static_cast<int>(e.size()) != r) return false;
    s += static_cast<int>(e.size()) - 1;
  }
  return hypergraph_is_connected(h) && s == h.n() - 1;
}

double brute_min_weight(const WeightedEprGraph& g) {
  double best = 1e300;
  for (const auto& t : enumerate_spanning_trees(g.graph)) best = std::min(best, g.total(t));
  return best;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST(netgraph, connectivity_examples) {
  EXPECT_TRUE(is_connected(EprGraph(3, {{0, 1}, {0, 2}})));
  EXPECT_FALSE(is_connected(EprGraph(4, {{0, 1}, {2, 3}})));
  EXPECT_TRUE(is_connected(EprGraph(1, {})));
}

TEST(netgraph, canonical_storage_and_validation) {
  EprGraph g(3, {{2, 0}, {1, 0}});
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {0, 2}}));
  EXPECT_THROW(EprGraph(3, {{0, 0}}), InvalidInput);
  EXPECT_THROW(EprGraph(3, {{0, 1}, {1, 0}}), InvalidInput);
  EXPECT_THROW(EprGraph(3, {{0, 3}}), InvalidInput);
}

TEST(netgraph, minimum_spanning_tree_examples) {
  WeightedEprGraph tri(3, {{0, 1}, {0, 2}, {1, 2}}, {1, 2, 3});
  EXPECT_EQ(minimum_spanning_tree(tri).edges(), (std::vector<Edge>{{0, 1}, {0, 2}}));
  WeightedEprGraph eq(3, {{1, 2}, {0, 2}, {0, 1}}, {1, 1, 1});
  EXPECT_EQ(minimum_spanning_tree(eq).edges(), (std::vector<Edge>{{0, 1}, {0, 2}}));
  WeightedEprGraph tree(4, {{0, 1}, {1, 2}, {2, 3}}, {5, 1, 2});
  EXPECT_EQ(minimum_spanning_tree(tree), tree.graph);
  EXPECT_THROW(minimum_spanning_tree(WeightedEprGraph(4, {{0, 1}, {2, 3}}, {1, 1})), NoSpanningTree);
}

TEST(netgraph, mst_never_beaten_by_enumeration) {
  std::mt19937_64 gen(11);
  for (int n = 2; n <= 6; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Edge> e;
      std::vector<double> w;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (gen() % 3 != 0 || b == a + 1) {
            e.emplace_back(a, b);
            w.push_back(double(gen() % 5));
          }
      WeightedEprGraph g(n, e, w);
      auto t = minimum_spanning_tree(g);
      EXPECT_TRUE(is_spanning_tree(t));
      EXPECT_DOUBLE_EQ(g.total(t), brute_min_weight(g));
    }
}

TEST(netgraph, cayley_counts) {
  for (int n = 3; n <= 7; ++n) {
    auto trees = enumerate_spanning_trees(complete_graph(n));
    EXPECT_EQ(static_cast<long>(trees.size()), ipow(n, n - 2)) << "n=" << n;
    for (const auto& t : trees) EXPECT_TRUE(is_spanning_tree(t));
    EXPECT_TRUE(std::is_sorted(trees.begin(), trees.end()));
    EXPECT_EQ(std::adjacent_find(trees.begin(), trees.end()), trees.end());
  }
  EXPECT_EQ(enumerate_spanning_trees(path_graph(5)).size(), 1u);
  EXPECT_THROW(enumerate_spanning_trees(complete_graph(9)), LimitExceeded);
}

TEST(netgraph, quantum_distance_examples) {
  auto path = path_graph(4);
  auto star = star_graph(4);
  EXPECT_EQ(quantum_distance(path, path), 0);
  EXPECT_EQ(quantum_distance(path, star), 2);
  EXPECT_EQ(quantum_distance(EprGraph(3, {{0, 1}, {0, 2}}), EprGraph(3, {{0, 2}, {1, 2}})), 1);
  EXPECT_THROW(quantum_distance(path_graph(3), path_graph(4)), InvalidInput);
}

TEST(netgraph, quantum_distance_is_a_metric_on_k4) {
  auto trees = enumerate_spanning_trees(complete_graph(4));
  ASSERT_EQ(trees.size(), 16u);
  for (const auto& a : trees)
    for (const auto& b : trees) {
      const int d = quantum_distance(a, b);
      EXPECT_GE(d, 0);
      EXPECT_EQ(d == 0, a == b);
      EXPECT_EQ(d, quantum_distance(b, a));
      for (const auto& c : trees) EXPECT_LE(quantum_distance(a, c), d + quantum_distance(b, c));
    }
}

TEST(netgraph, hypergraph_connectivity_and_pendants) {
  EntangledHypergraph h(5, {{0, 1, 2}, {2, 3, 4}});
  EXPECT_TRUE(hypergraph_is_connected(h));
  EXPECT_FALSE(hypergraph_is_connected(EntangledHypergraph(6, {{0, 1, 2}, {3, 4, 5}})));
  EXPECT_TRUE(hypergraph_is_connected(EntangledHypergraph(4, {{0, 1, 2, 3}})));
  EXPECT_FALSE(hypergraph_is_connected(EntangledHypergraph(4, {{0, 1, 2}})));

  EXPECT_EQ(pendant_vertices(h), (std::vector<AgentId>{0, 1, 3, 4}));
  EXPECT_EQ(pendant_vertices(EntangledHypergraph(3, {{0, 1, 2}})), (std::vector<AgentId>{0, 1, 2}));
  EXPECT_TRUE(pendant_vertices(EntangledHypergraph(3, {{0, 1}, {1, 2}, {2, 0}})).empty());

  EXPECT_THROW(EntangledHypergraph(3, {{0, 1}, {1, 0}}), InvalidInput);
  EXPECT_NO_THROW(EntangledHypergraph(3, {{0, 1}, {1, 0}}, true));
  EXPECT_THROW(EntangledHypergraph(3, {{0}}), InvalidInput);
}

TEST(netgraph, r_uniform_hypertree_examples) {
  EXPECT_TRUE(is_r_uniform_hypertree(EntangledHypergraph(5, {{0, 1, 2}, {2, 3, 4}}), 3));
  EXPECT_FALSE(is_r_uniform_hypertree(EntangledHypergraph(5, {{0, 1, 2}, {2, 3, 4}, {0, 1, 3}}), 3));
  for (const auto& t : enumerate_spanning_trees(complete_graph(5)))
    EXPECT_TRUE(is_r_uniform_hypertree(EntangledHypergraph::from_graph(t), 2));
  EXPECT_FALSE(is_r_uniform_hypertree(EntangledHypergraph::from_graph(complete_graph(4)), 2));
}

TEST(netgraph, hypertree_enumeration_matches_berge_and_counts) {
  // labelled r-uniform hypertrees: (n-1)! n^{m-1} / (m! ((r-1)!)^m)
  struct Case {
    int n, r;
    std::size_t count;
  };
  for (auto c : {Case{3, 3, 1}, Case{5, 3, 15}, Case{7, 3, 735}, Case{7, 4, 70}}) {
    auto all = enumerate_r_uniform_hypertrees(c.n, c.r);
    EXPECT_EQ(all.size(), c.count) << c.n << "," << c.r;
    for (const auto& h : all) {
      EXPECT_TRUE(berge_hypertree(h, c.r));
      EXPECT_EQ(h.n(), static_cast<int>(h.hyperedges().size()) * (c.r - 1) + 1);
    }
  }
  // incidence-forest test agrees with Berge on random 3-edge multisets over 7 vertices
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Hyperedge> hs;
    for (int e = 0; e < 3; ++e) {
      std::vector<int> v{0, 1, 2, 3, 4, 5, 6};
      std::shuffle(v.begin(), v.end(), gen);
      hs.push_back({v[0], v[1], v[2]});
    }
    EntangledHypergraph h(7, hs, true);
    EXPECT_EQ(is_r_uniform_hypertree(h, 3), berge_hypertree(h, 3));
  }
}

TEST(netgraph, separating_pair) {
  EntangledHypergraph h1(5, {{0, 1, 2}, {2, 3, 4}});
  EntangledHypergraph h2(5, {{0, 1, 3}, {2, 3, 4}});
  // pairs co-hyperedged in h2 but not h1, in lexicographic order: (0,3), (1,3)
  EXPECT_EQ(find_separating_pair(h1, h2), (std::pair<AgentId, AgentId>{0, 3}));
  EXPECT_THROW(find_separating_pair(h1, h1), PreconditionViolation);

  auto all = enumerate_r_uniform_hypertrees(7, 3);
  for (const auto& a : all)
    for (const auto& b : all) {
      if (a == b) continue;
      auto [u, v] = find_separating_pair(a, b);
      EXPECT_LT(u, v);
      EXPECT_TRUE(co_hyperedged(b, u, v));
      EXPECT_FALSE(co_hyperedged(a, u, v));
    }
}
