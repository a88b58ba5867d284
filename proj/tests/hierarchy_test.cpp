#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "cliquepool/error.hpp"
#include "cliquepool/generators.hpp"
#include "cliquepool/grid.hpp"
#include "cliquepool/hierarchy.hpp"
#include "test_util.hpp"

namespace cliquepool {
namespace {

TEST(BuildHierarchy, NodeCounts) {
  EXPECT_EQ(build_hierarchy(gen::complete(3)).node_counts(), (std::vector<std::size_t>{3, 1}));
  EXPECT_EQ(build_hierarchy(gen::cycle(4)).node_counts(), (std::vector<std::size_t>{4, 4, 1}));
  EXPECT_EQ(build_hierarchy(grid::make_chain(32)).node_counts(),
            (std::vector<std::size_t>{32, 31, 29, 25, 17, 1}));
}

TEST(BuildHierarchy, SingleNodeAndEmpty) {
  EXPECT_EQ(build_hierarchy(gen::empty(1)).depth(), 1u);
  EXPECT_EQ(build_hierarchy(Graph{}).depth(), 1u);
}

TEST(BuildHierarchy, FourCycleLevelOneIsK4) {
  const Hierarchy h = build_hierarchy(gen::cycle(4));
  EXPECT_EQ(h.levels[1].stats.nodes, 4u);
  EXPECT_EQ(h.levels[1].stats.edges, 6u);
  EXPECT_EQ(h.levels[0].stats.multi_assigned, 4u);
  EXPECT_FALSE(h.levels.back().assignment.has_value());
}

TEST(BuildHierarchy, BudgetExhausted) {
  HierarchyOptions opt;
  opt.max_levels = 2;
  try {
    build_hierarchy(grid::make_chain(32), nullptr, opt);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.node_counts(), (std::vector<std::size_t>{32, 31, 29}));
  }
}

TEST(BuildHierarchy, EveryComponentCollapses) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = gen::erdos_renyi(30, 0.06, rng);
    const Hierarchy h = build_hierarchy(g);
    EXPECT_EQ(h.levels.back().graph.node_count(), connected_components(g).count);
    EXPECT_EQ(h.levels.back().graph.edge_count(), 0u);
  }
}

TEST(BuildHierarchy, Deterministic) {
  std::mt19937_64 rng(22);
  const Graph g = gen::random_connected(30, 0.15, rng);
  const Matrix x = gen::random_matrix(30, 2, rng);
  EXPECT_EQ(build_hierarchy(g, &x), build_hierarchy(g, &x));
}

TEST(BuildHierarchy, FeaturesFollowLevels) {
  std::mt19937_64 rng(23);
  const Graph g = gen::random_connected(15, 0.2, rng);
  const Matrix x = gen::random_matrix(15, 3, rng);
  const Hierarchy h = build_hierarchy(g, &x, {Readout::kMax, std::nullopt});
  for (const Level& lv : h.levels) {
    ASSERT_TRUE(lv.features.has_value());
    EXPECT_EQ(lv.features->rows(), lv.graph.node_count());
  }
  // Max pooling all the way down ends at the column maxima.
  const Matrix& top = *h.levels.back().features;
  for (std::size_t c = 0; c < 3; ++c) {
    double m = x(0, c);
    for (std::size_t r = 1; r < 15; ++r) m = std::max(m, x(r, c));
    EXPECT_EQ(top(0, c), m);
  }
}

// Each component of a disjoint union pools exactly as it would alone.
TEST(BuildHierarchy, ComponentsIndependent) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph a = gen::random_connected(8 + gen::below(rng, 8), 0.3, rng);
    const Graph b = gen::random_connected(8 + gen::below(rng, 8), 0.3, rng);
    const Hierarchy ha = build_hierarchy(a);
    const Hierarchy hb = build_hierarchy(b);
    const Hierarchy hu = build_hierarchy(gen::disjoint_union(a, b));
    const ImageSets img = image_sets(hu);
    for (std::size_t k = 0; k < hu.depth(); ++k) {
      const Graph& lg = hu.levels[k].graph;
      std::vector<NodeId> from_a;
      std::vector<NodeId> from_b;
      for (NodeId u = 0; u < a.node_count(); ++u) from_a.insert(from_a.end(), img[k][u].begin(), img[k][u].end());
      for (NodeId u = 0; u < b.node_count(); ++u)
        from_b.insert(from_b.end(), img[k][a.node_count() + u].begin(), img[k][a.node_count() + u].end());
      std::sort(from_a.begin(), from_a.end());
      from_a.erase(std::unique(from_a.begin(), from_a.end()), from_a.end());
      std::sort(from_b.begin(), from_b.end());
      from_b.erase(std::unique(from_b.begin(), from_b.end()), from_b.end());
      const Graph& ga = ha.levels[std::min(k, ha.depth() - 1)].graph;
      const Graph& gb = hb.levels[std::min(k, hb.depth() - 1)].graph;
      EXPECT_EQ(from_a.size() + from_b.size(), lg.node_count());
      EXPECT_EQ(induced_subgraph(lg, from_a).node_count(), ga.node_count());
      EXPECT_EQ(induced_subgraph(lg, from_a).edge_count(), ga.edge_count());
      EXPECT_EQ(induced_subgraph(lg, from_b).node_count(), gb.node_count());
      EXPECT_EQ(induced_subgraph(lg, from_b).edge_count(), gb.edge_count());
    }
    EXPECT_EQ(hu.depth(), std::max(ha.depth(), hb.depth()));
  }
}

TEST(BuildHierarchy, PermutationCovariantCounts) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = gen::random_connected(20, 0.2, rng);
    const auto p = gen::random_permutation(20, rng);
    EXPECT_EQ(build_hierarchy(permute(g, p)).node_counts(), build_hierarchy(g).node_counts());
  }
}

TEST(ImageSets, FourCycle) {
  const Hierarchy h = build_hierarchy(gen::cycle(4));
  const ImageSets img = image_sets(h);
  ASSERT_EQ(img.size(), 3u);
  for (NodeId u = 0; u < 4; ++u) {
    EXPECT_EQ(img[0][u], (std::vector<NodeId>{u}));
    EXPECT_EQ(img[1][u].size(), 2u);
    EXPECT_EQ(img[2][u], (std::vector<NodeId>{0}));
  }
}

std::uint64_t trace_oracle(const Hierarchy& h, std::size_t k, const ImageSets& img) {
  const auto d = testing::floyd_warshall(h.levels[k].graph);
  const std::size_t m = h.levels[k].graph.node_count();
  const std::size_t n = h.input().node_count();
  std::uint64_t total = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      std::uint64_t far = 0;
      for (NodeId a : img[k][u])
        for (NodeId b : img[k][v]) far = std::max(far, d[a * m + b]);
      total += far;
    }
  return total;
}

TEST(DistanceSumTrace, Examples) {
  EXPECT_EQ(distance_sum_trace(build_hierarchy(gen::complete(3))), (std::vector<std::uint64_t>{3, 0}));
  EXPECT_EQ(distance_sum_trace(build_hierarchy(gen::path(3))), (std::vector<std::uint64_t>{4, 3, 0}));
  EXPECT_EQ(distance_sum_trace(build_hierarchy(gen::cycle(4))), (std::vector<std::uint64_t>{8, 6, 0}));
}

TEST(DistanceSumTrace, MatchesOracle) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 15; ++trial) {
    const Hierarchy h = build_hierarchy(gen::random_connected(14, 0.2, rng));
    const ImageSets img = image_sets(h);
    const auto trace = distance_sum_trace(h);
    for (std::size_t k = 0; k < h.depth(); ++k) EXPECT_EQ(trace[k], trace_oracle(h, k, img));
    EXPECT_EQ(trace.front(), pairwise_distance_sum(h.input()));
    EXPECT_EQ(trace.back(), 0u);
  }
}

// Multi-assignment can widen image sets, and the trace then rises.
TEST(DistanceSumTrace, KnownIncrease) {
  const Graph g = build_graph({{0, 2}, {0, 4}, {0, 5}, {0, 7}, {1, 2}, {1, 3}, {1, 4}, {1, 5},
                               {1, 7}, {2, 10}, {4, 8}, {4, 10}, {5, 6}, {6, 8}, {9, 10}},
                              11);
  const Hierarchy h = build_hierarchy(g);
  EXPECT_EQ(h.node_counts(), (std::vector<std::size_t>{11, 15, 3, 2, 1}));
  EXPECT_EQ(distance_sum_trace(h), (std::vector<std::uint64_t>{117, 82, 46, 55, 0}));
}

TEST(DistanceSumTrace, DisconnectedIsAnError) {
  EXPECT_THROW(distance_sum_trace(build_hierarchy(gen::empty(2))), PreconditionError);
}

TEST(DependencyDag, FourCycle) {
  const DependencyDag dag = dependency_dag(build_hierarchy(gen::cycle(4)));
  EXPECT_EQ(dag.nodes.size(), 9u);
  EXPECT_EQ(dag.edges.size(), 12u);
  for (NodeId u = 0; u < 4; ++u) {
    EXPECT_EQ(dag.out_degree({0, u}), 2u);
    EXPECT_EQ(dag.out_degree({1, u}), 1u);
  }
  EXPECT_EQ(dag.out_degree({2, 0}), 0u);
}

TEST(DependencyDag, EdgesGoDownOneLevel) {
  std::mt19937_64 rng(27);
  const DependencyDag dag = dependency_dag(build_hierarchy(gen::random_connected(25, 0.2, rng)));
  EXPECT_TRUE(std::is_sorted(dag.nodes.begin(), dag.nodes.end()));
  for (const auto& [from, to] : dag.edges) EXPECT_EQ(to.level, from.level + 1);
}

TEST(LevelStats, MatchesLevels) {
  const Hierarchy h = build_hierarchy(grid::make_grid({4, 4}));
  const auto stats = level_stats(h);
  ASSERT_EQ(stats.size(), 3u);
  EXPECT_EQ(stats[0].nodes, 16u);
  EXPECT_EQ(stats[0].cliques, 9u);
  EXPECT_EQ(stats[0].max_clique_size, 4u);
  EXPECT_DOUBLE_EQ(stats[0].mean_clique_size, 4.0);
  EXPECT_EQ(stats[1].nodes, 9u);
  EXPECT_EQ(stats[1].edges, 36u);
  EXPECT_EQ(stats[2].nodes, 1u);
}

}  // namespace
}  // namespace cliquepool
