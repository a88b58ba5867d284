#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cliquepool/coarsen.hpp"
#include "cliquepool/graph.hpp"
#include "cliquepool/matrix.hpp"

namespace cliquepool {

struct LevelStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t cliques = 0;
  std::size_t max_clique_size = 0;
  double mean_clique_size = 0.0;
  std::size_t multi_assigned = 0;

  friend bool operator==(const LevelStats&, const LevelStats&) = default;
};

/// Result of a single pooling step on one graph.
struct PoolStep {
  CliqueSet cliques;
  Assignment assignment;
  Graph coarsened;
  std::optional<FeatureMatrix> features;
};

/// maximal_cliques -> assign_pools -> coarsen_graph (-> pool_features).
PoolStep pool_once(const Graph& g, const FeatureMatrix* x = nullptr,
                   Readout readout = Readout::kMean);

struct Level {
  Graph graph;
  LevelStats stats;
  /// Pools of this level's nodes; empty on the last level.
  std::optional<Assignment> assignment;
  std::optional<FeatureMatrix> features;

  friend bool operator==(const Level&, const Level&) = default;
};

/// Graphs from the input (level 0) down to one node per component.
struct Hierarchy {
  std::vector<Level> levels;
  Readout readout = Readout::kMean;

  std::size_t depth() const noexcept { return levels.size(); }
  const Graph& input() const noexcept { return levels.front().graph; }
  std::vector<std::size_t> node_counts() const;

  friend bool operator==(const Hierarchy&, const Hierarchy&) = default;
};

struct HierarchyOptions {
  Readout readout = Readout::kMean;
  /// Pooling steps allowed before DivergenceError. Defaults to the input's
  /// total pairwise distance sum plus one, which bounds the step count when
  /// that sum strictly decreases.
  std::optional<std::size_t> max_levels;
};

/// Pools repeatedly until every component is a single node. Throws
/// DivergenceError when the budget runs out or a step leaves a non-trivial
/// graph unchanged.
Hierarchy build_hierarchy(const Graph& g, const FeatureMatrix* x = nullptr,
                          const HierarchyOptions& options = {});

/// image[level][u]: ascending nodes of `level` that original node u maps into.
using ImageSets = std::vector<std::vector<std::vector<NodeId>>>;
ImageSets image_sets(const Hierarchy& h);

/// Per level, the sum over original node pairs {u, v} of the largest
/// level-graph distance between any node in u's image and any node in v's
/// image. Throws PreconditionError for a disconnected input.
std::vector<std::uint64_t> distance_sum_trace(const Hierarchy& h);

struct DagNode {
  std::uint32_t level = 0;
  NodeId node = 0;
  friend bool operator==(const DagNode&, const DagNode&) = default;
  friend auto operator<=>(const DagNode&, const DagNode&) = default;
};

/// Membership edges from every level-k node to its level-(k+1) pools.
/// Nodes are listed level by level, which is a topological order.
struct DependencyDag {
  std::vector<DagNode> nodes;
  std::vector<std::pair<DagNode, DagNode>> edges;

  std::size_t out_degree(DagNode n) const;
  friend bool operator==(const DependencyDag&, const DependencyDag&) = default;
};

DependencyDag dependency_dag(const Hierarchy& h);

std::vector<LevelStats> level_stats(const Hierarchy& h);

}  // namespace cliquepool
