#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cliquepool {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Counters reported by build_graph for input it had to clean up.
struct BuildStats {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_merged = 0;
};

/// Immutable undirected simple graph in compressed sparse row form.
///
/// Every neighbor list is strictly increasing, the adjacency is symmetric and
/// there are no self-loops. Instances are only produced through the checked
/// factories below, so every Graph value satisfies these invariants and can be
/// shared freely between threads.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds from per-node neighbor lists. Lists are sorted and symmetrized;
  /// self-loops and duplicates are dropped and counted in `stats`.
  static Graph from_adjacency(const std::vector<std::vector<NodeId>>& adjacency,
                              BuildStats* stats = nullptr);

  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const noexcept {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }
  bool has_edge(NodeId u, NodeId v) const noexcept;

  /// Undirected edges as (u < v) pairs in lexicographic order.
  std::vector<Edge> edges() const;
  std::vector<std::size_t> degrees() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_graph(std::span<const Edge>, std::size_t, BuildStats*);

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Symmetrized, deduplicated graph on `node_count` nodes. Self-loop pairs are
/// dropped and tallied in `stats`. Throws GraphError naming the first edge with
/// an index >= node_count.
Graph build_graph(std::span<const Edge> edges, std::size_t node_count,
                  BuildStats* stats = nullptr);

inline Graph build_graph(std::initializer_list<Edge> edges, std::size_t node_count,
                         BuildStats* stats = nullptr) {
  return build_graph(std::span<const Edge>(edges.begin(), edges.size()), node_count, stats);
}

/// Component id per node, 0-based and contiguous. Components are numbered in
/// order of their lowest-index node.
struct ComponentLabels {
  std::vector<std::uint32_t> label;
  std::size_t count = 0;
};

ComponentLabels connected_components(const Graph& g);

inline constexpr std::uint32_t kUnreachable = UINT32_MAX;

/// Hop distance from `source` to every node; kUnreachable where no path exists.
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

/// Dense N x N hop-distance table, row-major. BFS from every node, in parallel.
std::vector<std::uint32_t> all_pairs_distances(const Graph& g);

/// Sum of shortest-path lengths over unordered node pairs. Throws
/// PreconditionError if `g` has more than one component.
std::uint64_t pairwise_distance_sum(const Graph& g);

/// Relabels node i as perm[i]. Throws GraphError unless perm is a bijection
/// on [0, node_count).
Graph permute(const Graph& g, std::span<const NodeId> perm);

std::vector<NodeId> inverse_permutation(std::span<const NodeId> perm);

/// Subgraph induced by `nodes` (sorted ascending); node nodes[i] becomes i.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

}  // namespace cliquepool
