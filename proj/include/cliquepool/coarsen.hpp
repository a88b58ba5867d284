#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cliquepool/cliques.hpp"
#include "cliquepool/graph.hpp"
#include "cliquepool/matrix.hpp"

namespace cliquepool {

enum class Readout { kMean, kMax };

std::string_view to_string(Readout r);
/// Parses "mean" / "max"; throws std::invalid_argument otherwise.
Readout parse_readout(std::string_view s);

struct Pool {
  std::size_t source_clique = 0;  // index into the CliqueSet
  std::vector<NodeId> members;     // ascending, subset of the source clique

  friend bool operator==(const Pool&, const Pool&) = default;
};

/// One round of the greedy assignment: every clique whose count of still
/// unassigned nodes equals the round maximum receives all of its unassigned
/// nodes.
struct AssignmentStep {
  std::size_t effective_size = 0;
  std::vector<std::size_t> tied_cliques;
  std::vector<NodeId> assigned;

  friend bool operator==(const AssignmentStep&, const AssignmentStep&) = default;
};

/// Mapping between the nodes of a graph and the pools of its coarsened graph.
/// Pool i becomes node i of the coarsened graph.
struct Assignment {
  std::vector<Pool> pools;
  std::vector<std::vector<std::uint32_t>> node_to_pools;  // ascending pool ids
  std::vector<AssignmentStep> trace;                      // empty when loaded from disk

  std::size_t pool_count() const noexcept { return pools.size(); }
  std::size_t node_count() const noexcept { return node_to_pools.size(); }
  /// Nodes that landed in two or more pools.
  std::size_t multi_assigned_count() const noexcept;

  /// Compares pools and memberships; the trace is bookkeeping and ignored.
  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.pools == b.pools && a.node_to_pools == b.node_to_pools;
  }
};

/// Greedy size-ranked pool assignment. `cliques` must be the maximal cliques
/// of `g`; ValidationError is thrown for a clique that is not a maximal clique
/// of `g`, a repeated clique, or a node no clique covers.
Assignment assign_pools(const Graph& g, const CliqueSet& cliques);

/// One node per pool. Two pools are adjacent when they share a member or
/// when a member of one is adjacent in `g` to a member of the other.
Graph coarsen_graph(const Graph& g, const Assignment& a);

/// Row per pool: mean or element-wise max of the member rows. A node in
/// several pools contributes its full row to each.
FeatureMatrix pool_features(const FeatureMatrix& x, const Assignment& a, Readout readout);

/// Sparse pools x nodes matrix of mean-pooling weights (1/|members| at each
/// member column). apply(x) matches pool_features(x, a, kMean).
class PoolMatrix {
 public:
  PoolMatrix() = default;
  PoolMatrix(const Assignment& a, std::size_t node_count);
  /// n x n identity, used when a graph has already collapsed.
  static PoolMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return offsets_.size() - 1; }
  std::size_t cols() const noexcept { return cols_; }

  /// P * x
  Matrix apply(const Matrix& x) const;
  /// transpose(P) * dy
  Matrix apply_transpose(const Matrix& dy) const;
  Matrix to_dense() const;

 private:
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> columns_;
  std::vector<double> weights_;
};

PoolMatrix pool_matrix(const Assignment& a, std::size_t node_count);

}  // namespace cliquepool
