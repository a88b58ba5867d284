#pragma once

#include <cstddef>
#include <vector>

#include "cliquepool/graph.hpp"

namespace cliquepool {

using Clique = std::vector<NodeId>;

/// Maximal cliques of a graph in canonical order: members ascending within
/// each clique, cliques by size descending then lexicographically.
class CliqueSet {
 public:
  CliqueSet() = default;
  /// Sorts members and cliques into canonical order; duplicates are removed.
  explicit CliqueSet(std::vector<Clique> cliques);

  std::size_t size() const noexcept { return cliques_.size(); }
  bool empty() const noexcept { return cliques_.empty(); }
  const Clique& operator[](std::size_t i) const noexcept { return cliques_[i]; }
  auto begin() const noexcept { return cliques_.begin(); }
  auto end() const noexcept { return cliques_.end(); }
  const std::vector<Clique>& cliques() const noexcept { return cliques_; }

  std::size_t max_size() const noexcept { return cliques_.empty() ? 0 : cliques_.front().size(); }
  double mean_size() const noexcept;

  /// Image under the relabeling node i -> perm[i], re-canonicalized.
  CliqueSet relabeled(std::span<const NodeId> perm) const;

  friend bool operator==(const CliqueSet&, const CliqueSet&) = default;

 private:
  std::vector<Clique> cliques_;
};

struct DegeneracyOrder {
  std::vector<NodeId> order;
  std::size_t degeneracy = 0;
};

/// Repeatedly removes a minimum-degree node (lowest index on ties).
DegeneracyOrder degeneracy_ordering(const Graph& g);

/// All maximal cliques: Bron-Kerbosch with Tomita pivoting under a degeneracy
/// ordered outer loop. The outer loop runs in parallel; the result does not
/// depend on the thread count. Isolated nodes are reported as 1-cliques.
CliqueSet maximal_cliques(const Graph& g);

inline constexpr std::size_t kBruteForceNodeLimit = 20;

/// Test oracle: checks every vertex subset. Throws PreconditionError for
/// graphs larger than kBruteForceNodeLimit.
CliqueSet maximal_cliques_bruteforce(const Graph& g);

bool is_clique(const Graph& g, const Clique& c);
/// True if no node outside `c` is adjacent to every member.
bool is_maximal_clique(const Graph& g, const Clique& c);

}  // namespace cliquepool
