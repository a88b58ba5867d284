#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cliquepool {

/// Invalid graph construction input (out-of-range index, bad permutation...).
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row/column counts that do not conform.
class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A clique set or assignment that does not belong to the graph it is used with.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation whose precondition on the input graph does not hold
/// (e.g. distances on a disconnected graph, oracle size guard).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pooling failed to reach one node per component within the level budget.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::vector<std::size_t> node_counts)
      : std::runtime_error(what), node_counts_(std::move(node_counts)) {}

  /// Node count of every level built before giving up.
  const std::vector<std::size_t>& node_counts() const noexcept { return node_counts_; }

 private:
  std::vector<std::size_t> node_counts_;
};

/// Malformed or missing input file. The message carries file and line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cliquepool
