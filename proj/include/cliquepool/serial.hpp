#pragma once

// Single-threaded reference versions of the OpenMP kernels. They share no
// code with the parallel paths beyond the data types and are kept for tests
// and benchmarks.

#include <cstdint>
#include <vector>

#include "cliquepool/cliques.hpp"
#include "cliquepool/coarsen.hpp"
#include "cliquepool/graph.hpp"
#include "cliquepool/matrix.hpp"

namespace cliquepool::serial {

std::vector<std::uint32_t> all_pairs_distances(const Graph& g);
std::uint64_t pairwise_distance_sum(const Graph& g);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_tn(const Matrix& a, const Matrix& b);
Matrix matmul_nt(const Matrix& a, const Matrix& b);

/// Classic Tomita-pivot Bron-Kerbosch over the whole vertex set.
CliqueSet maximal_cliques(const Graph& g);

/// Checks every pair of pools directly against the adjacency rule.
Graph coarsen_graph(const Graph& g, const Assignment& a);
FeatureMatrix pool_features(const FeatureMatrix& x, const Assignment& a, Readout readout);

}  // namespace cliquepool::serial
