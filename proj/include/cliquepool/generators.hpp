#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "cliquepool/graph.hpp"
#include "cliquepool/matrix.hpp"

namespace cliquepool::gen {

/// Uniform double in [0, 1) from the top 53 bits of one draw, so sequences
/// are identical across standard library implementations.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}
/// Uniform integer in [0, n).
inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(n));
}

Graph complete(std::size_t n);
Graph cycle(std::size_t n);
Graph path(std::size_t n);
Graph star(std::size_t leaves);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph petersen();
Graph empty(std::size_t n);

Graph erdos_renyi(std::size_t n, double p, std::mt19937_64& rng);
/// Random spanning tree plus G(n, p) edges, so the result is connected.
Graph random_connected(std::size_t n, double p, std::mt19937_64& rng);
Graph disjoint_union(const Graph& a, const Graph& b);

std::vector<NodeId> random_permutation(std::size_t n, std::mt19937_64& rng);
Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                     double lo = -1.0, double hi = 1.0);

}  // namespace cliquepool::gen
