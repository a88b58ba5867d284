#include <bit>
#include <cstdint>
#include <string>

#include "cliquepool/cliques.hpp"
#include "cliquepool/error.hpp"

namespace cliquepool {

CliqueSet maximal_cliques_bruteforce(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n > kBruteForceNodeLimit) {
    throw PreconditionError("brute-force clique oracle refuses " + std::to_string(n) +
                            " nodes (limit " + std::to_string(kBruteForceNodeLimit) + ")");
  }
  std::vector<std::uint32_t> adj(n, 0);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : g.neighbors(u)) adj[u] |= std::uint32_t{1} << v;

  const std::uint32_t subsets = std::uint32_t{1} << n;
  // clique[m]: m minus its lowest node is a clique and lies inside that node's neighborhood.
  std::vector<bool> clique(subsets, false);
  if (subsets > 0) clique[0] = true;
  std::vector<Clique> out;
  for (std::uint32_t m = 1; m < subsets; ++m) {
    const int low = std::countr_zero(m);
    const std::uint32_t rest = m & (m - 1);
    clique[m] = clique[rest] && (rest & ~adj[low]) == 0;
    if (!clique[m]) continue;
    bool maximal = true;
    for (NodeId w = 0; w < n && maximal; ++w) {
      if (!(m >> w & 1U) && (m & ~adj[w]) == 0) maximal = false;
    }
    if (!maximal) continue;
    Clique c;
    for (NodeId w = 0; w < n; ++w)
      if (m >> w & 1U) c.push_back(w);
    out.push_back(std::move(c));
  }
  return CliqueSet(std::move(out));
}

}  // namespace cliquepool
