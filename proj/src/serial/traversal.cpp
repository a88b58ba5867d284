#include <deque>

#include "cliquepool/error.hpp"
#include "cliquepool/serial.hpp"

namespace cliquepool::serial {

std::vector<std::uint32_t> all_pairs_distances(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> dist(n * n, kUnreachable);
  std::deque<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    std::uint32_t* row = dist.data() + static_cast<std::size_t>(s) * n;
    row[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (NodeId v : g.neighbors(u)) {
        if (row[v] == kUnreachable) {
          row[v] = row[u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

std::uint64_t pairwise_distance_sum(const Graph& g) {
  const std::size_t n = g.node_count();
  const auto dist = serial::all_pairs_distances(g);
  std::uint64_t total = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (dist[u * n + v] == kUnreachable) {
        throw PreconditionError("pairwise distance sum requires a connected graph");
      }
      total += dist[u * n + v];
    }
  }
  return total;
}

}  // namespace cliquepool::serial
