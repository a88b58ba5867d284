#include <algorithm>
#include <cstdint>
#include <vector>

#include "cliquepool/error.hpp"
#include "cliquepool/graph.hpp"

namespace cliquepool {

namespace {

// BFS into a caller-owned buffer; `queue` is scratch of size >= node_count.
void bfs_into(const Graph& g, NodeId source, std::uint32_t* dist, std::vector<NodeId>& queue) {
  const std::size_t n = g.node_count();
  std::fill(dist, dist + n, kUnreachable);
  std::size_t head = 0;
  std::size_t tail = 0;
  dist[source] = 0;
  queue[tail++] = source;
  while (head < tail) {
    const NodeId u = queue[head++];
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue[tail++] = v;
      }
    }
  }
}

}  // namespace

ComponentLabels connected_components(const Graph& g) {
  ComponentLabels out;
  out.label.assign(g.node_count(), kUnreachable);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (out.label[s] != kUnreachable) continue;
    const auto id = static_cast<std::uint32_t>(out.count++);
    out.label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (out.label[v] == kUnreachable) {
          out.label[v] = id;
          stack.push_back(v);
        }
      }
    }
  }
  return out;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
  std::vector<std::uint32_t> dist(g.node_count());
  std::vector<NodeId> queue(g.node_count());
  bfs_into(g, source, dist.data(), queue);
  return dist;
}

std::vector<std::uint32_t> all_pairs_distances(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> dist(n * n);
#pragma omp parallel
  {
    std::vector<NodeId> queue(n);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
      bfs_into(g, static_cast<NodeId>(s), dist.data() + static_cast<std::size_t>(s) * n, queue);
    }
  }
  return dist;
}

std::uint64_t pairwise_distance_sum(const Graph& g) {
  const std::size_t n = g.node_count();
  if (connected_components(g).count > 1) {
    throw PreconditionError("pairwise distance sum requires a connected graph");
  }
  std::uint64_t total = 0;
#pragma omp parallel reduction(+ : total)
  {
    std::vector<std::uint32_t> dist(n);
    std::vector<NodeId> queue(n);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
      bfs_into(g, static_cast<NodeId>(s), dist.data(), queue);
      for (std::size_t v = static_cast<std::size_t>(s) + 1; v < n; ++v) total += dist[v];
    }
  }
  return total;
}

}  // namespace cliquepool
