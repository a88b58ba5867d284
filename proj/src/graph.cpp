#include "cliquepool/graph.hpp"

#include <algorithm>
#include <string>

#include "cliquepool/error.hpp"

namespace cliquepool {

Graph build_graph(std::span<const Edge> edges, std::size_t node_count, BuildStats* stats) {
  BuildStats local;
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge e = edges[i];
    if (e.u >= node_count || e.v >= node_count) {
      throw GraphError("edge #" + std::to_string(i) + " (" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + ") is out of range for " +
                       std::to_string(node_count) + " nodes");
    }
    if (e.u == e.v) {
      ++local.self_loops_dropped;
      continue;
    }
    directed.push_back({e.u, e.v});
    directed.push_back({e.v, e.u});
  }
  std::sort(directed.begin(), directed.end());
  const auto last = std::unique(directed.begin(), directed.end());
  local.duplicates_merged = static_cast<std::size_t>(directed.end() - last) / 2;
  directed.erase(last, directed.end());

  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (const Edge& e : directed) ++g.offsets_[e.u + 1];
  for (std::size_t u = 0; u < node_count; ++u) g.offsets_[u + 1] += g.offsets_[u];
  g.targets_.reserve(directed.size());
  for (const Edge& e : directed) g.targets_.push_back(e.v);

  if (stats) *stats = local;
  return g;
}

Graph Graph::from_adjacency(const std::vector<std::vector<NodeId>>& adjacency,
                            BuildStats* stats) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < adjacency.size(); ++u) {
    for (NodeId v : adjacency[u]) edges.push_back({static_cast<NodeId>(u), v});
  }
  return build_graph(edges, adjacency.size(), stats);
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (u >= node_count() || v >= node_count()) return false;
  const auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> d(node_count());
  for (NodeId u = 0; u < node_count(); ++u) d[u] = degree(u);
  return d;
}

std::vector<NodeId> inverse_permutation(std::span<const NodeId> perm) {
  std::vector<NodeId> inv(perm.size(), kUnreachable);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || inv[perm[i]] != kUnreachable) {
      throw GraphError("permutation is not a bijection on [0, " + std::to_string(perm.size()) +
                       ") at position " + std::to_string(i));
    }
    inv[perm[i]] = static_cast<NodeId>(i);
  }
  return inv;
}

Graph permute(const Graph& g, std::span<const NodeId> perm) {
  if (perm.size() != g.node_count()) {
    throw GraphError("permutation has " + std::to_string(perm.size()) + " entries for " +
                     std::to_string(g.node_count()) + " nodes");
  }
  inverse_permutation(perm);  // validates
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e = {perm[e.u], perm[e.v]};
  return build_graph(edges, g.node_count());
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  std::vector<NodeId> local(g.node_count(), kUnreachable);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<NodeId>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (NodeId v : g.neighbors(nodes[i])) {
      if (local[v] != kUnreachable && i < local[v]) {
        edges.push_back({static_cast<NodeId>(i), local[v]});
      }
    }
  }
  return build_graph(edges, nodes.size());
}

}  // namespace cliquepool
