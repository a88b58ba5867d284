#include "cliquepool/generators.hpp"

#include <numeric>

namespace cliquepool::gen {

Graph complete(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  return build_graph(edges, n);
}

Graph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) edges.push_back({u, static_cast<NodeId>((u + 1) % n)});
  return build_graph(edges, n);
}

Graph path(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return build_graph(edges, n);
}

Graph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return build_graph(edges, leaves + 1);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < a; ++u)
    for (NodeId v = 0; v < b; ++v) edges.push_back({u, static_cast<NodeId>(a + v)});
  return build_graph(edges, a + b);
}

Graph petersen() {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});          // outer cycle
    edges.push_back({i, i + 5});                // spokes
    edges.push_back({i + 5, (i + 2) % 5 + 5});  // inner pentagram
  }
  return build_graph(edges, 10);
}

Graph empty(std::size_t n) { return build_graph(std::span<const Edge>{}, n); }

Graph erdos_renyi(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (uniform01(rng) < p) edges.push_back({u, v});
  return build_graph(edges, n);
}

Graph random_connected(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  const auto order = random_permutation(n, rng);
  for (std::size_t i = 1; i < n; ++i) {
    edges.push_back({order[i], order[below(rng, i)]});
  }
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (uniform01(rng) < p) edges.push_back({u, v});
  return build_graph(edges, n);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  const auto shift = static_cast<NodeId>(a.node_count());
  for (Edge e : b.edges()) edges.push_back({e.u + shift, e.v + shift});
  return build_graph(edges, a.node_count() + b.node_count());
}

std::vector<NodeId> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  // Fisher-Yates with the portable draw; std::shuffle is implementation defined.
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[below(rng, i)]);
  }
  return perm;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double lo,
                     double hi) {
  Matrix m(rows, cols);
  for (double& v : m.values()) v = uniform(rng, lo, hi);
  return m;
}

}  // namespace cliquepool::gen
