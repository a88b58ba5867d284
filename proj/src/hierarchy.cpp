#include "cliquepool/hierarchy.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "cliquepool/error.hpp"

namespace cliquepool {

PoolStep pool_once(const Graph& g, const FeatureMatrix* x, Readout readout) {
  PoolStep step;
  step.cliques = maximal_cliques(g);
  step.assignment = assign_pools(g, step.cliques);
  step.coarsened = coarsen_graph(g, step.assignment);
  if (x) step.features = pool_features(*x, step.assignment, readout);
  return step;
}

std::vector<std::size_t> Hierarchy::node_counts() const {
  std::vector<std::size_t> out;
  for (const Level& l : levels) out.push_back(l.graph.node_count());
  return out;
}

namespace {

LevelStats make_stats(const Graph& g, const CliqueSet& cliques, const Assignment* a) {
  LevelStats s;
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  s.cliques = cliques.size();
  s.max_clique_size = cliques.max_size();
  s.mean_clique_size = cliques.mean_size();
  s.multi_assigned = a ? a->multi_assigned_count() : 0;
  return s;
}

std::size_t default_budget(const Graph& g) {
  const ComponentLabels comps = connected_components(g);
  std::vector<std::vector<NodeId>> members(comps.count);
  for (NodeId u = 0; u < g.node_count(); ++u) members[comps.label[u]].push_back(u);
  std::size_t total = 0;
  for (const auto& nodes : members) {
    if (nodes.size() > 1) total += pairwise_distance_sum(induced_subgraph(g, nodes));
  }
  return total + 1;
}

}  // namespace

Hierarchy build_hierarchy(const Graph& g, const FeatureMatrix* x, const HierarchyOptions& options) {
  if (x && x->rows() != g.node_count()) {
    throw ShapeError("feature matrix has " + std::to_string(x->rows()) + " rows for " +
                     std::to_string(g.node_count()) + " nodes");
  }
  const std::size_t budget = options.max_levels.value_or(default_budget(g));

  Hierarchy h;
  h.readout = options.readout;
  Graph current = g;
  std::optional<FeatureMatrix> features;
  if (x) features = *x;

  for (std::size_t steps = 0;; ++steps) {
    Level level;
    level.features = std::move(features);
    if (current.edge_count() == 0) {
      level.stats = make_stats(current, maximal_cliques(current), nullptr);
      level.graph = std::move(current);
      h.levels.push_back(std::move(level));
      return h;
    }
    if (steps == budget) {
      auto counts = h.node_counts();
      counts.push_back(current.node_count());
      throw DivergenceError("pooling did not converge within " + std::to_string(budget) +
                                " levels",
                            std::move(counts));
    }
    PoolStep step = pool_once(current, level.features ? &*level.features : nullptr,
                              options.readout);
    if (step.coarsened == current) {
      auto counts = h.node_counts();
      counts.push_back(current.node_count());
      throw DivergenceError("pooling reached a fixed point with " +
                                std::to_string(current.edge_count()) + " edges left",
                            std::move(counts));
    }
    level.stats = make_stats(current, step.cliques, &step.assignment);
    level.assignment = std::move(step.assignment);
    level.graph = std::exchange(current, std::move(step.coarsened));
    features = std::move(step.features);
    h.levels.push_back(std::move(level));
  }
}

ImageSets image_sets(const Hierarchy& h) {
  ImageSets out;
  if (h.levels.empty()) return out;
  const std::size_t n = h.input().node_count();
  out.resize(h.depth());
  out[0].resize(n);
  for (NodeId u = 0; u < n; ++u) out[0][u] = {u};
  for (std::size_t k = 0; k + 1 < h.depth(); ++k) {
    const Assignment& a = *h.levels[k].assignment;
    out[k + 1].resize(n);
    for (NodeId u = 0; u < n; ++u) {
      auto& img = out[k + 1][u];
      for (NodeId w : out[k][u]) img.insert(img.end(), a.node_to_pools[w].begin(), a.node_to_pools[w].end());
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
    }
  }
  return out;
}

std::vector<std::uint64_t> distance_sum_trace(const Hierarchy& h) {
  if (h.levels.empty()) return {};
  if (connected_components(h.input()).count > 1) {
    throw PreconditionError("distance sum trace requires a connected input graph");
  }
  const ImageSets images = image_sets(h);
  const std::size_t n = h.input().node_count();
  std::vector<std::uint64_t> trace;
  for (std::size_t k = 0; k < h.depth(); ++k) {
    const Graph& lg = h.levels[k].graph;
    const std::size_t m = lg.node_count();
    const auto dist = all_pairs_distances(lg);
    const auto& img = images[k];
    std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic, 4)
    for (std::int64_t ui = 0; ui < static_cast<std::int64_t>(n); ++ui) {
      const auto u = static_cast<std::size_t>(ui);
      for (std::size_t v = u + 1; v < n; ++v) {
        std::uint32_t far = 0;
        for (NodeId a : img[u])
          for (NodeId b : img[v]) far = std::max(far, dist[a * m + b]);
        total += far;
      }
    }
    trace.push_back(total);
  }
  return trace;
}

std::size_t DependencyDag::out_degree(DagNode n) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const auto& e) { return e.first == n; }));
}

DependencyDag dependency_dag(const Hierarchy& h) {
  DependencyDag dag;
  for (std::size_t k = 0; k < h.depth(); ++k) {
    const auto level = static_cast<std::uint32_t>(k);
    for (NodeId u = 0; u < h.levels[k].graph.node_count(); ++u) dag.nodes.push_back({level, u});
    if (!h.levels[k].assignment) continue;
    const Assignment& a = *h.levels[k].assignment;
    for (NodeId u = 0; u < a.node_count(); ++u) {
      for (std::uint32_t p : a.node_to_pools[u]) dag.edges.push_back({{level, u}, {level + 1, p}});
    }
  }
  return dag;
}

std::vector<LevelStats> level_stats(const Hierarchy& h) {
  std::vector<LevelStats> out;
  for (const Level& l : h.levels) out.push_back(l.stats);
  return out;
}

}  // namespace cliquepool
