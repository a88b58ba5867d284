#include <algorithm>
#include <limits>

#include "cliquepool/error.hpp"
#include "cliquepool/serial.hpp"

namespace cliquepool::serial {

Graph coarsen_graph(const Graph& g, const Assignment& a) {
  const std::size_t m = a.pool_count();
  std::vector<Edge> edges;
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p + 1; q < m; ++q) {
      bool linked = false;
      for (NodeId u : a.pools[p].members) {
        for (NodeId v : a.pools[q].members) {
          if (u == v || g.has_edge(u, v)) {
            linked = true;
            break;
          }
        }
        if (linked) break;
      }
      if (linked) edges.push_back({static_cast<NodeId>(p), static_cast<NodeId>(q)});
    }
  }
  return build_graph(edges, m);
}

FeatureMatrix pool_features(const FeatureMatrix& x, const Assignment& a, Readout readout) {
  if (x.rows() != a.node_count()) throw ShapeError("pool_features: row count mismatch");
  FeatureMatrix out(a.pool_count(), x.cols());
  for (std::size_t p = 0; p < a.pool_count(); ++p) {
    const auto& members = a.pools[p].members;
    for (std::size_t f = 0; f < x.cols(); ++f) {
      if (readout == Readout::kMean) {
        double s = 0.0;
        for (NodeId u : members) s += x(u, f);
        out(p, f) = s * (1.0 / static_cast<double>(members.size()));
      } else {
        double best = -std::numeric_limits<double>::infinity();
        for (NodeId u : members) best = std::max(best, x(u, f));
        out(p, f) = best;
      }
    }
  }
  return out;
}

}  // namespace cliquepool::serial
