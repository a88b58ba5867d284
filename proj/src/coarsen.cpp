#include "cliquepool/coarsen.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "cliquepool/error.hpp"

namespace cliquepool {

std::string_view to_string(Readout r) { return r == Readout::kMean ? "mean" : "max"; }

Readout parse_readout(std::string_view s) {
  if (s == "mean") return Readout::kMean;
  if (s == "max") return Readout::kMax;
  throw std::invalid_argument("unknown readout '" + std::string(s) + "' (expected mean or max)");
}

std::size_t Assignment::multi_assigned_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(node_to_pools.begin(), node_to_pools.end(),
                                                [](const auto& p) { return p.size() > 1; }));
}

namespace {

void validate_cliques(const Graph& g, const CliqueSet& cliques) {
  std::vector<bool> covered(g.node_count(), false);
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    const Clique& c = cliques[i];
    if (c.empty() || !is_clique(g, c) || !is_maximal_clique(g, c)) {
      throw ValidationError("clique #" + std::to_string(i) +
                            " is not a maximal clique of the graph");
    }
    if (i > 0 && cliques[i - 1] == c) {
      throw ValidationError("clique #" + std::to_string(i) + " is repeated");
    }
    for (NodeId u : c) covered[u] = true;
  }
  const auto missing = std::find(covered.begin(), covered.end(), false);
  if (missing != covered.end()) {
    throw ValidationError("node " + std::to_string(missing - covered.begin()) +
                          " is not covered by any clique");
  }
  // Every edge lies in some maximal clique, so an uncovered edge means the set
  // is incomplete.
  std::vector<std::vector<std::size_t>> cliques_of(g.node_count());
  for (std::size_t i = 0; i < cliques.size(); ++i)
    for (NodeId u : cliques[i]) cliques_of[u].push_back(i);
  for (const Edge& e : g.edges()) {
    const auto& a = cliques_of[e.u];
    const auto& b = cliques_of[e.v];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size() && a[i] != b[j]) (a[i] < b[j] ? i : j)++;
    if (i == a.size() || j == b.size()) {
      throw ValidationError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            ") is not inside any clique");
    }
  }
}

}  // namespace

Assignment assign_pools(const Graph& g, const CliqueSet& cliques) {
  validate_cliques(g, cliques);
  const std::size_t n = g.node_count();
  const std::size_t k = cliques.size();

  std::vector<std::vector<std::size_t>> cliques_of(n);
  for (std::size_t c = 0; c < k; ++c)
    for (NodeId u : cliques[c]) cliques_of[u].push_back(c);

  // A clique that has not received nodes keeps exactly its unassigned members,
  // so its effective size is its unassigned count.
  std::vector<std::size_t> effective(k);
  for (std::size_t c = 0; c < k; ++c) effective[c] = cliques[c].size();
  std::vector<bool> assigned(n, false);
  std::vector<std::vector<NodeId>> received(k);
  std::size_t remaining = n;

  Assignment out;
  while (remaining > 0) {
    AssignmentStep step;
    for (std::size_t c = 0; c < k; ++c) step.effective_size = std::max(step.effective_size, effective[c]);
    for (std::size_t c = 0; c < k; ++c)
      if (effective[c] == step.effective_size) step.tied_cliques.push_back(c);

    for (std::size_t c : step.tied_cliques) {
      for (NodeId u : cliques[c]) {
        if (!assigned[u]) received[c].push_back(u);
      }
    }
    for (std::size_t c : step.tied_cliques) {
      for (NodeId u : received[c]) {
        if (assigned[u]) continue;
        assigned[u] = true;
        step.assigned.push_back(u);
        --remaining;
        for (std::size_t other : cliques_of[u]) --effective[other];
      }
    }
    std::sort(step.assigned.begin(), step.assigned.end());
    out.trace.push_back(std::move(step));
  }

  out.node_to_pools.resize(n);
  for (std::size_t c = 0; c < k; ++c) {
    if (received[c].empty()) continue;
    const auto pool_id = static_cast<std::uint32_t>(out.pools.size());
    for (NodeId u : received[c]) out.node_to_pools[u].push_back(pool_id);
    out.pools.push_back({c, std::move(received[c])});
  }
  return out;
}

Graph coarsen_graph(const Graph& g, const Assignment& a) {
  if (a.node_count() != g.node_count()) {
    throw ValidationError("assignment covers " + std::to_string(a.node_count()) +
                          " nodes, graph has " + std::to_string(g.node_count()));
  }
  const std::size_t m = a.pool_count();
  std::vector<std::vector<NodeId>> adjacency(m);
#pragma omp parallel
  {
    // mark[q] == p once pool q has been recorded as a neighbor of pool p.
    std::vector<std::size_t> mark(m, std::numeric_limits<std::size_t>::max());
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t pi = 0; pi < static_cast<std::int64_t>(m); ++pi) {
      const auto p = static_cast<std::size_t>(pi);
      mark[p] = p;
      auto visit = [&](NodeId u) {
        for (std::uint32_t q : a.node_to_pools[u]) {
          if (mark[q] != p) {
            mark[q] = p;
            adjacency[p].push_back(q);
          }
        }
      };
      for (NodeId u : a.pools[p].members) {
        visit(u);
        for (NodeId w : g.neighbors(u)) visit(w);
      }
      std::sort(adjacency[p].begin(), adjacency[p].end());
    }
  }
  return Graph::from_adjacency(adjacency);
}

FeatureMatrix pool_features(const FeatureMatrix& x, const Assignment& a, Readout readout) {
  if (x.rows() != a.node_count()) {
    throw ShapeError("feature matrix has " + std::to_string(x.rows()) + " rows, assignment covers " +
                     std::to_string(a.node_count()) + " nodes");
  }
  FeatureMatrix out(a.pool_count(), x.cols());
  const auto m = static_cast<std::int64_t>(a.pool_count());
#pragma omp parallel for schedule(static)
  for (std::int64_t pi = 0; pi < m; ++pi) {
    const auto p = static_cast<std::size_t>(pi);
    const auto& members = a.pools[p].members;
    auto dst = out.row(p);
    if (readout == Readout::kMean) {
      for (NodeId u : members) {
        const auto src = x.row(u);
        for (std::size_t f = 0; f < x.cols(); ++f) dst[f] += src[f];
      }
      const double inv = 1.0 / static_cast<double>(members.size());
      for (double& v : dst) v *= inv;
    } else {
      std::fill(dst.begin(), dst.end(), -std::numeric_limits<double>::infinity());
      for (NodeId u : members) {
        const auto src = x.row(u);
        for (std::size_t f = 0; f < x.cols(); ++f) dst[f] = std::max(dst[f], src[f]);
      }
    }
  }
  return out;
}

PoolMatrix::PoolMatrix(const Assignment& a, std::size_t node_count) : cols_(node_count) {
  if (a.node_count() != node_count) {
    throw ShapeError("pool matrix: assignment covers " + std::to_string(a.node_count()) +
                     " nodes, expected " + std::to_string(node_count));
  }
  for (const Pool& p : a.pools) {
    const double w = 1.0 / static_cast<double>(p.members.size());
    for (NodeId u : p.members) {
      columns_.push_back(u);
      weights_.push_back(w);
    }
    offsets_.push_back(columns_.size());
  }
}

PoolMatrix PoolMatrix::identity(std::size_t n) {
  PoolMatrix pm;
  pm.cols_ = n;
  for (NodeId u = 0; u < n; ++u) {
    pm.columns_.push_back(u);
    pm.weights_.push_back(1.0);
    pm.offsets_.push_back(pm.columns_.size());
  }
  return pm;
}

Matrix PoolMatrix::apply(const Matrix& x) const {
  if (x.rows() != cols_) throw ShapeError("pool matrix apply: row count mismatch");
  Matrix out(rows(), x.cols());
  const auto m = static_cast<std::int64_t>(rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t ri = 0; ri < m; ++ri) {
    const auto r = static_cast<std::size_t>(ri);
    auto dst = out.row(r);
    for (std::size_t e = offsets_[r]; e < offsets_[r + 1]; ++e) {
      const auto src = x.row(columns_[e]);
      for (std::size_t f = 0; f < x.cols(); ++f) dst[f] += weights_[e] * src[f];
    }
  }
  return out;
}

Matrix PoolMatrix::apply_transpose(const Matrix& dy) const {
  if (dy.rows() != rows()) throw ShapeError("pool matrix apply_transpose: row count mismatch");
  // Scatter is serial: several pools may write the same node row.
  Matrix out(cols_, dy.cols());
  for (std::size_t r = 0; r < rows(); ++r) {
    const auto src = dy.row(r);
    for (std::size_t e = offsets_[r]; e < offsets_[r + 1]; ++e) {
      auto dst = out.row(columns_[e]);
      for (std::size_t f = 0; f < dy.cols(); ++f) dst[f] += weights_[e] * src[f];
    }
  }
  return out;
}

Matrix PoolMatrix::to_dense() const {
  Matrix out(rows(), cols_);
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t e = offsets_[r]; e < offsets_[r + 1]; ++e) out(r, columns_[e]) = weights_[e];
  return out;
}

PoolMatrix pool_matrix(const Assignment& a, std::size_t node_count) {
  return PoolMatrix(a, node_count);
}

}  // namespace cliquepool
