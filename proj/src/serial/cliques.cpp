#include <algorithm>
#include <iterator>

#include "cliquepool/serial.hpp"

namespace cliquepool::serial {

namespace {

std::vector<NodeId> intersect(const std::vector<NodeId>& a, std::span<const NodeId> b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void expand(const Graph& g, std::vector<NodeId>& r, std::vector<NodeId> p, std::vector<NodeId> x,
            std::vector<Clique>& out) {
  if (p.empty()) {
    if (x.empty()) out.push_back(r);
    return;
  }
  std::vector<NodeId> px;
  std::merge(p.begin(), p.end(), x.begin(), x.end(), std::back_inserter(px));
  NodeId pivot = px.front();
  std::size_t best = 0;
  for (NodeId u : px) {
    const std::size_t c = intersect(p, g.neighbors(u)).size();
    if (c > best) {
      best = c;
      pivot = u;
    }
  }
  std::vector<NodeId> candidates;
  const auto pn = g.neighbors(pivot);
  std::set_difference(p.begin(), p.end(), pn.begin(), pn.end(), std::back_inserter(candidates));
  for (NodeId v : candidates) {
    r.push_back(v);
    expand(g, r, intersect(p, g.neighbors(v)), intersect(x, g.neighbors(v)), out);
    r.pop_back();
    p.erase(std::lower_bound(p.begin(), p.end(), v));
    x.insert(std::lower_bound(x.begin(), x.end(), v), v);
  }
}

}  // namespace

CliqueSet maximal_cliques(const Graph& g) {
  std::vector<NodeId> p(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) p[u] = u;
  std::vector<NodeId> r;
  std::vector<Clique> out;
  if (!p.empty()) expand(g, r, std::move(p), {}, out);
  return CliqueSet(std::move(out));
}

}  // namespace cliquepool::serial
