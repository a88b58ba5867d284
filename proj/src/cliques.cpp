#include "cliquepool/cliques.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>

namespace cliquepool {

CliqueSet::CliqueSet(std::vector<Clique> cliques) : cliques_(std::move(cliques)) {
  for (Clique& c : cliques_) std::sort(c.begin(), c.end());
  std::sort(cliques_.begin(), cliques_.end(), [](const Clique& a, const Clique& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  cliques_.erase(std::unique(cliques_.begin(), cliques_.end()), cliques_.end());
}

double CliqueSet::mean_size() const noexcept {
  if (cliques_.empty()) return 0.0;
  std::size_t total = 0;
  for (const Clique& c : cliques_) total += c.size();
  return static_cast<double>(total) / static_cast<double>(cliques_.size());
}

CliqueSet CliqueSet::relabeled(std::span<const NodeId> perm) const {
  std::vector<Clique> out = cliques_;
  for (Clique& c : out)
    for (NodeId& u : c) u = perm[u];
  return CliqueSet(std::move(out));
}

DegeneracyOrder degeneracy_ordering(const Graph& g) {
  const std::size_t n = g.node_count();
  DegeneracyOrder out;
  out.order.reserve(n);
  std::vector<std::size_t> deg = g.degrees();
  std::vector<bool> removed(n, false);
  std::set<std::pair<std::size_t, NodeId>> queue;
  for (NodeId u = 0; u < n; ++u) queue.insert({deg[u], u});
  while (!queue.empty()) {
    const auto [d, u] = *queue.begin();
    queue.erase(queue.begin());
    removed[u] = true;
    out.order.push_back(u);
    out.degeneracy = std::max(out.degeneracy, d);
    for (NodeId v : g.neighbors(u)) {
      if (removed[v]) continue;
      queue.erase({deg[v], v});
      queue.insert({--deg[v], v});
    }
  }
  return out;
}

namespace {

// Fixed-width bitset over the neighborhood of one outer vertex.
class Bits {
 public:
  explicit Bits(std::size_t words = 0) : w_(words, 0) {}
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool none() const {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x == 0; });
  }
  std::size_t and_count(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }
  Bits and_not(const Bits& o) const {
    Bits r(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i];
    return r;
  }
  Bits operator|(const Bits& o) const {
    Bits r(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t word = w_[i];
      while (word) {
        f(i * 64 + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> w_;
};

// Bron-Kerbosch with Tomita pivoting restricted to N(v) for one outer vertex v.
class LocalEnumerator {
 public:
  LocalEnumerator(const Graph& g, NodeId v, std::span<const std::uint32_t> position,
                  std::vector<NodeId>& marker_scratch, std::vector<Clique>& out)
      : out_(out) {
    const auto nbrs = g.neighbors(v);
    local_.assign(nbrs.begin(), nbrs.end());
    const std::size_t k = local_.size();
    const std::size_t words = (k + 63) / 64;
    for (std::size_t i = 0; i < k; ++i) marker_scratch[local_[i]] = static_cast<NodeId>(i);
    adj_.assign(k, Bits(words));
    for (std::size_t i = 0; i < k; ++i) {
      for (NodeId w : g.neighbors(local_[i])) {
        const NodeId j = marker_scratch[w];
        if (j != kUnreachable) adj_[i].set(j);
      }
    }
    for (NodeId u : local_) marker_scratch[u] = kUnreachable;

    Bits p(words);
    Bits x(words);
    for (std::size_t i = 0; i < k; ++i) {
      if (position[local_[i]] > position[v]) {
        p.set(i);
      } else {
        x.set(i);
      }
    }
    current_.push_back(v);
    expand(p, x);
  }

 private:
  void expand(Bits& p, Bits& x) {
    if (p.none()) {
      if (x.none()) {
        Clique c = current_;
        std::sort(c.begin(), c.end());
        out_.push_back(std::move(c));
      }
      return;
    }
    // Local indices follow global order, so scanning upward with a strict
    // comparison breaks ties toward the lowest node id.
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool found = false;
    (p | x).for_each([&](std::size_t u) {
      const std::size_t c = p.and_count(adj_[u]);
      if (!found || c > best) {
        pivot = u;
        best = c;
        found = true;
      }
    });
    const Bits candidates = p.and_not(adj_[pivot]);
    candidates.for_each([&](std::size_t u) {
      Bits np = p & adj_[u];
      Bits nx = x & adj_[u];
      current_.push_back(local_[u]);
      expand(np, nx);
      current_.pop_back();
      p.reset(u);
      x.set(u);
    });
  }

  std::vector<Clique>& out_;
  std::vector<NodeId> local_;
  std::vector<Bits> adj_;
  std::vector<NodeId> current_;
};

}  // namespace

CliqueSet maximal_cliques(const Graph& g) {
  const std::size_t n = g.node_count();
  const DegeneracyOrder order = degeneracy_ordering(g);
  std::vector<std::uint32_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order.order[i]] = static_cast<std::uint32_t>(i);

  std::vector<Clique> all;
#pragma omp parallel
  {
    std::vector<Clique> local;
    std::vector<NodeId> marker(n, kUnreachable);
#pragma omp for schedule(dynamic, 4) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      LocalEnumerator(g, order.order[static_cast<std::size_t>(i)], position, marker, local);
    }
#pragma omp critical(cliquepool_merge_cliques)
    all.insert(all.end(), std::make_move_iterator(local.begin()),
               std::make_move_iterator(local.end()));
  }
  return CliqueSet(std::move(all));
}

bool is_clique(const Graph& g, const Clique& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= g.node_count()) return false;
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (!g.has_edge(c[i], c[j])) return false;
    }
  }
  return true;
}

bool is_maximal_clique(const Graph& g, const Clique& c) {
  if (c.empty()) return g.node_count() == 0;
  // Nodes adjacent to every member: intersect the sorted neighbor lists.
  const auto first = g.neighbors(c.front());
  std::vector<NodeId> common(first.begin(), first.end());
  std::vector<NodeId> next;
  for (std::size_t i = 1; i < c.size() && !common.empty(); ++i) {
    const auto nb = g.neighbors(c[i]);
    next.clear();
    std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(),
                          std::back_inserter(next));
    common.swap(next);
  }
  return common.empty();
}

}  // namespace cliquepool
