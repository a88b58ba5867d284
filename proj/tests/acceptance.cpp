// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cliquepool/cliques.hpp"
#include "cliquepool/coarsen.hpp"
#include "cliquepool/error.hpp"
#include "cliquepool/generators.hpp"
#include "cliquepool/graph.hpp"
#include "cliquepool/grid.hpp"
#include "cliquepool/hierarchy.hpp"
#include "cliquepool/model.hpp"
#include "test_util.hpp"

using namespace cliquepool;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0: no limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome clique_oracle() {
  std::mt19937_64 rng(20240101);
  const double ps[] = {0.2, 0.5, 0.8};
  std::size_t graphs = 0;
  for (int round = 0; round < 80; ++round) {
    for (double p : ps) {
      const std::size_t n = 1 + gen::below(rng, 12);
      const Graph g = gen::erdos_renyi(n, p, rng);
      ++graphs;
      if (maximal_cliques(g) != maximal_cliques_bruteforce(g))
        return {false, fmt("mismatch on graph %zu (n=%zu, p=%.1f)", graphs, n, p)};
    }
  }
  return {true, fmt("%zu graphs", graphs)};
}

Outcome moon_moser() {
  const CliqueSet c = maximal_cliques(gen::complete_bipartite(3, 3));
  const auto bound = static_cast<std::size_t>(std::lround(std::pow(3.0, 6.0 / 3.0)));
  return {c.size() == 9 && bound == 9, fmt("%zu cliques, bound %zu", c.size(), bound)};
}

Outcome chain_law() {
  std::size_t checked = 0;
  for (std::size_t length = 2; length <= 64; ++length) {
    Graph g = grid::make_chain(length);
    for (std::size_t n = 1; (std::size_t{1} << n) - 1 < length; ++n) {
      g = pool_once(g).coarsened;
      const std::size_t expect = length - ((std::size_t{1} << n) - 1);
      if (g.node_count() != expect || grid::chain_length_after(length, n) != expect)
        return {false, fmt("L=%zu n=%zu: got %zu, expected %zu", length, n, g.node_count(), expect)};
      ++checked;
    }
  }
  const std::size_t l32 = grid::chain_length_after(32, 5);
  return {l32 == 1, fmt("%zu (L, n) pairs, L=32 n=5 -> %zu", checked, l32)};
}

Outcome pool_sizes() {
  std::mt19937_64 rng(4);
  const grid::GridSpec spec{32, 32};
  const Matrix x = gen::random_matrix(32 * 32, 1, rng);
  const auto report = grid::verify_grid_equivalence(spec, x, 5);
  std::vector<std::size_t> sides;
  for (const auto& lv : report.levels) sides.push_back(lv.observed_window);
  const std::vector<std::size_t> expect{2, 3, 5, 9, 17};
  std::string s;
  for (std::size_t v : sides) s += (s.empty() ? "" : ",") + std::to_string(v);
  return {sides == expect && grid::pool_schedule(5).sizes == expect, "sides [" + s + "]"};
}

Outcome grid_equivalence() {
  std::mt19937_64 rng(8);
  std::string detail;
  for (std::size_t side : {8, 16, 32}) {
    std::size_t levels = 0;
    while ((std::size_t{1} << (levels + 1)) <= side) ++levels;
    const Matrix x = gen::random_matrix(side * side, 3, rng);
    const auto report = grid::verify_grid_equivalence({side, side}, x, levels);
    if (!report.ok()) {
      for (const auto& lv : report.levels)
        if (!lv.ok()) return {false, fmt("%zux%zu level %zu: %s", side, side, lv.level, lv.first_mismatch.c_str())};
    }
    detail += fmt("%s%zux%zu:%zu levels", detail.empty() ? "" : ", ", side, side, levels);
  }
  return {true, detail};
}

Outcome figure_two() {
  const Graph g = grid::make_grid({4, 4});
  const PoolStep first = pool_once(g);
  const Graph& h = first.coarsened;
  const bool complete9 = h.node_count() == 9 && h.edge_count() == 36;
  const PoolStep second = pool_once(h);
  const std::size_t last = second.coarsened.node_count();
  return {complete9 && last == 1,
          fmt("16 -> %zu nodes (%zu edges) -> %zu", h.node_count(), h.edge_count(), last)};
}

// Every instance must reach one node and show a strictly decreasing trace.
// All instances are run so the report counts how many break each property.
Outcome convergence() {
  std::mt19937_64 rng(77);
  std::size_t max_depth = 0;
  std::size_t converged = 0;
  std::size_t monotone = 0;
  std::string first_bad;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + gen::below(rng, 39);
    const double p = gen::uniform(rng, 0.0, 0.3);
    const Graph g = gen::random_connected(n, p, rng);
    Hierarchy h;
    try {
      h = build_hierarchy(g);
    } catch (const DivergenceError& e) {
      if (first_bad.empty()) first_bad = fmt("instance %d (n=%zu): %s", i, n, e.what());
      continue;
    }
    if (h.levels.back().graph.node_count() == 1) ++converged;
    max_depth = std::max(max_depth, h.depth());
    const auto trace = distance_sum_trace(h);
    bool decreasing = trace.back() == 0;
    for (std::size_t k = 1; k < trace.size(); ++k) decreasing = decreasing && trace[k] < trace[k - 1];
    if (decreasing) {
      ++monotone;
    } else if (first_bad.empty()) {
      std::string t;
      for (auto v : trace) t += (t.empty() ? "" : ",") + std::to_string(v);
      first_bad = fmt("instance %d (n=%zu) trace [%s]", i, n, t.c_str());
    }
  }
  std::string detail = fmt("%zu/100 converged, %zu/100 strictly decreasing, deepest %zu levels",
                           converged, monotone, max_depth);
  if (!first_bad.empty()) detail += "; first violation: " + first_bad;
  return {converged == 100 && monotone == 100, detail};
}

Outcome bipartite_blowup() {
  struct Case {
    const char* name;
    Graph g;
  };
  const Case cases[] = {{"C4", gen::cycle(4)},
                        {"C6", gen::cycle(6)},
                        {"K2,3", gen::complete_bipartite(2, 3)},
                        {"K3,3", gen::complete_bipartite(3, 3)}};
  std::string detail;
  bool ok = true;
  for (const auto& c : cases) {
    const std::size_t pooled = pool_once(c.g).coarsened.node_count();
    ok = ok && pooled == c.g.edge_count();
    detail += fmt("%s%s:%zu", detail.empty() ? "" : " ", c.name, pooled);
  }
  return {ok && detail == "C4:4 C6:6 K2,3:6 K3,3:9", detail};
}

// Central differences over every trainable scalar of the full pipeline.
Outcome gradient_check() {
  constexpr double kStep = 1e-6;
  constexpr double kTolerance = 1e-4;
  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const std::size_t n = 6 + gen::below(rng, 7);
    const Graph g = gen::random_connected(n, 0.35, rng);
    nn::ModelConfig cfg;
    cfg.conv = draw % 2 == 0 ? nn::ConvType::kGcn : nn::ConvType::kSageMean;
    cfg.in_features = 3;
    cfg.hidden = 4;
    cfg.n_classes = 3;
    cfg.seed = 1000 + static_cast<std::uint64_t>(draw);
    const nn::Params params = nn::init_params(cfg);
    const Matrix x = gen::random_matrix(n, cfg.in_features, rng);
    const nn::PoolingPlan plan = nn::make_plan(build_hierarchy(g));
    const std::size_t label = gen::below(rng, cfg.n_classes);

    const nn::LossAndGrad lg = nn::loss_and_grad(cfg, params, plan, x, label);
    nn::Params probe = params;
    auto tensors = probe.tensors();
    const auto grads = lg.grads.tensors();
    for (std::size_t t = 0; t < tensors.size(); ++t) {
      for (std::size_t i = 0; i < tensors[t].size(); ++i) {
        const double saved = tensors[t][i];
        tensors[t][i] = saved + kStep;
        const double up = nn::loss_and_grad(cfg, probe, plan, x, label).loss;
        tensors[t][i] = saved - kStep;
        const double down = nn::loss_and_grad(cfg, probe, plan, x, label).loss;
        tensors[t][i] = saved;
        const double numeric = (up - down) / (2.0 * kStep);
        const double err = testing::relative_error(grads[t][i], numeric);
        worst = std::max(worst, err);
        if (err > kTolerance)
          return {false, fmt("draw %d tensor %zu entry %zu: analytic %.10g numeric %.10g (rel %.3g)",
                             draw, t, i, grads[t][i], numeric, err)};
      }
    }
  }
  return {true, fmt("20 draws, max relative error %.3g", worst)};
}

Outcome zero_parameter_pooling() {
  nn::ModelConfig cfg;
  cfg.in_features = 5;
  const std::size_t baseline = nn::init_params(cfg).count();
  std::mt19937_64 rng(5);
  std::vector<std::size_t> depths;
  for (std::size_t n : {3, 10, 40}) {
    const Graph g = gen::random_connected(n, 0.1, rng);
    const Hierarchy h = build_hierarchy(g);
    depths.push_back(h.depth());
    const nn::PoolingPlan plan = nn::make_plan(h);
    const Matrix x = gen::random_matrix(n, cfg.in_features, rng);
    const auto lg = nn::loss_and_grad(cfg, nn::init_params(cfg), plan, x, 0);
    if (lg.grads.count() != baseline) return {false, "gradient count differs from parameter count"};
  }
  const std::size_t expect = 5 * 64 + 2 * 64 * 64 + 6 * 64 * 2 + 2;
  const bool ok = baseline == expect && nn::Params::pooling_count() == 0;
  return {ok, fmt("%zu parameters for hierarchies of depth %zu, %zu, %zu; pooling owns %zu",
                  baseline, depths[0], depths[1], depths[2], nn::Params::pooling_count())};
}

Outcome permutation_invariance() {
  std::mt19937_64 rng(123);
  double worst_logit = 0.0;
  double worst_readout = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + gen::below(rng, 20);
    const Graph g = gen::random_connected(n, 0.25, rng);
    nn::ModelConfig cfg;
    cfg.conv = trial % 2 == 0 ? nn::ConvType::kGcn : nn::ConvType::kSageMean;
    cfg.in_features = 4;
    cfg.hidden = 16;
    cfg.n_classes = 3;
    cfg.seed = static_cast<std::uint64_t>(trial);
    const nn::Params params = nn::init_params(cfg);
    const Matrix x = gen::random_matrix(n, cfg.in_features, rng);
    const auto perm = gen::random_permutation(n, rng);

    const auto a = nn::forward(cfg, params, nn::make_plan(build_hierarchy(g)), x);
    const auto b = nn::forward(cfg, params, nn::make_plan(build_hierarchy(permute(g, perm))),
                               permute_rows(x, perm));
    for (std::size_t c = 0; c < a.scores.size(); ++c)
      worst_logit = std::max(worst_logit, std::abs(a.scores[c] - b.scores[c]));
    for (std::size_t l = 0; l < nn::kConvLayers; ++l) {
      const auto& ra = a.tape.layers[l].readout;
      const auto& rb = b.tape.layers[l].readout;
      for (std::size_t k = 0; k < ra.size(); ++k)
        worst_readout = std::max(worst_readout, std::abs(ra[k] - rb[k]));
    }
  }
  return {worst_logit <= 1e-9 && worst_readout <= 1e-12,
          fmt("max logit diff %.3g, max readout diff %.3g", worst_logit, worst_readout)};
}

Outcome training_sanity() {
  const auto data = nn::clique_cycle_dataset(200, 0);
  nn::ModelConfig cfg;
  cfg.in_features = data.front().features.cols();
  nn::TrainOptions opts;
  opts.epochs = 500;
  opts.batch_size = 0;
  opts.adam.lr = 1e-4;
  opts.adam.weight_decay = 1e-3;
  const nn::TrainResult r = nn::train(cfg, data, opts);
  const nn::Evaluation e = nn::evaluate(cfg, r.params, data);
  std::size_t first = 0;
  for (const auto& m : r.history)
    if (first == 0 && m.accuracy >= 0.9) first = m.steps;
  return {r.steps <= 500 && e.accuracy >= 0.9,
          fmt("%zu steps, train accuracy %.3f, loss %.4f, first >=0.9 at step %zu", r.steps,
              e.accuracy, e.loss, first)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "clique enumeration matches brute force", 10.0, clique_oracle},
      {2, "K3,3 has 9 maximal cliques", 0.0, moon_moser},
      {3, "chain length law", 0.0, chain_law},
      {4, "grid pool sides 2,3,5,9,17", 0.0, pool_sizes},
      {5, "grid pooling equals sliding-window max", 30.0, grid_equivalence},
      {6, "4x4 grid -> K9 -> 1 node", 0.0, figure_two},
      {7, "random connected graphs converge", 60.0, convergence},
      {8, "bipartite pooled size equals edge count", 0.0, bipartite_blowup},
      {9, "analytic gradients match finite differences", 0.0, gradient_check},
      {10, "pooling adds no parameters", 0.0, zero_parameter_pooling},
      {11, "permutation invariance", 0.0, permutation_invariance},
      {12, "clique vs cycle training", 120.0, training_sanity},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
      out.ok = false;
      out.detail += fmt(" (over %.0fs limit)", c.time_limit_s);
    }
    std::printf("%s  [%2d] %-46s %7.2fs  %s\n", out.ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                secs, out.detail.c_str());
    std::fflush(stdout);
    if (!out.ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
