#include "cliquepool/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "cliquepool/error.hpp"
#include "cliquepool/generators.hpp"

namespace cliquepool::nn {

ConvType parse_conv(const std::string& s) {
  if (s == "gcn") return ConvType::kGcn;
  if (s == "sage" || s == "sage-mean") return ConvType::kSageMean;
  throw std::invalid_argument("unknown convolution '" + s + "' (expected gcn or sage)");
}

std::string to_string(ConvType c) { return c == ConvType::kGcn ? "gcn" : "sage-mean"; }

std::vector<std::span<double>> Params::tensors() {
  std::vector<std::span<double>> out;
  for (Matrix& w : conv) out.push_back(w.values());
  out.push_back(head_weight.values());
  out.push_back(head_bias);
  return out;
}

std::vector<std::span<const double>> Params::tensors() const {
  std::vector<std::span<const double>> out;
  for (const Matrix& w : conv) out.push_back(w.values());
  out.push_back(head_weight.values());
  out.push_back(head_bias);
  return out;
}

std::size_t Params::count() const {
  std::size_t n = 0;
  for (auto t : tensors()) n += t.size();
  return n;
}

Params Params::zeros_like(const ModelConfig& cfg) {
  const std::size_t widen = cfg.conv == ConvType::kSageMean ? 2 : 1;
  Params p;
  p.conv[0] = Matrix(widen * cfg.in_features, cfg.hidden);
  for (std::size_t l = 1; l < kConvLayers; ++l) p.conv[l] = Matrix(widen * cfg.hidden, cfg.hidden);
  p.head_weight = Matrix(2 * cfg.hidden * kConvLayers, cfg.n_classes);
  p.head_bias.assign(cfg.n_classes, 0.0);
  return p;
}

Params init_params(const ModelConfig& cfg) {
  Params p = Params::zeros_like(cfg);
  std::mt19937_64 rng(cfg.seed);
  auto glorot = [&](Matrix& w) {
    const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    for (double& v : w.values()) v = gen::uniform(rng, -limit, limit);
  };
  for (Matrix& w : p.conv) glorot(w);
  glorot(p.head_weight);
  return p;
}

Matrix gcn_propagate(const Graph& g, const Matrix& x) {
  if (x.rows() != g.node_count()) throw ShapeError("gcn_propagate: row count mismatch");
  const std::size_t n = g.node_count();
  std::vector<double> inv_sqrt(n);
  for (NodeId u = 0; u < n; ++u) inv_sqrt[u] = 1.0 / std::sqrt(static_cast<double>(g.degree(u) + 1));
  Matrix out(n, x.cols());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t ui = 0; ui < static_cast<std::int64_t>(n); ++ui) {
    const auto u = static_cast<NodeId>(ui);
    auto dst = out.row(u);
    const double self = inv_sqrt[u] * inv_sqrt[u];
    const auto xs = x.row(u);
    for (std::size_t f = 0; f < x.cols(); ++f) dst[f] = self * xs[f];
    for (NodeId v : g.neighbors(u)) {
      const double w = inv_sqrt[u] * inv_sqrt[v];
      const auto xv = x.row(v);
      for (std::size_t f = 0; f < x.cols(); ++f) dst[f] += w * xv[f];
    }
  }
  return out;
}

Matrix neighbor_mean(const Graph& g, const Matrix& x) {
  if (x.rows() != g.node_count()) throw ShapeError("neighbor_mean: row count mismatch");
  Matrix out(g.node_count(), x.cols());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t ui = 0; ui < static_cast<std::int64_t>(g.node_count()); ++ui) {
    const auto u = static_cast<NodeId>(ui);
    if (g.degree(u) == 0) continue;
    auto dst = out.row(u);
    for (NodeId v : g.neighbors(u)) {
      const auto xv = x.row(v);
      for (std::size_t f = 0; f < x.cols(); ++f) dst[f] += xv[f];
    }
    const double inv = 1.0 / static_cast<double>(g.degree(u));
    for (double& d : dst) d *= inv;
  }
  return out;
}

Matrix neighbor_mean_transpose(const Graph& g, const Matrix& dy) {
  if (dy.rows() != g.node_count()) throw ShapeError("neighbor_mean_transpose: row count mismatch");
  Matrix out(g.node_count(), dy.cols());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(g.node_count()); ++vi) {
    const auto v = static_cast<NodeId>(vi);
    auto dst = out.row(v);
    for (NodeId u : g.neighbors(v)) {
      const double w = 1.0 / static_cast<double>(g.degree(u));
      const auto src = dy.row(u);
      for (std::size_t f = 0; f < dy.cols(); ++f) dst[f] += w * src[f];
    }
  }
  return out;
}

Matrix sage_concat(const Graph& g, const Matrix& x) {
  const Matrix nm = neighbor_mean(g, x);
  Matrix out(x.rows(), 2 * x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto dst = out.row(r);
    std::copy(x.row(r).begin(), x.row(r).end(), dst.begin());
    std::copy(nm.row(r).begin(), nm.row(r).end(), dst.begin() + static_cast<std::ptrdiff_t>(x.cols()));
  }
  return out;
}

Matrix relu(Matrix x) {
  for (double& v : x.values()) v = v > 0.0 ? v : 0.0;
  return x;
}

Matrix gcn_layer(const Graph& g, const Matrix& x, const Matrix& w) {
  return relu(matmul(gcn_propagate(g, x), w));
}

Matrix sage_mean_layer(const Graph& g, const Matrix& x, const Matrix& w) {
  return relu(matmul(sage_concat(g, x), w));
}

namespace {

Matrix normalize_rows(const Matrix& x, std::vector<double>& norms) {
  Matrix out = x;
  norms.assign(x.rows(), 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double s = 0.0;
    for (double v : x.row(r)) s += v * v;
    norms[r] = std::sqrt(s);
    if (norms[r] > 0.0)
      for (double& v : out.row(r)) v /= norms[r];
  }
  return out;
}

std::vector<double> readout_with_argmax(const Matrix& x, std::vector<std::size_t>& argmax) {
  if (x.rows() == 0) throw ShapeError("layer readout of an empty layer");
  const std::size_t f = x.cols();
  std::vector<double> out(2 * f, 0.0);
  argmax.assign(f, 0);
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < f; ++c) out[c] += x(r, c);
  for (std::size_t c = 0; c < f; ++c) {
    out[c] /= static_cast<double>(x.rows());
    double best = x(0, c);
    for (std::size_t r = 1; r < x.rows(); ++r) {
      if (x(r, c) > best) {
        best = x(r, c);
        argmax[c] = r;
      }
    }
    out[f + c] = best;
  }
  return out;
}

}  // namespace

Matrix l2_normalize_rows(const Matrix& x) {
  std::vector<double> norms;
  return normalize_rows(x, norms);
}

std::vector<double> layer_readout(const Matrix& x) {
  std::vector<std::size_t> argmax;
  return readout_with_argmax(x, argmax);
}

PoolingPlan make_plan(const Hierarchy& h) {
  PoolingPlan plan;
  plan.graphs[0] = h.levels.at(0).graph;
  for (std::size_t l = 0; l < kPoolLayers; ++l) {
    const Graph& g = plan.graphs[l];
    const bool pooled = l + 1 < h.depth() && h.levels[l].assignment.has_value();
    plan.pools[l] = pooled ? PoolMatrix(*h.levels[l].assignment, g.node_count())
                           : PoolMatrix::identity(g.node_count());
    plan.graphs[l + 1] = pooled ? h.levels[l + 1].graph : g;
  }
  return plan;
}

PoolingPlan make_plan(const Graph& g) {
  PoolingPlan plan;
  plan.graphs[0] = g;
  for (std::size_t l = 0; l < kPoolLayers; ++l) {
    const Graph& cur = plan.graphs[l];
    if (cur.edge_count() == 0) {
      plan.pools[l] = PoolMatrix::identity(cur.node_count());
      plan.graphs[l + 1] = cur;
      continue;
    }
    PoolStep step = pool_once(cur);
    plan.pools[l] = PoolMatrix(step.assignment, cur.node_count());
    plan.graphs[l + 1] = std::move(step.coarsened);
  }
  return plan;
}

std::vector<double> softmax(std::span<const double> scores) {
  std::vector<double> p(scores.begin(), scores.end());
  if (p.empty()) return p;
  const double top = *std::max_element(p.begin(), p.end());
  double z = 0.0;
  for (double& v : p) {
    v = std::exp(v - top);
    z += v;
  }
  for (double& v : p) v /= z;
  return p;
}

std::vector<double> replay_scores(const Params& params, const Tape& tape) {
  const Matrix& w = params.head_weight;
  if (tape.head_input.size() != w.rows()) throw ShapeError("tape does not match head weights");
  std::vector<double> scores = params.head_bias;
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t c = 0; c < w.cols(); ++c) scores[c] += tape.head_input[i] * w(i, c);
  return scores;
}

ForwardResult forward(const ModelConfig& cfg, const Params& params, const PoolingPlan& plan,
                      const Matrix& x) {
  if (x.rows() != plan.graphs[0].node_count()) {
    throw ShapeError("features have " + std::to_string(x.rows()) + " rows for " +
                     std::to_string(plan.graphs[0].node_count()) + " nodes");
  }
  ForwardResult res;
  Tape& tape = res.tape;
  Matrix h = x;
  for (std::size_t l = 0; l < kConvLayers; ++l) {
    LayerTape& t = tape.layers[l];
    const Graph& g = plan.graphs[l];
    t.input = std::move(h);
    t.aggregated = cfg.conv == ConvType::kGcn ? gcn_propagate(g, t.input) : sage_concat(g, t.input);
    t.pre_activation = matmul(t.aggregated, params.conv[l]);
    t.activation = relu(t.pre_activation);
    t.normalized = normalize_rows(t.activation, t.norms);
    t.readout = readout_with_argmax(t.normalized, t.argmax);
    tape.head_input.insert(tape.head_input.end(), t.readout.begin(), t.readout.end());
    if (l < kPoolLayers) h = plan.pools[l].apply(t.normalized);
  }
  tape.scores = replay_scores(params, tape);
  tape.probabilities = softmax(tape.scores);
  res.scores = tape.scores;
  res.probabilities = tape.probabilities;
  return res;
}

ForwardResult forward(const ModelConfig& cfg, const Params& params, const Graph& g,
                      const Matrix& x) {
  return forward(cfg, params, make_plan(g), x);
}

LossAndGrad loss_and_grad(const ModelConfig& cfg, const Params& params, const PoolingPlan& plan,
                          const Matrix& x, std::size_t label) {
  if (label >= params.head_bias.size()) throw ShapeError("label out of range");
  const ForwardResult fwd = forward(cfg, params, plan, x);
  const Tape& tape = fwd.tape;

  LossAndGrad out;
  out.probabilities = fwd.probabilities;
  const double top = *std::max_element(tape.scores.begin(), tape.scores.end());
  double z = 0.0;
  for (double s : tape.scores) z += std::exp(s - top);
  out.loss = top + std::log(z) - tape.scores[label];

  out.grads = Params::zeros_like(cfg);
  Params& gr = out.grads;

  std::vector<double> dscores = fwd.probabilities;
  dscores[label] -= 1.0;
  gr.head_bias = dscores;
  const Matrix& hw = params.head_weight;
  std::vector<double> dhead(hw.rows(), 0.0);
  for (std::size_t i = 0; i < hw.rows(); ++i) {
    for (std::size_t c = 0; c < hw.cols(); ++c) {
      gr.head_weight(i, c) = tape.head_input[i] * dscores[c];
      dhead[i] += hw(i, c) * dscores[c];
    }
  }

  Matrix dinput;  // gradient w.r.t. the input of the layer above
  for (std::size_t li = kConvLayers; li-- > 0;) {
    const LayerTape& t = tape.layers[li];
    const Graph& g = plan.graphs[li];
    const std::size_t rows = t.normalized.rows();
    const std::size_t f = t.normalized.cols();

    Matrix dnorm = li < kPoolLayers ? plan.pools[li].apply_transpose(dinput) : Matrix(rows, f);
    const std::size_t offset = li * 2 * f;
    for (std::size_t c = 0; c < f; ++c) {
      const double dmean = dhead[offset + c] / static_cast<double>(rows);
      for (std::size_t r = 0; r < rows; ++r) dnorm(r, c) += dmean;
      dnorm(t.argmax[c], c) += dhead[offset + f + c];
    }

    // d(a / |a|) = (I - y y^T) / |a|; zero rows were passed through unchanged.
    Matrix dpre(rows, f);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto y = t.normalized.row(r);
      const auto dy = dnorm.row(r);
      double proj = 0.0;
      if (t.norms[r] > 0.0)
        for (std::size_t c = 0; c < f; ++c) proj += y[c] * dy[c];
      for (std::size_t c = 0; c < f; ++c) {
        const double da = t.norms[r] > 0.0 ? (dy[c] - y[c] * proj) / t.norms[r] : dy[c];
        dpre(r, c) = t.pre_activation(r, c) > 0.0 ? da : 0.0;
      }
    }

    gr.conv[li] = matmul_tn(t.aggregated, dpre);
    if (li == 0) break;
    const Matrix dagg = matmul_nt(dpre, params.conv[li]);
    if (cfg.conv == ConvType::kGcn) {
      dinput = gcn_propagate(g, dagg);
    } else {
      const std::size_t fin = t.input.cols();
      Matrix dself(rows, fin);
      Matrix dneigh(rows, fin);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < fin; ++c) {
          dself(r, c) = dagg(r, c);
          dneigh(r, c) = dagg(r, fin + c);
        }
      }
      const Matrix back = neighbor_mean_transpose(g, dneigh);
      for (std::size_t i = 0; i < dself.size(); ++i) dself.values()[i] += back.values()[i];
      dinput = std::move(dself);
    }
  }
  return out;
}

Matrix degree_one_hot(const Graph& g, std::size_t width) {
  if (width == 0) throw ShapeError("degree one-hot needs at least one column");
  Matrix out(g.node_count(), width);
  for (NodeId u = 0; u < g.node_count(); ++u) out(u, std::min(g.degree(u), width - 1)) = 1.0;
  return out;
}

std::vector<Sample> clique_cycle_dataset(std::size_t n_samples, std::uint64_t seed) {
  constexpr std::size_t kWidth = 12;
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  out.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const std::size_t label = i % 2;
    const std::size_t n = 5 + gen::below(rng, 8);
    const Graph g = label == 0 ? gen::complete(n) : gen::cycle(n);
    out.push_back({make_plan(g), degree_one_hot(g, kWidth), label});
  }
  return out;
}

}  // namespace cliquepool::nn
