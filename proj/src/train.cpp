#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cliquepool/error.hpp"
#include "cliquepool/generators.hpp"
#include "cliquepool/model.hpp"

namespace cliquepool::nn {

Adam::Adam(const Params& shape, Options options) : opt_(options), m_(shape), v_(shape) {
  for (auto t : m_.tensors()) std::fill(t.begin(), t.end(), 0.0);
  for (auto t : v_.tensors()) std::fill(t.begin(), t.end(), 0.0);
}

void Adam::step(Params& params, const Params& grads) {
  ++t_;
  const double c1 = 1.0 - std::pow(opt_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(opt_.beta2, static_cast<double>(t_));
  auto theta = params.tensors();
  const auto grad = grads.tensors();
  auto m = m_.tensors();
  auto v = v_.tensors();
  const std::size_t bias_tensor = theta.size() - 1;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double decay = k == bias_tensor ? 0.0 : opt_.weight_decay;
    for (std::size_t i = 0; i < theta[k].size(); ++i) {
      const double g = grad[k][i] + decay * theta[k][i];
      m[k][i] = opt_.beta1 * m[k][i] + (1.0 - opt_.beta1) * g;
      v[k][i] = opt_.beta2 * v[k][i] + (1.0 - opt_.beta2) * g * g;
      theta[k][i] -= opt_.lr * (m[k][i] / c1) / (std::sqrt(v[k][i] / c2) + opt_.eps);
    }
  }
}

namespace {

std::size_t predicted(const std::vector<double>& probs) {
  return static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

}  // namespace

Evaluation evaluate(const ModelConfig& cfg, const Params& params, const std::vector<Sample>& data) {
  if (data.empty()) return {};
  std::vector<double> losses(data.size());
  std::vector<int> correct(data.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(data.size()); ++i) {
    const Sample& s = data[static_cast<std::size_t>(i)];
    const ForwardResult f = forward(cfg, params, s.plan, s.features);
    losses[static_cast<std::size_t>(i)] = -std::log(std::max(f.probabilities[s.label], 1e-300));
    correct[static_cast<std::size_t>(i)] = predicted(f.probabilities) == s.label;
  }
  Evaluation e;
  for (std::size_t i = 0; i < data.size(); ++i) {
    e.loss += losses[i];
    e.accuracy += correct[i];
  }
  e.loss /= static_cast<double>(data.size());
  e.accuracy /= static_cast<double>(data.size());
  return e;
}

TrainResult train(const ModelConfig& cfg, const std::vector<Sample>& data,
                  const TrainOptions& options, const EpochCallback& on_epoch) {
  if (data.empty()) throw PreconditionError("training needs at least one sample");
  TrainResult result;
  result.params = init_params(cfg);
  Adam adam(result.params, options.adam);

  const std::size_t batch = options.batch_size == 0 ? data.size() : options.batch_size;
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 shuffle_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

  std::vector<LossAndGrad> per_sample(batch);
  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    if (batch < data.size()) {
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[gen::below(shuffle_rng, i)]);
    }
    EpochMetrics metrics;
    metrics.epoch = epoch;
    std::size_t correct = 0;
    for (std::size_t start = 0; start < data.size(); start += batch) {
      const std::size_t count = std::min(batch, data.size() - start);
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t j = 0; j < static_cast<std::int64_t>(count); ++j) {
        const Sample& s = data[order[start + static_cast<std::size_t>(j)]];
        per_sample[static_cast<std::size_t>(j)] =
            loss_and_grad(cfg, result.params, s.plan, s.features, s.label);
      }
      // Summed in sample order so the update does not depend on thread timing.
      Params total = Params::zeros_like(cfg);
      auto acc = total.tensors();
      for (std::size_t j = 0; j < count; ++j) {
        const LossAndGrad& lg = per_sample[j];
        metrics.loss += lg.loss;
        correct += predicted(lg.probabilities) == data[order[start + j]].label;
        const auto g = lg.grads.tensors();
        for (std::size_t k = 0; k < acc.size(); ++k)
          for (std::size_t i = 0; i < acc[k].size(); ++i) acc[k][i] += g[k][i];
      }
      const double scale = 1.0 / static_cast<double>(count);
      for (auto t : acc)
        for (double& v : t) v *= scale;
      adam.step(result.params, total);
    }
    metrics.steps = adam.steps();
    metrics.loss /= static_cast<double>(data.size());
    metrics.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
    result.history.push_back(metrics);
    if (on_epoch) on_epoch(metrics);
  }
  result.steps = adam.steps();
  const Evaluation final_eval = evaluate(cfg, result.params, data);
  result.final_loss = final_eval.loss;
  result.final_accuracy = final_eval.accuracy;
  return result;
}

}  // namespace cliquepool::nn
