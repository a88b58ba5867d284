#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cliquepool/coarsen.hpp"
#include "cliquepool/graph.hpp"
#include "cliquepool/hierarchy.hpp"
#include "cliquepool/matrix.hpp"

// Graph classifier with two conv+pool blocks and a final conv:
//
//   conv1 -> l2 -> readout1 -> pool1 -> conv2 -> l2 -> readout2 -> pool2
//         -> conv3 -> l2 -> readout3 -> [readout1|readout2|readout3] -> linear
//
// Pools are mean clique pools taken from a precomputed hierarchy and carry no
// parameters. Readouts are column means followed by column maxima.
namespace cliquepool::nn {

enum class ConvType { kGcn, kSageMean };

ConvType parse_conv(const std::string& s);
std::string to_string(ConvType c);

struct ModelConfig {
  ConvType conv = ConvType::kGcn;
  std::size_t in_features = 1;
  std::size_t hidden = 64;
  std::size_t n_classes = 2;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kConvLayers = 3;
inline constexpr std::size_t kPoolLayers = 2;

struct Params {
  std::array<Matrix, kConvLayers> conv;  // (in or 2*in for sage) x hidden
  Matrix head_weight;                    // 2 * hidden * kConvLayers x classes
  std::vector<double> head_bias;         // classes

  /// Trainable tensors in a fixed order: conv1..3, head weight, head bias.
  std::vector<std::span<double>> tensors();
  std::vector<std::span<const double>> tensors() const;
  std::size_t count() const;
  /// Pooling layers own no tensors.
  static constexpr std::size_t pooling_count() { return 0; }

  /// Zeroed parameters with the shapes implied by `cfg`.
  static Params zeros_like(const ModelConfig& cfg);

  friend bool operator==(const Params&, const Params&) = default;
};

/// Glorot-uniform weights drawn from cfg.seed, zero bias.
Params init_params(const ModelConfig& cfg);

/// D^-1/2 (A + I) D^-1/2 x with D the degree of A + I. Symmetric, so it is
/// also its own transpose.
Matrix gcn_propagate(const Graph& g, const Matrix& x);
/// Row v: mean of x over the neighbors of v, zero for isolated nodes.
Matrix neighbor_mean(const Graph& g, const Matrix& x);
Matrix neighbor_mean_transpose(const Graph& g, const Matrix& dy);
/// [x | neighbor_mean(x)]
Matrix sage_concat(const Graph& g, const Matrix& x);

Matrix relu(Matrix x);
/// relu(gcn_propagate(g, x) * w)
Matrix gcn_layer(const Graph& g, const Matrix& x, const Matrix& w);
/// relu([x | neighbor_mean(x)] * w)
Matrix sage_mean_layer(const Graph& g, const Matrix& x, const Matrix& w);

/// Each row divided by its Euclidean norm; zero rows unchanged.
Matrix l2_normalize_rows(const Matrix& x);

/// Column means followed by column maxima (length 2F). Throws ShapeError on an
/// empty matrix.
std::vector<double> layer_readout(const Matrix& x);

/// Graphs and mean-pool operators consumed by the fixed architecture. A
/// hierarchy that collapses before the second pool is padded with identity
/// pools on the collapsed graph.
struct PoolingPlan {
  std::array<Graph, kConvLayers> graphs;
  std::array<PoolMatrix, kPoolLayers> pools;
};

PoolingPlan make_plan(const Hierarchy& h);
PoolingPlan make_plan(const Graph& g);

struct LayerTape {
  Matrix input;
  Matrix aggregated;      // gcn_propagate(input) or sage_concat(input)
  Matrix pre_activation;  // aggregated * weight
  Matrix activation;      // relu
  std::vector<double> norms;
  Matrix normalized;
  std::vector<double> readout;
  std::vector<std::size_t> argmax;  // row chosen for every column maximum
};

struct Tape {
  std::array<LayerTape, kConvLayers> layers;
  std::vector<double> head_input;
  std::vector<double> scores;
  std::vector<double> probabilities;
};

struct ForwardResult {
  std::vector<double> scores;         // pre-softmax class scores
  std::vector<double> probabilities;  // softmax(scores)
  Tape tape;
};

ForwardResult forward(const ModelConfig& cfg, const Params& params, const PoolingPlan& plan,
                      const Matrix& x);
ForwardResult forward(const ModelConfig& cfg, const Params& params, const Graph& g,
                      const Matrix& x);

/// Recomputes the class scores from the head input recorded on the tape.
std::vector<double> replay_scores(const Params& params, const Tape& tape);

std::vector<double> softmax(std::span<const double> scores);

struct LossAndGrad {
  double loss = 0.0;
  Params grads;
  std::vector<double> probabilities;
};

/// Softmax cross-entropy against `label` and its reverse-mode gradient.
LossAndGrad loss_and_grad(const ModelConfig& cfg, const Params& params,
                          const PoolingPlan& plan, const Matrix& x, std::size_t label);

struct Sample {
  PoolingPlan plan;
  Matrix features;
  std::size_t label = 0;
};

/// Adam with L2 weight decay folded into the gradient (bias excluded).
class Adam {
 public:
  struct Options {
    double lr = 1e-4;
    double weight_decay = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
  };

  Adam(const Params& shape, Options options);
  void step(Params& params, const Params& grads);
  std::size_t steps() const noexcept { return t_; }

 private:
  Options opt_;
  Params m_;
  Params v_;
  std::size_t t_ = 0;
};

struct TrainOptions {
  std::size_t epochs = 1;
  std::size_t batch_size = 0;  // 0: full batch
  Adam::Options adam{};
};

struct EpochMetrics {
  std::size_t epoch = 0;
  std::size_t steps = 0;
  double loss = 0.0;      // mean over the epoch's samples, before each update
  double accuracy = 0.0;  // fraction predicted correctly during the epoch
};

struct TrainResult {
  Params params;
  std::vector<EpochMetrics> history;
  std::size_t steps = 0;
  double final_loss = 0.0;
  double final_accuracy = 0.0;
};

using EpochCallback = std::function<void(const EpochMetrics&)>;

/// Deterministic for a fixed cfg.seed: per-sample gradients are computed in
/// parallel and summed in sample order.
TrainResult train(const ModelConfig& cfg, const std::vector<Sample>& data,
                  const TrainOptions& options, const EpochCallback& on_epoch = {});

struct Evaluation {
  double loss = 0.0;
  double accuracy = 0.0;
};
Evaluation evaluate(const ModelConfig& cfg, const Params& params, const std::vector<Sample>& data);

/// One-hot node degree, `width` columns; degrees >= width land in the last column.
Matrix degree_one_hot(const Graph& g, std::size_t width);

/// Alternating K_n (label 0) and C_n (label 1), n uniform in [5, 12], with
/// degree one-hot features of width 12.
std::vector<Sample> clique_cycle_dataset(std::size_t n_samples, std::uint64_t seed);

}  // namespace cliquepool::nn
