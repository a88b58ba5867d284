#include <gtest/gtest.h>

#include <omp.h>

#include <random>

#include "cliquepool/cliques.hpp"
#include "cliquepool/coarsen.hpp"
#include "cliquepool/generators.hpp"
#include "cliquepool/model.hpp"
#include "cliquepool/serial.hpp"

namespace cliquepool {
namespace {

class ThreadCounts : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(GetParam());
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

TEST_P(ThreadCounts, Distances) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 5; ++trial) {
    const Graph g = gen::random_connected(80, 0.05, rng);
    EXPECT_EQ(all_pairs_distances(g), serial::all_pairs_distances(g));
    EXPECT_EQ(pairwise_distance_sum(g), serial::pairwise_distance_sum(g));
  }
}

TEST_P(ThreadCounts, Matmul) {
  std::mt19937_64 rng(72);
  const Matrix a = gen::random_matrix(37, 19, rng);
  const Matrix b = gen::random_matrix(19, 23, rng);
  const Matrix c = gen::random_matrix(37, 23, rng);
  EXPECT_EQ(matmul(a, b), serial::matmul(a, b));
  EXPECT_EQ(matmul_tn(a, c), serial::matmul_tn(a, c));
  const Matrix d = gen::random_matrix(11, 23, rng);
  EXPECT_EQ(matmul_nt(c, d), serial::matmul_nt(c, d));
}

TEST_P(ThreadCounts, Cliques) {
  std::mt19937_64 rng(73);
  for (double p : {0.05, 0.2, 0.5}) {
    const Graph g = gen::erdos_renyi(70, p, rng);
    EXPECT_EQ(maximal_cliques(g), serial::maximal_cliques(g)) << p;
  }
}

TEST_P(ThreadCounts, Coarsening) {
  std::mt19937_64 rng(74);
  for (int trial = 0; trial < 5; ++trial) {
    const Graph g = gen::random_connected(60, 0.08, rng);
    const Assignment a = assign_pools(g, maximal_cliques(g));
    EXPECT_EQ(coarsen_graph(g, a), serial::coarsen_graph(g, a));
    const Matrix x = gen::random_matrix(60, 5, rng);
    for (Readout r : {Readout::kMean, Readout::kMax})
      EXPECT_EQ(pool_features(x, a, r), serial::pool_features(x, a, r));
  }
}

TEST_P(ThreadCounts, TrainingIsThreadIndependent) {
  const auto data = nn::clique_cycle_dataset(12, 1);
  nn::ModelConfig cfg;
  cfg.in_features = 12;
  cfg.hidden = 8;
  nn::TrainOptions opts;
  opts.epochs = 3;
  opts.batch_size = 4;
  const auto here = nn::train(cfg, data, opts);
  omp_set_num_threads(1);
  const auto single = nn::train(cfg, data, opts);
  EXPECT_EQ(here.params, single.params);
}

INSTANTIATE_TEST_SUITE_P(Threads, ThreadCounts, ::testing::Values(1, 2, 4));

}  // namespace
}  // namespace cliquepool
