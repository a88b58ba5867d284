#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "cliquepool/error.hpp"
#include "cliquepool/generators.hpp"
#include "cliquepool/grid.hpp"
#include "cliquepool/hierarchy.hpp"

namespace cliquepool {
namespace {

TEST(MakeGrid, Shapes) {
  EXPECT_EQ(grid::make_chain(3).degrees(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(grid::make_grid({2, 2}), gen::complete(4));
  const Graph g = grid::make_grid({5, 4});
  EXPECT_EQ(g.node_count(), 20u);
  // Interior pixels see all eight neighbours, corners three.
  EXPECT_EQ(g.degree(1 * 5 + 1), 8u);
  EXPECT_EQ(g.degree(0), 3u);
  EXPECT_TRUE(g.has_edge(0, 6));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(ChainLength, Law) {
  for (std::size_t length = 2; length <= 64; ++length) {
    Graph g = grid::make_chain(length);
    for (std::size_t n = 1; (std::size_t{1} << n) <= length; ++n) {
      g = pool_once(g).coarsened;
      ASSERT_EQ(g.node_count(), length - ((std::size_t{1} << n) - 1)) << length << " " << n;
      EXPECT_EQ(grid::chain_length_after(length, n), g.node_count());
    }
  }
  EXPECT_EQ(grid::chain_length_after(32, 5), 1u);
  EXPECT_THROW(grid::chain_length_after(32, 6), PreconditionError);
}

TEST(PoolSchedule, Sizes) {
  EXPECT_EQ(grid::pool_schedule(5).sizes, (std::vector<std::size_t>{2, 3, 5, 9, 17}));
  EXPECT_EQ(grid::pool_schedule(5).stride, 1u);
  EXPECT_TRUE(grid::pool_schedule(0).sizes.empty());
}

// Along an axis, level i connects window origins up to 2^i pixels apart.
TEST(ReachDoubling, Chain) {
  Graph g = grid::make_chain(64);
  for (std::size_t level = 1; level <= 4; ++level) {
    g = pool_once(g).coarsened;
    const std::size_t reach = std::size_t{1} << level;
    const auto nb = g.neighbors(0);
    ASSERT_EQ(nb.size(), reach);
    EXPECT_EQ(nb.back(), reach);
  }
}

TEST(ReachDoubling, Grid) {
  const std::size_t side = 16;
  Graph g = grid::make_grid({side, side});
  for (std::size_t level = 1; level <= 3; ++level) {
    g = pool_once(g).coarsened;
    const std::size_t w = side - (std::size_t{1} << level) + 1;
    ASSERT_EQ(g.node_count(), w * w);
    const std::size_t reach = std::size_t{1} << level;
    const NodeId origin = 0;
    for (std::size_t d = 1; d <= reach + 1 && d < w; ++d) {
      EXPECT_EQ(g.has_edge(origin, static_cast<NodeId>(d)), d <= reach) << "level " << level << " dx " << d;
      EXPECT_EQ(g.has_edge(origin, static_cast<NodeId>(d * w)), d <= reach) << "level " << level << " dy " << d;
    }
  }
}

TEST(FourByFour, NineThenOne) {
  const Graph g = grid::make_grid({4, 4});
  const PoolStep s = pool_once(g);
  EXPECT_EQ(s.assignment.pool_count(), 9u);
  for (const auto& p : s.assignment.pools) EXPECT_EQ(p.members.size(), 4u);
  EXPECT_EQ(s.assignment.node_to_pools[1 * 4 + 1].size(), 4u);
  EXPECT_EQ(s.coarsened, gen::complete(9));
  EXPECT_EQ(pool_once(s.coarsened).coarsened.node_count(), 1u);
}

TEST(WindowOracle, Hand) {
  const Matrix img = Matrix::from_rows({{1}, {2}, {3}, {4}});
  EXPECT_EQ(grid::window_pool_oracle(img, 2, 2, 2, Readout::kMax), Matrix::from_rows({{4}}));
  EXPECT_EQ(grid::window_pool_oracle(img, 2, 2, 2, Readout::kMean), Matrix::from_rows({{2.5}}));
  EXPECT_EQ(grid::window_pool_oracle(img, 2, 2, 1, Readout::kMax), img);
  EXPECT_THROW(grid::window_pool_oracle(img, 2, 2, 3, Readout::kMax), PreconditionError);
}

TEST(WindowOracle, MatchesBruteForce) {
  std::mt19937_64 rng(31);
  const std::size_t w = 7;
  const std::size_t h = 5;
  const Matrix img = gen::random_matrix(w * h, 2, rng);
  const Matrix out = grid::window_pool_oracle(img, w, h, 3, Readout::kMax);
  const std::size_t ow = w - 2;
  ASSERT_EQ(out.rows(), ow * (h - 2));
  for (std::size_t y = 0; y + 3 <= h; ++y)
    for (std::size_t x = 0; x + 3 <= w; ++x)
      for (std::size_t c = 0; c < 2; ++c) {
        double m = -1e300;
        for (std::size_t dy = 0; dy < 3; ++dy)
          for (std::size_t dx = 0; dx < 3; ++dx) m = std::max(m, img((y + dy) * w + x + dx, c));
        EXPECT_EQ(out(y * ow + x, c), m);
      }
}

TEST(GridEquivalence, SquareAndRectangular) {
  std::mt19937_64 rng(32);
  for (auto spec : {grid::GridSpec{8, 8}, grid::GridSpec{12, 9}, grid::GridSpec{5, 17}}) {
    std::size_t levels = 0;
    while ((std::size_t{2} << levels) <= std::min(spec.width, spec.height)) ++levels;
    const Matrix x = gen::random_matrix(spec.width * spec.height, 3, rng);
    const auto report = grid::verify_grid_equivalence(spec, x, levels);
    ASSERT_EQ(report.levels.size(), levels);
    for (const auto& lv : report.levels) {
      EXPECT_TRUE(lv.ok()) << spec.width << "x" << spec.height << " level " << lv.level << ": "
                           << lv.first_mismatch;
      EXPECT_EQ(lv.observed_window, lv.expected_window);
      EXPECT_EQ(lv.cumulative_window, std::size_t{1} << lv.level);
    }
  }
}

TEST(GridEquivalence, TooSmall) {
  EXPECT_THROW(grid::verify_grid_equivalence({4, 4}, Matrix(16, 1), 3), PreconditionError);
}

}  // namespace
}  // namespace cliquepool
