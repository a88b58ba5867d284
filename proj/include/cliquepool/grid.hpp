#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cliquepool/coarsen.hpp"
#include "cliquepool/graph.hpp"
#include "cliquepool/matrix.hpp"

namespace cliquepool::grid {

/// 8-connected pixel lattice. Node id = y * width + x.
struct GridSpec {
  std::size_t width = 1;
  std::size_t height = 1;
};

Graph make_chain(std::size_t length);
Graph make_grid(const GridSpec& spec);

/// Length of a chain after `n_pools` clique-pooling steps: length - (2^n - 1).
/// Throws PreconditionError when the chain would have collapsed earlier.
std::size_t chain_length_after(std::size_t length, std::size_t n_pools);

/// Window side of the clique pools at levels 1..n: 2, 3, 5, 9, ..., 2^(n-1)+1.
struct PoolSchedule {
  std::vector<std::size_t> sizes;
  std::size_t stride = 1;
};

PoolSchedule pool_schedule(std::size_t n_pools);

/// Stride-1 sliding-window pooling of a width x height image with one row
/// per pixel (row-major) and one column per channel.
Matrix window_pool_oracle(const Matrix& image, std::size_t width, std::size_t height,
                          std::size_t window, Readout readout);

struct LevelCheck {
  std::size_t level = 0;            // 1-based pooling level
  std::size_t expected_window = 0;  // from pool_schedule
  std::size_t observed_window = 0;  // side of the level's clique pools
  std::size_t cumulative_window = 0;
  bool window_ok = false;
  bool features_ok = false;
  bool positions_ok = false;
  std::string first_mismatch;  // empty when the level passes

  bool ok() const noexcept { return window_ok && features_ok && positions_ok; }
};

struct GridReport {
  std::vector<LevelCheck> levels;
  bool ok() const noexcept;
};

/// Pools the grid `n_levels` times with max readout and compares every level
/// against stride-1 sliding-window max pooling with window 2^level.
/// Throws PreconditionError when the grid is too small for `n_levels`.
GridReport verify_grid_equivalence(const GridSpec& spec, const Matrix& features,
                                   std::size_t n_levels);

}  // namespace cliquepool::grid
