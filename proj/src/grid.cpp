#include "cliquepool/grid.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "cliquepool/error.hpp"
#include "cliquepool/hierarchy.hpp"

namespace cliquepool::grid {

Graph make_chain(std::size_t length) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u + 1 < length; ++u) edges.push_back({u, u + 1});
  return build_graph(edges, length);
}

Graph make_grid(const GridSpec& spec) {
  const std::size_t w = spec.width;
  const std::size_t h = spec.height;
  std::vector<Edge> edges;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const auto u = static_cast<NodeId>(y * w + x);
      // right, lower-left, down, lower-right; the other four come from symmetry
      if (x + 1 < w) edges.push_back({u, u + 1});
      if (y + 1 < h) {
        const auto below = static_cast<NodeId>(u + w);
        edges.push_back({u, below});
        if (x > 0) edges.push_back({u, below - 1});
        if (x + 1 < w) edges.push_back({u, below + 1});
      }
    }
  }
  return build_graph(edges, w * h);
}

std::size_t chain_length_after(std::size_t length, std::size_t n_pools) {
  if (n_pools >= 63) throw PreconditionError("pool count too large");
  const std::size_t reduction = (std::size_t{1} << n_pools) - 1;
  if (length < reduction + 1) {
    throw PreconditionError("a chain of length " + std::to_string(length) +
                            " collapses before " + std::to_string(n_pools) + " pools");
  }
  return length - reduction;
}

PoolSchedule pool_schedule(std::size_t n_pools) {
  PoolSchedule s;
  for (std::size_t i = 1; i <= n_pools; ++i) s.sizes.push_back((std::size_t{1} << (i - 1)) + 1);
  return s;
}

Matrix window_pool_oracle(const Matrix& image, std::size_t width, std::size_t height,
                          std::size_t window, Readout readout) {
  if (image.rows() != width * height) {
    throw ShapeError("image has " + std::to_string(image.rows()) + " pixels, expected " +
                     std::to_string(width * height));
  }
  if (window == 0 || window > std::min(width, height)) {
    throw PreconditionError("window " + std::to_string(window) + " does not fit a " +
                            std::to_string(width) + "x" + std::to_string(height) + " image");
  }
  const std::size_t ow = width - window + 1;
  const std::size_t oh = height - window + 1;
  const std::size_t f = image.cols();
  Matrix out(ow * oh, f);
  for (std::size_t oy = 0; oy < oh; ++oy) {
    for (std::size_t ox = 0; ox < ow; ++ox) {
      for (std::size_t c = 0; c < f; ++c) {
        double acc = readout == Readout::kMax ? -std::numeric_limits<double>::infinity() : 0.0;
        for (std::size_t dy = 0; dy < window; ++dy) {
          for (std::size_t dx = 0; dx < window; ++dx) {
            const double v = image((oy + dy) * width + ox + dx, c);
            acc = readout == Readout::kMax ? std::max(acc, v) : acc + v;
          }
        }
        if (readout == Readout::kMean) acc /= static_cast<double>(window * window);
        out(oy * ow + ox, c) = acc;
      }
    }
  }
  return out;
}

bool GridReport::ok() const noexcept {
  return !levels.empty() &&
         std::all_of(levels.begin(), levels.end(), [](const LevelCheck& l) { return l.ok(); });
}

namespace {

struct Box {
  std::size_t x0, y0, x1, y1;  // inclusive
};

Box bounding_box(const std::vector<NodeId>& members, std::size_t width) {
  Box b{std::numeric_limits<std::size_t>::max(), std::numeric_limits<std::size_t>::max(), 0, 0};
  for (NodeId u : members) {
    const std::size_t x = u % width;
    const std::size_t y = u / width;
    b.x0 = std::min(b.x0, x);
    b.y0 = std::min(b.y0, y);
    b.x1 = std::max(b.x1, x);
    b.y1 = std::max(b.y1, y);
  }
  return b;
}

}  // namespace

GridReport verify_grid_equivalence(const GridSpec& spec, const Matrix& features,
                                   std::size_t n_levels) {
  if (features.rows() != spec.width * spec.height) {
    throw ShapeError("features have " + std::to_string(features.rows()) + " rows for a " +
                     std::to_string(spec.width) + "x" + std::to_string(spec.height) + " grid");
  }
  chain_length_after(spec.width, n_levels);
  chain_length_after(spec.height, n_levels);
  const PoolSchedule schedule = pool_schedule(n_levels);

  GridReport report;
  Graph current = make_grid(spec);
  Matrix feats = features;
  std::size_t w = spec.width;
  std::size_t h = spec.height;

  for (std::size_t level = 1; level <= n_levels; ++level) {
    LevelCheck check;
    check.level = level;
    check.expected_window = schedule.sizes[level - 1];
    check.cumulative_window = std::size_t{1} << level;
    std::ostringstream why;

    PoolStep step = pool_once(current, &feats, Readout::kMax);
    const auto& pools = step.assignment.pools;

    // (a) every pool is a full square window of the expected side
    check.window_ok = true;
    for (std::size_t p = 0; p < pools.size() && check.window_ok; ++p) {
      const Box b = bounding_box(pools[p].members, w);
      const std::size_t sx = b.x1 - b.x0 + 1;
      const std::size_t sy = b.y1 - b.y0 + 1;
      if (p == 0) check.observed_window = sx;
      if (sx != check.expected_window || sy != check.expected_window ||
          pools[p].members.size() != sx * sy) {
        check.window_ok = false;
        check.observed_window = sx;
        why << "level " << level << ": pool " << p << " spans " << sx << "x" << sy << " with "
            << pools[p].members.size() << " members, expected " << check.expected_window << "x"
            << check.expected_window;
      }
    }

    const std::size_t nw = w >= check.expected_window ? w - check.expected_window + 1 : 0;
    const std::size_t nh = h >= check.expected_window ? h - check.expected_window + 1 : 0;

    // (c) pooled node m sits at the window origin (m % nw, m / nw)
    check.positions_ok = check.window_ok && pools.size() == nw * nh;
    if (check.window_ok && !check.positions_ok) {
      why << "level " << level << ": " << pools.size() << " pools, expected " << nw * nh;
    }
    for (std::size_t p = 0; p < pools.size() && check.positions_ok; ++p) {
      const Box b = bounding_box(pools[p].members, w);
      if (b.x0 != p % nw || b.y0 != p / nw) {
        check.positions_ok = false;
        why << "level " << level << ": pool " << p << " has origin (" << b.x0 << ", " << b.y0
            << "), expected (" << p % nw << ", " << p / nw << ")";
      }
    }

    // (b) features equal a max pool over the cumulative window of the original image
    if (check.positions_ok) {
      const Matrix oracle = window_pool_oracle(features, spec.width, spec.height,
                                               check.cumulative_window, Readout::kMax);
      check.features_ok = oracle.rows() == step.features->rows();
      for (std::size_t r = 0; r < oracle.rows() && check.features_ok; ++r) {
        for (std::size_t c = 0; c < oracle.cols(); ++c) {
          if ((*step.features)(r, c) != oracle(r, c)) {
            check.features_ok = false;
            why << "level " << level << ": node (" << r % nw << ", " << r / nw << ") channel "
                << c << ": clique pool " << (*step.features)(r, c) << " vs window "
                << oracle(r, c);
            break;
          }
        }
      }
    }

    check.first_mismatch = why.str();
    const bool keep_going = check.positions_ok;
    report.levels.push_back(std::move(check));
    if (!keep_going) break;
    current = std::move(step.coarsened);
    feats = std::move(*step.features);
    w = nw;
    h = nh;
  }
  return report;
}

}  // namespace cliquepool::grid
