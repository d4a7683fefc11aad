#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "panelband/errors.hpp"
#include "panelband/grid.hpp"

namespace panelband {

enum class Kernel { Epanechnikov };

struct SmoothConfig {
  double bandwidth = 0.1;  // on the [0,1] position scale
  Kernel kernel = Kernel::Epanechnikov;
  Grid grid;
  int min_points = 2;  // required points within bandwidth of each grid point

  void validate() const {
    if (!(bandwidth > 0.0 && bandwidth <= 1.0))
      throw std::invalid_argument("SmoothConfig: bandwidth must be in (0,1]");
    if (min_points < 2)
      throw std::invalid_argument("SmoothConfig: min_points must be >= 2");
    if (grid.size() < 2)
      throw std::invalid_argument("SmoothConfig: grid not set");
  }
};

/// Rule-of-thumb default bandwidth for n_points observations on [0,1].
inline double default_bandwidth(std::size_t n_points) {
  return 1.5 * std::pow(static_cast<double>(n_points), -0.2);
}

/// Local linear kernel smoother: at each grid point u, the intercept of
/// the weighted least-squares line fit of value on (position - u) with
/// Epanechnikov weights K(t) = 0.75 (1 - t^2) on |t| <= 1. Exact for
/// affine signals. Points are (position, value) with positions in [0,1].
inline Curve local_linear_smooth(
    const std::vector<std::pair<double, double>>& points,
    const SmoothConfig& cfg) {
  cfg.validate();
  const int G = cfg.grid.size();
  Curve out(G);
  for (int g = 0; g < G; ++g) {
    const double u = cfg.grid[g];
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    int in_window = 0;
    for (const auto& [x, y] : points) {
      const double d = x - u;
      const double t = d / cfg.bandwidth;
      if (std::abs(t) > 1.0) continue;
      ++in_window;
      const double w = 0.75 * (1.0 - t * t);
      s0 += w;
      s1 += w * d;
      s2 += w * d * d;
      t0 += w * y;
      t1 += w * d * y;
    }
    if (in_window < cfg.min_points)
      throw SparseDataError("local_linear_smooth: only " +
                                std::to_string(in_window) +
                                " points within bandwidth, need " +
                                std::to_string(cfg.min_points),
                            u);
    const double det = s0 * s2 - s1 * s1;
    if (det > 1e-12 * std::max(s0 * s2, s1 * s1)) {
      out[g] = (s2 * t0 - s1 * t1) / det;
    } else {
      // Degenerate design (all in-window points at one position): local
      // constant fit.
      out[g] = t0 / s0;
    }
  }
  return out;
}

}  // namespace panelband
