#pragma once

#include <stdexcept>
#include <utility>

#include "panelband/panel.hpp"

namespace panelband {

/// Standardized partial sum S_{n,j}(u_g) = n^{-1/2} sum_i X_{i,j}(u_g),
/// returned as an r x G matrix.
inline Matrix standardized_sum(const PanelSeries& panel) {
  const Vector colsum = panel.data().colwise().sum();
  return unflatten_rg(colsum / std::sqrt(static_cast<double>(panel.n())),
                      panel.r(), panel.G());
}

struct MeanSd {
  Matrix mean;  // r x G pointwise sample mean
  Matrix sd;    // r x G pointwise sd, divide-by-n variance
};

/// Pointwise mean and the divide-by-n standard deviation of each panel.
inline MeanSd sample_mean_sd(const PanelSeries& panel) {
  const int n = panel.n();
  if (n < 2) throw std::invalid_argument("sample_mean_sd: need n >= 2");
  const Vector mean = panel.data().colwise().mean();
  const Vector var =
      (panel.data().rowwise() - mean.transpose()).array().square().colwise().sum() /
      static_cast<double>(n);
  return MeanSd{unflatten_rg(mean, panel.r(), panel.G()),
                unflatten_rg(var.array().sqrt(), panel.r(), panel.G())};
}

/// Grid realization of max_j sup_u |.|.
inline double sup_abs_max(const Matrix& values) {
  if (values.size() == 0) return 0.0;
  return values.array().abs().maxCoeff();
}

}  // namespace panelband
