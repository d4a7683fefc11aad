#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "panelband/bootstrap.hpp"
#include "panelband/moments.hpp"
#include "panelband/panel.hpp"

namespace panelband {

/// Joint simultaneous confidence bands for the r mean curves:
/// center +- halfwidth with halfwidth = quantile * vhat / sqrt(n).
struct BandSet {
  Matrix center;     // r x G sample mean
  Matrix halfwidth;  // r x G, everywhere >= 0
  double quantile = 0.0;
  double alpha = 0.0;
  int m_used = 0;
  int B_used = 0;

  Matrix lower() const { return center - halfwidth; }
  Matrix upper() const { return center + halfwidth; }
};

inline BandSet jscb(const PanelSeries& panel, const BootstrapConfig& cfg,
                    int threads = 1) {
  const MeanSd ms = sample_mean_sd(panel);
  const SupQuantileResult boot =
      bootstrap_sup_quantile(panel, cfg, ms.sd, threads);
  BandSet out;
  out.center = ms.mean;
  out.halfwidth =
      (boot.quantile / std::sqrt(static_cast<double>(panel.n()))) * ms.sd;
  out.quantile = boot.quantile;
  out.alpha = cfg.alpha;
  out.m_used = cfg.m;
  out.B_used = cfg.B;
  return out;
}

struct ContainmentResult {
  bool overall = false;
  std::vector<bool> per_panel;
};

/// Closed-band containment: panel j passes iff
/// lower <= candidate <= upper at every grid point.
inline ContainmentResult band_contains(const BandSet& bands,
                                       const Matrix& candidates) {
  if (candidates.rows() != bands.center.rows() ||
      candidates.cols() != bands.center.cols())
    throw std::invalid_argument("band_contains: candidate shape mismatch");
  ContainmentResult out;
  out.per_panel.assign(candidates.rows(), true);
  out.overall = true;
  for (Eigen::Index j = 0; j < candidates.rows(); ++j) {
    const bool inside =
        ((candidates.row(j) - bands.center.row(j)).array().abs() <=
         bands.halfwidth.row(j).array())
            .all();
    out.per_panel[j] = inside;
    out.overall = out.overall && inside;
  }
  return out;
}

}  // namespace panelband
