#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "panelband/block.hpp"
#include "panelband/errors.hpp"
#include "panelband/moments.hpp"
#include "panelband/panel.hpp"
#include "panelband/parallel.hpp"
#include "panelband/rng.hpp"

namespace panelband {

struct BootstrapConfig {
  int m = 0;           // block size; 0 = caller must fill (e.g. via MV)
  int B = 500;         // bootstrap replicates
  double alpha = 0.05;
  std::uint64_t seed = 0;

  void validate(int n) const {
    check_block_size(m, n);
    if (B < 1) throw std::invalid_argument("BootstrapConfig: B must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("BootstrapConfig: alpha must be in (0,1)");
  }
};

/// Pointwise scales at or below floor_for() are degenerate: the
/// self-normalized ratio there is excluded from sups (contributes 0).
inline double scale_floor(const Matrix& scale) {
  return 1e-10 * scale.array().abs().maxCoeff();
}

/// 1-based order-statistic index floor((1-alpha)B), clamped to [1, B].
inline int quantile_index(double alpha, int B) {
  const int k = static_cast<int>(std::floor((1.0 - alpha) * B));
  return std::clamp(k, 1, B);
}

/// The floor((1-alpha)B)-th smallest replicate.
inline double order_statistic_quantile(std::vector<double> replicates,
                                       double alpha) {
  const int B = static_cast<int>(replicates.size());
  if (B < 1) throw std::invalid_argument("quantile of empty replicate list");
  const int k = quantile_index(alpha, B);
  std::nth_element(replicates.begin(), replicates.begin() + (k - 1),
                   replicates.end());
  return replicates[k - 1];
}

/// One multiplier draw: Phi(u) = sqrt(m/(n-m)) sum_i [T_{i,m}(u) - ghat(u)] N_i,
/// returned as an r x G matrix. The blocks must come from this panel.
inline Matrix multiplier_draw(const PanelSeries& panel, const BlockMeans& blocks,
                              const Vector& multipliers) {
  const int n = panel.n();
  const Eigen::Index nm = blocks.data.rows();
  if (multipliers.size() != nm)
    throw std::invalid_argument("multiplier_draw: need n-m multipliers");
  const Vector mean = panel.data().colwise().mean();
  const double factor =
      std::sqrt(static_cast<double>(blocks.m) / static_cast<double>(n - blocks.m));
  Vector phi = blocks.data.transpose() * multipliers;
  phi -= multipliers.sum() * mean;
  return unflatten_rg(factor * phi, panel.r(), panel.G());
}

namespace detail {

// Replicates are processed in fixed tiles so the matrix product feeding
// each replicate has a shape that depends only on B, never on the thread
// count; together with per-replicate multiplier streams this makes the
// replicate list bit-identical for any number of workers.
constexpr int kReplicateTile = 64;

/// Compute B replicate values. For replicate b, multipliers come from
/// stream (seed, b, Multipliers); the row factor * N_b^T * centered is
/// handed to reduce(row) -> double.
template <typename Reducer>
std::vector<double> multiplier_replicates(const Matrix& centered, double factor,
                                          std::uint64_t seed, int B, int threads,
                                          Reducer&& reduce) {
  const Eigen::Index nm = centered.rows();
  std::vector<double> replicates(B);
  const long n_tiles = (B + kReplicateTile - 1) / kReplicateTile;
  parallel_for(threads, n_tiles, [&](long tile) {
    const int b0 = static_cast<int>(tile) * kReplicateTile;
    const int nb = std::min(kReplicateTile, B - b0);
    Matrix mult(nb, nm);
    for (int b = 0; b < nb; ++b) {
      RngStream rng(seed, static_cast<std::uint64_t>(b0 + b),
                    StreamPurpose::Multipliers);
      for (Eigen::Index i = 0; i < nm; ++i) mult(b, i) = rng.normal();
    }
    const Matrix phi = factor * (mult * centered);  // nb x (r*G)
    for (int b = 0; b < nb; ++b) replicates[b0 + b] = reduce(phi.row(b));
  });
  return replicates;
}

}  // namespace detail

struct SupQuantileResult {
  double quantile = 0.0;
  std::vector<double> replicates;
};

/// Multiplier-bootstrap distribution of the scaled sup statistic
///   max_j sup_u |Phi_{m,j}(u)| / scale_j(u)
/// and its floor((1-alpha)B) order-statistic quantile. The scale is an
/// r x G matrix (normally the panel's pointwise sd).
inline SupQuantileResult bootstrap_sup_quantile(const PanelSeries& panel,
                                                const BootstrapConfig& cfg,
                                                const Matrix& scale,
                                                int threads = 1) {
  const int n = panel.n();
  cfg.validate(n);
  if (scale.rows() != panel.r() || scale.cols() != panel.G())
    throw std::invalid_argument("bootstrap_sup_quantile: scale must be r x G");
  const double floor = scale_floor(scale);
  const Vector flat_scale = flatten_rg(scale);
  Vector inv_scale(flat_scale.size());
  bool any_positive = false;
  for (Eigen::Index c = 0; c < flat_scale.size(); ++c) {
    if (flat_scale[c] > floor) {
      inv_scale[c] = 1.0 / flat_scale[c];
      any_positive = true;
    } else {
      inv_scale[c] = 0.0;  // degenerate point: excluded from the sup
    }
  }
  if (!any_positive)
    throw DegenerateScaleError(
        "bootstrap_sup_quantile: scale is degenerate everywhere");

  const Matrix centered = centered_block_means(panel, cfg.m);
  const double factor = std::sqrt(static_cast<double>(cfg.m) /
                                  static_cast<double>(n - cfg.m));
  SupQuantileResult out;
  out.replicates = detail::multiplier_replicates(
      centered, factor, cfg.seed, cfg.B, threads,
      [&](const auto& row) -> double {
        return (row.transpose().array() * inv_scale.array()).abs().maxCoeff();
      });
  out.quantile = order_statistic_quantile(out.replicates, cfg.alpha);
  return out;
}

}  // namespace panelband
