#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "panelband/block.hpp"
#include "panelband/bootstrap.hpp"
#include "panelband/panel.hpp"

namespace panelband {

inline int pair_count(int r) { return r * (r - 1) / 2; }

/// Unordered pairs (j,k), j < k, in lexicographic order.
inline std::vector<std::pair<int, int>> panel_pairs(int r) {
  std::vector<std::pair<int, int>> out;
  out.reserve(pair_count(r));
  for (int j = 0; j < r; ++j)
    for (int k = j + 1; k < r; ++k) out.emplace_back(j, k);
  return out;
}

/// W_{i,j}(u) = X_{i,j}(u) - int_0^1 X_{i,j}(v) dv: each curve centered at
/// its own trapezoid integral. Parallel mean curves become identical here.
inline PanelSeries center_within_curve(const PanelSeries& panel) {
  const Vector w = panel.grid().trapezoid_weights();
  const int G = panel.G();
  Matrix data = panel.data();
  for (Eigen::Index i = 0; i < data.rows(); ++i)
    for (int j = 0; j < panel.r(); ++j) {
      auto seg = data.row(i).segment(static_cast<Eigen::Index>(j) * G, G);
      seg.array() -= seg.dot(w);
    }
  return PanelSeries(std::move(data), panel.grid(), panel.r());
}

/// The parallelism sup statistic and its per-pair pieces.
struct ParallelismStat {
  double statistic = 0.0;  // T_n = max over pairs
  Matrix pairwise;         // r x r symmetric sup matrix, diagonal 0
  Matrix scales;           // pair_count x G sample scales vhat_{j,k}(u_g)
  Matrix sqrtn_diff;       // pair_count x G values of |S|_{n,j,k}(u_g)
};

/// T_n = max_{j<k} sup_u |S_{n,j,k}(u)| / vhat_{j,k}(u) with
/// S_{n,j,k}(u) = n^{-1/2} sum_i [W_{i,j}(u) - W_{i,k}(u)]. Points where
/// both |S| and vhat sit at the degenerate floor contribute 0.
inline ParallelismStat parallelism_statistic(const PanelSeries& panel) {
  const int n = panel.n(), r = panel.r(), G = panel.G();
  if (r < 2) throw std::invalid_argument("parallelism_statistic: need r >= 2");
  if (n < 2) throw std::invalid_argument("parallelism_statistic: need n >= 2");
  const PanelSeries W = center_within_curve(panel);
  const Vector wbar = W.data().colwise().mean();
  const Matrix wc = W.data().rowwise() - wbar.transpose();

  const auto pairs = panel_pairs(r);
  const int np = static_cast<int>(pairs.size());
  ParallelismStat out;
  out.scales.resize(np, G);
  out.sqrtn_diff.resize(np, G);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  for (int p = 0; p < np; ++p) {
    const auto [j, k] = pairs[p];
    const auto cj = wc.middleCols(static_cast<Eigen::Index>(j) * G, G);
    const auto ck = wc.middleCols(static_cast<Eigen::Index>(k) * G, G);
    out.scales.row(p) =
        ((cj - ck).array().square().colwise().sum() / n).sqrt();
    out.sqrtn_diff.row(p) =
        sqrt_n *
        (wbar.segment(static_cast<Eigen::Index>(j) * G, G) -
         wbar.segment(static_cast<Eigen::Index>(k) * G, G))
            .transpose()
            .array()
            .abs();
  }

  const double floor_v = scale_floor(out.scales);
  const double floor_s = scale_floor(out.sqrtn_diff);
  out.pairwise = Matrix::Zero(r, r);
  for (int p = 0; p < np; ++p) {
    double sup = 0.0;
    for (int g = 0; g < G; ++g) {
      const double s = out.sqrtn_diff(p, g), v = out.scales(p, g);
      if (v <= floor_v && s <= floor_s) continue;
      sup = std::max(sup, s / std::max(v, floor_v));
    }
    const auto [j, k] = pairs[p];
    out.pairwise(j, k) = out.pairwise(k, j) = sup;
    out.statistic = std::max(out.statistic, sup);
  }
  return out;
}

struct ParallelismResult {
  double statistic = 0.0;
  Matrix pairwise;          // r x r sup statistics, symmetric, diagonal 0
  double critical_value = 0.0;
  Matrix pairwise_pvalues;  // r x r, diagonal 1
  bool reject = false;
  double alpha = 0.0;
  int m_used = 0;
  int B_used = 0;
  std::vector<double> replicates;
};

/// Bootstrap test of parallel mean curves. Replicates are joint sups over
/// all pairs and grid points (family-wise control); pairwise p-values are
/// add-one Monte Carlo estimates against that same joint replicate list.
inline ParallelismResult parallelism_test(const PanelSeries& panel,
                                          const BootstrapConfig& cfg,
                                          int threads = 1) {
  const int n = panel.n(), r = panel.r(), G = panel.G();
  if (r < 2) throw std::invalid_argument("parallelism_test: need r >= 2");
  cfg.validate(n);
  const ParallelismStat stat = parallelism_statistic(panel);

  const PanelSeries W = center_within_curve(panel);
  const Matrix centered = centered_block_means(W, cfg.m);
  const double factor = std::sqrt(static_cast<double>(cfg.m) /
                                  static_cast<double>(n - cfg.m));

  const auto pairs = panel_pairs(r);
  const int np = static_cast<int>(pairs.size());
  const double floor_v = scale_floor(stat.scales);
  Matrix inv_scale = Matrix::Zero(np, G);
  for (int p = 0; p < np; ++p)
    for (int g = 0; g < G; ++g)
      if (stat.scales(p, g) > floor_v) inv_scale(p, g) = 1.0 / stat.scales(p, g);

  // Per-replicate reduction: pair differences of the per-panel multiplier
  // rows, scaled pointwise; the pair x G tensor is never materialized
  // across replicates.
  auto reduce = [&](const auto& row) -> double {
    double sup = 0.0;
    for (int p = 0; p < np; ++p) {
      const auto [j, k] = pairs[p];
      for (int g = 0; g < G; ++g) {
        const double d = std::abs(row[j * G + g] - row[k * G + g]) * inv_scale(p, g);
        if (d > sup) sup = d;
      }
    }
    return sup;
  };

  ParallelismResult out;
  out.replicates = detail::multiplier_replicates(centered, factor, cfg.seed,
                                                 cfg.B, threads, reduce);
  out.statistic = stat.statistic;
  out.pairwise = stat.pairwise;
  out.critical_value = order_statistic_quantile(out.replicates, cfg.alpha);
  out.reject = out.statistic > out.critical_value;
  out.alpha = cfg.alpha;
  out.m_used = cfg.m;
  out.B_used = cfg.B;
  out.pairwise_pvalues = Matrix::Ones(r, r);
  for (const auto& [j, k] : pairs) {
    long count = 0;
    for (double rep : out.replicates)
      if (rep >= out.pairwise(j, k)) ++count;
    const double p = static_cast<double>(1 + count) / (cfg.B + 1);
    out.pairwise_pvalues(j, k) = out.pairwise_pvalues(k, j) = p;
  }
  return out;
}

}  // namespace panelband
