#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "panelband/block.hpp"
#include "panelband/panel.hpp"

namespace panelband {

/// Equally spaced candidate block sizes m_1 < ... < m_k.
struct MvCandidates {
  std::vector<int> blocks;

  void validate() const {
    if (blocks.empty())
      throw std::invalid_argument("MvCandidates: need at least one candidate");
    for (std::size_t i = 1; i < blocks.size(); ++i) {
      if (blocks[i] <= blocks[i - 1])
        throw std::invalid_argument("MvCandidates: must be strictly increasing");
      if (blocks[i] - blocks[i - 1] != blocks[1] - blocks[0])
        throw std::invalid_argument("MvCandidates: must be equally spaced");
    }
    if (blocks.front() < 1)
      throw std::invalid_argument("MvCandidates: block sizes must be >= 1");
  }
};

/// Default grid: integers 2..ceil(3 n^{1/3}), kept extendable within
/// [1, n-1] (the MV criterion evaluates one extra candidate on each side).
inline MvCandidates default_mv_candidates(int n) {
  const int top =
      std::min(static_cast<int>(std::ceil(3.0 * std::cbrt(static_cast<double>(n)))),
               n - 2);
  MvCandidates out;
  for (int m = 2; m <= top; ++m) out.blocks.push_back(m);
  if (out.blocks.empty()) out.blocks.push_back(std::min(2, n - 1));
  return out;
}

/// Which variance proxy the MV criterion tracks. ConditionalVariance is
/// the conditional variance of the multiplier statistic,
/// (m/(n-m)) sum_i [T_{i,m}(u) - ghat(u)]^2; PrintedSqrt swaps the leading
/// factor for sqrt(m/(n-m)).
enum class MvForm { ConditionalVariance, PrintedSqrt };

/// Minimum-volatility block-size selection: pick the candidate whose
/// variance proxy is most stable against its two neighbours, measured by
/// the pointwise sd of the three proxies integrated over u and summed
/// over panels. Ties go to the smallest block size.
inline int mv_select(const PanelSeries& panel, const MvCandidates& candidates,
                     MvForm form = MvForm::ConditionalVariance) {
  candidates.validate();
  const int n = panel.n();
  const int k = static_cast<int>(candidates.blocks.size());
  for (int m : candidates.blocks) check_block_size(m, n);
  if (k == 1) return candidates.blocks.front();

  const int d = candidates.blocks[1] - candidates.blocks[0];
  std::vector<int> extended;
  extended.reserve(k + 2);
  extended.push_back(candidates.blocks.front() - d);
  extended.insert(extended.end(), candidates.blocks.begin(),
                  candidates.blocks.end());
  extended.push_back(candidates.blocks.back() + d);
  if (extended.front() < 1)
    throw std::invalid_argument("mv_select: extended candidate m_0 = " +
                                std::to_string(extended.front()) + " < 1");
  check_block_size(extended.back(), n);

  // Variance proxy per extended candidate, one row per candidate over all
  // (panel, grid) coordinates.
  Matrix proxy(k + 2, panel.data().cols());
  for (int i = 0; i < k + 2; ++i) {
    const int m = extended[i];
    const Matrix centered = centered_block_means(panel, m);
    const double ratio = static_cast<double>(m) / static_cast<double>(n - m);
    const double factor =
        form == MvForm::ConditionalVariance ? ratio : std::sqrt(ratio);
    proxy.row(i) = factor * centered.array().square().colwise().sum();
  }

  // Integration weights: trapezoid weights tiled across the r panels.
  const Vector w = panel.grid().trapezoid_weights();
  int best = -1;
  double best_value = 0.0;
  for (int i = 1; i <= k; ++i) {
    double value = 0.0;
    for (Eigen::Index c = 0; c < proxy.cols(); ++c) {
      const double a = proxy(i - 1, c), b = proxy(i, c), cc = proxy(i + 1, c);
      const double mu = (a + b + cc) / 3.0;
      const double sd = std::sqrt(
          ((a - mu) * (a - mu) + (b - mu) * (b - mu) + (cc - mu) * (cc - mu)) /
          2.0);
      value += sd * w[static_cast<int>(c) % panel.G()];
    }
    if (best < 0 || value < best_value) {
      best = i;
      best_value = value;
    }
  }
  return extended[best];
}

}  // namespace panelband
