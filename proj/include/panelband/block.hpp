#pragma once

#include <stdexcept>
#include <string>

#include "panelband/moments.hpp"
#include "panelband/panel.hpp"

namespace panelband {

using MatrixLd = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

/// Column prefix sums in extended precision: row l = sum of data rows [0,l).
/// Window sums are prefix differences; the extra mantissa bits keep them
/// accurate to ~1e-16 absolute even for long panels.
inline MatrixLd prefix_sums(const Matrix& data) {
  MatrixLd pref(data.rows() + 1, data.cols());
  pref.row(0).setZero();
  for (Eigen::Index i = 0; i < data.rows(); ++i)
    pref.row(i + 1) = pref.row(i) + data.row(i).cast<long double>();
  return pref;
}

}  // namespace detail

/// Block means T_{i,m}: the (n-m) averages of m consecutive curves,
/// windows starting at i = 1..n-m. Same flat (r*G) column layout as the
/// panel; entry (i, j*G+g) = m^{-1} sum_{l=i}^{i+m-1} X_{l,j}(u_g).
struct BlockMeans {
  Matrix data;  // (n-m) x (r*G)
  int m = 0;
};

inline void check_block_size(int m, int n) {
  if (m < 1 || m > n - 1)
    throw std::invalid_argument("block size m=" + std::to_string(m) +
                                " out of range [1, n-1] for n=" +
                                std::to_string(n));
}

inline BlockMeans block_means(const PanelSeries& panel, int m) {
  const int n = panel.n();
  check_block_size(m, n);
  const MatrixLd pref = detail::prefix_sums(panel.data());
  BlockMeans out;
  out.m = m;
  out.data.resize(n - m, panel.data().cols());
  const long double inv = 1.0L / m;
  for (int i = 0; i < n - m; ++i)
    out.data.row(i) =
        ((pref.row(i + m) - pref.row(i)) * inv).cast<double>();
  return out;
}

/// Block means centered at the panel sample mean: T_{i,m} - ghat. This is
/// the weight matrix of the multiplier bootstrap and of the MV functional.
inline Matrix centered_block_means(const PanelSeries& panel, int m) {
  const int n = panel.n();
  check_block_size(m, n);
  const MatrixLd pref = detail::prefix_sums(panel.data());
  const Eigen::Matrix<long double, 1, Eigen::Dynamic> mean =
      pref.row(n) / static_cast<long double>(n);
  Matrix out(n - m, panel.data().cols());
  const long double inv = 1.0L / m;
  for (int i = 0; i < n - m; ++i)
    out.row(i) =
        ((pref.row(i + m) - pref.row(i)) * inv - mean).cast<double>();
  return out;
}

}  // namespace panelband
