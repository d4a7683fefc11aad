#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "panelband/grid.hpp"

namespace panelband {

/// An observed panel of curves: n time points x r panels x G grid points.
///
/// Storage is a single n x (r*G) matrix; row i holds the r curves at time i
/// laid out panel-major, so entry (i, j*G + g) = X_{i,j}(u_g). This keeps
/// the time dimension contiguous for block sums and lets the bootstrap
/// treat all (panel, grid) coordinates as one wide vector.
class PanelSeries {
 public:
  PanelSeries(Matrix data, Grid grid, int r)
      : data_(std::move(data)), grid_(std::move(grid)), r_(r) {
    const int G = grid_.size();
    if (r_ < 1) throw std::invalid_argument("PanelSeries: r must be >= 1");
    if (data_.rows() < 1)
      throw std::invalid_argument("PanelSeries: n must be >= 1");
    if (data_.cols() != static_cast<Eigen::Index>(r_) * G)
      throw std::invalid_argument(
          "PanelSeries: data has " + std::to_string(data_.cols()) +
          " columns, expected r*G = " + std::to_string(r_ * G));
    if (!data_.allFinite())
      throw std::invalid_argument("PanelSeries: non-finite entry in data");
  }

  int n() const { return static_cast<int>(data_.rows()); }
  int r() const { return r_; }
  int G() const { return grid_.size(); }
  const Grid& grid() const { return grid_; }

  double operator()(int i, int j, int g) const {
    return data_(i, static_cast<Eigen::Index>(j) * G() + g);
  }

  /// The full n x (r*G) value matrix (panel-major columns).
  const Matrix& data() const { return data_; }

  /// Curve (i, j) as a G-vector.
  Curve curve(int i, int j) const {
    return data_.row(i).segment(static_cast<Eigen::Index>(j) * G(), G());
  }

 private:
  Matrix data_;
  Grid grid_;
  int r_;
};

/// Reshape an r x G matrix into the flat (r*G) layout used by PanelSeries.
inline Vector flatten_rg(const Matrix& m) {
  Vector out(m.size());
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    out.segment(j * m.cols(), m.cols()) = m.row(j);
  return out;
}

/// Inverse of flatten_rg.
inline Matrix unflatten_rg(const Vector& v, int r, int G) {
  if (v.size() != static_cast<Eigen::Index>(r) * G)
    throw std::invalid_argument("unflatten_rg: size mismatch");
  Matrix out(r, G);
  for (int j = 0; j < r; ++j) out.row(j) = v.segment(static_cast<Eigen::Index>(j) * G, G);
  return out;
}

}  // namespace panelband
