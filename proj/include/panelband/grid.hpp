#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace panelband {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A curve is its values on the grid it was sampled on.
using Curve = Eigen::VectorXd;

/// Uniform grid on [0,1] including both endpoints: u_g = g/(G-1).
struct Grid {
  Vector points;

  int size() const { return static_cast<int>(points.size()); }
  double spacing() const { return 1.0 / (size() - 1); }
  double operator[](int g) const { return points[g]; }

  /// Composite-trapezoid quadrature weights (endpoints halved).
  Vector trapezoid_weights() const {
    const int G = size();
    Vector w = Vector::Constant(G, spacing());
    w[0] *= 0.5;
    w[G - 1] *= 0.5;
    return w;
  }

  /// Trapezoid integral of a curve sampled on this grid.
  double integrate(const Curve& values) const {
    if (values.size() != points.size())
      throw std::invalid_argument("integrate: curve length " +
                                  std::to_string(values.size()) +
                                  " does not match grid size " +
                                  std::to_string(size()));
    return trapezoid_weights().dot(values);
  }
};

inline Grid make_grid(int G) {
  if (G < 2) throw std::invalid_argument("make_grid: G must be >= 2, got " +
                                         std::to_string(G));
  Grid g;
  g.points = Vector::LinSpaced(G, 0.0, 1.0);
  // LinSpaced guarantees exact endpoints; interior points are g/(G-1).
  return g;
}

}  // namespace panelband
