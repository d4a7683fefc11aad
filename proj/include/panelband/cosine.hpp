#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "panelband/grid.hpp"

namespace panelband {

/// Coefficients a_0..a_K of a curve in the cosine basis {cos(k*pi*u)}.
struct CosineCoeffs {
  Vector a;
  int order() const { return static_cast<int>(a.size()) - 1; }
};

/// Cosine-basis coefficients by composite trapezoid quadrature:
///   a_0 = int_0^1 X(u) du,   a_k = 2 int_0^1 cos(k pi u) X(u) du  (k >= 1).
///
/// Requires G >= K+2 so the top basis function is still resolved by the
/// grid (the k-th mode needs more than k+1 samples to avoid aliasing).
inline CosineCoeffs cosine_coeffs(const Curve& curve, const Grid& grid, int K) {
  const int G = grid.size();
  if (curve.size() != G)
    throw std::invalid_argument("cosine_coeffs: curve/grid size mismatch");
  if (K < 0) throw std::invalid_argument("cosine_coeffs: K must be >= 0");
  if (G < K + 2)
    throw std::invalid_argument("cosine_coeffs: grid too coarse for K=" +
                                std::to_string(K) + " (need G >= K+2, got " +
                                std::to_string(G) + ")");
  const Vector w = grid.trapezoid_weights();
  CosineCoeffs out;
  out.a.resize(K + 1);
  out.a[0] = w.dot(curve);
  for (int k = 1; k <= K; ++k) {
    double acc = 0.0;
    for (int g = 0; g < G; ++g)
      acc += w[g] * std::cos(k * M_PI * grid[g]) * curve[g];
    out.a[k] = 2.0 * acc;
  }
  return out;
}

/// Evaluate the partial Fourier sum  sum_{k=0}^K a_k cos(k pi u)  on a grid.
inline Curve partial_sum_reconstruct(const CosineCoeffs& coeffs,
                                     const Grid& grid) {
  const int G = grid.size();
  Curve out = Curve::Constant(G, coeffs.a[0]);
  for (int k = 1; k <= coeffs.order(); ++k)
    for (int g = 0; g < G; ++g)
      out[g] += coeffs.a[k] * std::cos(k * M_PI * grid[g]);
  return out;
}

}  // namespace panelband
