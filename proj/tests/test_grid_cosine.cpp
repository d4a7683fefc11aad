#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include <panelband/cosine.hpp>
#include <panelband/grid.hpp>

using namespace panelband;
using Catch::Approx;

TEST_CASE("make_grid endpoints and spacing") {
  const Grid g2 = make_grid(2);
  REQUIRE(g2.points[0] == 0.0);
  REQUIRE(g2.points[1] == 1.0);

  const Grid g3 = make_grid(3);
  REQUIRE(g3.points[1] == Approx(0.5));

  const Grid g101 = make_grid(101);
  REQUIRE(g101.size() == 101);
  REQUIRE(g101.points[0] == 0.0);
  REQUIRE(g101.points[100] == 1.0);
  REQUIRE(g101.spacing() == Approx(0.01));
  for (int g = 1; g < 101; ++g)
    REQUIRE(g101[g] - g101[g - 1] == Approx(0.01).margin(1e-15));

  REQUIRE_THROWS_AS(make_grid(1), std::invalid_argument);
  REQUIRE_THROWS_AS(make_grid(0), std::invalid_argument);
}

TEST_CASE("cosine coefficients of a constant curve are exact") {
  const Grid grid = make_grid(51);
  const Curve c = Curve::Constant(51, 3.0);
  const CosineCoeffs coeffs = cosine_coeffs(c, grid, 8);
  REQUIRE(coeffs.a[0] == Approx(3.0).margin(1e-14));
  for (int k = 1; k <= 8; ++k)
    REQUIRE(std::abs(coeffs.a[k]) < 1e-13);
}

TEST_CASE("cosine basis self-coefficient") {
  const Grid grid = make_grid(1001);
  Curve c(1001);
  for (int g = 0; g < 1001; ++g) c[g] = std::cos(M_PI * grid[g]);
  const CosineCoeffs coeffs = cosine_coeffs(c, grid, 3);
  REQUIRE(std::abs(coeffs.a[0]) < 1e-4);
  REQUIRE(coeffs.a[1] == Approx(1.0).margin(1e-4));
  REQUIRE(std::abs(coeffs.a[2]) < 1e-4);
  REQUIRE(std::abs(coeffs.a[3]) < 1e-4);
}

TEST_CASE("cosine coefficients of u^2 match the closed form") {
  // 2 int_0^1 u^2 cos(k pi u) du = 4 (-1)^k / (k pi)^2, a_0 = 1/3.
  const Grid grid = make_grid(1001);
  Curve c(1001);
  for (int g = 0; g < 1001; ++g) c[g] = grid[g] * grid[g];
  const CosineCoeffs coeffs = cosine_coeffs(c, grid, 4);
  REQUIRE(coeffs.a[0] == Approx(1.0 / 3.0).margin(1e-4));
  for (int k = 1; k <= 4; ++k) {
    const double closed = 4.0 * ((k % 2) ? -1.0 : 1.0) / (k * k * M_PI * M_PI);
    REQUIRE(coeffs.a[k] == Approx(closed).margin(1e-4));
  }
}

TEST_CASE("discrete orthogonality of the cosine basis") {
  const Grid grid = make_grid(2001);
  for (int l = 1; l <= 10; ++l) {
    Curve c(2001);
    for (int g = 0; g < 2001; ++g) c[g] = std::cos(l * M_PI * grid[g]);
    const CosineCoeffs coeffs = cosine_coeffs(c, grid, 10);
    for (int k = 0; k <= 10; ++k) {
      if (k == l)
        REQUIRE(coeffs.a[k] == Approx(1.0).margin(1e-6));
      else
        REQUIRE(std::abs(coeffs.a[k]) < 1e-6);
    }
  }
}

TEST_CASE("cosine_coeffs rejects K too large for the grid") {
  const Grid grid = make_grid(10);
  const Curve c = Curve::Zero(10);
  REQUIRE_NOTHROW(cosine_coeffs(c, grid, 8));
  REQUIRE_THROWS_AS(cosine_coeffs(c, grid, 9), std::invalid_argument);
  REQUIRE_THROWS_AS(cosine_coeffs(c, grid, -1), std::invalid_argument);
}

TEST_CASE("partial sum reconstruction basics") {
  const Grid grid = make_grid(11);
  CosineCoeffs c0;
  c0.a = Vector::Constant(1, 5.0);
  const Curve r0 = partial_sum_reconstruct(c0, grid);
  for (int g = 0; g < 11; ++g) REQUIRE(r0[g] == 5.0);

  CosineCoeffs c1;
  c1.a = Vector(2);
  c1.a << 1.0, 2.0;
  const Curve r1 = partial_sum_reconstruct(c1, grid);
  for (int g = 0; g < 11; ++g)
    REQUIRE(r1[g] == Approx(1.0 + 2.0 * std::cos(M_PI * grid[g])));
}

TEST_CASE("reconstruction error of u^2 decreases in K") {
  // The cosine tail of u^2 is sum_{k>K} 4/(k pi)^2 ~ 0.4/K, so the K=50
  // partial sum is still ~8e-3 off in sup norm; what the truncation must
  // show is monotone improvement.
  const Grid grid = make_grid(1001);
  Curve c(1001);
  for (int g = 0; g < 1001; ++g) c[g] = grid[g] * grid[g];
  double prev = 1e300;
  for (const int K : {5, 10, 20, 50}) {
    const Curve rec = partial_sum_reconstruct(cosine_coeffs(c, grid, K), grid);
    const double sup = (rec - c).array().abs().maxCoeff();
    REQUIRE(sup < prev);
    prev = sup;
  }
  REQUIRE(prev < 0.01);
  REQUIRE(prev > 1e-3);  // the k^-2 tail genuinely dominates at K=50
}
