#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "panelband/grid.hpp"
#include "panelband/panel.hpp"
#include "panelband/rng.hpp"

namespace panelband {

enum class Model { PAR, PMA };

/// Configuration of the PAR(a)/PMA(a) panel simulators.
struct SimConfig {
  Model model = Model::PAR;
  double a = 0.0;    // AR or MA coefficient
  int n = 200;       // time length
  int r = 5;         // panel (spatial) dimension
  int G = 101;       // grid size
  int K_trunc = 50;  // innovation series truncation
  int burnin = 100;  // discarded PAR start-up steps
  Dist dist = Dist::Normal;
  std::optional<Matrix> mean;  // r x G mean matrix g_j(u_g), default zero
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1 || r < 1) throw std::invalid_argument("SimConfig: n, r must be >= 1");
    if (G < 2) throw std::invalid_argument("SimConfig: G must be >= 2");
    if (K_trunc < 1) throw std::invalid_argument("SimConfig: K_trunc must be >= 1");
    if (burnin < 0) throw std::invalid_argument("SimConfig: burnin must be >= 0");
    if (model == Model::PAR && !(a >= 0.0 && a < 1.0))
      throw std::invalid_argument("SimConfig: PAR requires 0 <= a < 1");
    if (model == Model::PMA && !(a >= 0.0))
      throw std::invalid_argument("SimConfig: PMA requires a >= 0");
    if (mean && (mean->rows() != r || mean->cols() != G))
      throw std::invalid_argument("SimConfig: mean matrix must be r x G");
  }
};

/// Basis matrix of the innovation series: row k-1 holds
/// k^{-3} [cos(2 pi k u_g) + sin(2 pi k u_g)] for k = 1..K.
inline Matrix innovation_basis(int K, const Grid& grid) {
  Matrix bas(K, grid.size());
  for (int k = 1; k <= K; ++k) {
    const double scale = 1.0 / (static_cast<double>(k) * k * k);
    for (int g = 0; g < grid.size(); ++g) {
      const double t = 2.0 * M_PI * k * grid[g];
      bas(k - 1, g) = scale * (std::cos(t) + std::sin(t));
    }
  }
  return bas;
}

/// Tridiagonal mixing of raw coefficient rows: out_k = raw_k
/// + raw_{k-1}/2 + raw_{k+1}/2, with out-of-range neighbours dropped
/// (the K x K truncation of the infinite tridiagonal matrix).
inline Matrix tridiagonal_mix(const Matrix& raw) {
  const Eigen::Index K = raw.cols();
  Matrix out = raw;
  if (K > 1) {
    out.leftCols(K - 1) += 0.5 * raw.rightCols(K - 1);
    out.rightCols(K - 1) += 0.5 * raw.leftCols(K - 1);
  }
  return out;
}

/// Innovation curves from explicit raw coefficients: one row of eps' per
/// (i, j), K columns. Returns the rows x G curve matrix.
inline Matrix innovation_curves_from_raw(const Matrix& raw, const Grid& grid) {
  return tridiagonal_mix(raw) * innovation_basis(static_cast<int>(raw.cols()), grid);
}

/// Draw the i.i.d. innovation curves eps_{i,j}(u) for rows = n_rows draws of
/// r panels each. Raw coefficients are consumed in (i, j, k) order from the
/// given stream. Layout matches PanelSeries: row i, column j*G+g.
inline Matrix gen_innovations(int n_rows, int r, int K, Dist dist,
                              RngStream& rng, const Grid& grid) {
  const int G = grid.size();
  Matrix raw(static_cast<Eigen::Index>(n_rows) * r, K);
  for (Eigen::Index row = 0; row < raw.rows(); ++row)
    for (int k = 0; k < K; ++k) raw(row, k) = draw_error(dist, rng);
  const Matrix curves = innovation_curves_from_raw(raw, grid);  // (n*r) x G
  Matrix out(n_rows, static_cast<Eigen::Index>(r) * G);
  for (int i = 0; i < n_rows; ++i)
    for (int j = 0; j < r; ++j)
      out.row(i).segment(static_cast<Eigen::Index>(j) * G, G) =
          curves.row(static_cast<Eigen::Index>(i) * r + j);
  return out;
}

namespace detail {

/// Spatial mixing X_j = e_j + e_{j-1}/2 + e_{j+1}/2 applied in place on the
/// flat (r*G) layout, row by row.
inline void spatial_mix_rows(Matrix& rows, int r, int G) {
  if (r == 1) return;
  Matrix mixed(rows.rows(), rows.cols());
  for (int j = 0; j < r; ++j) {
    auto seg = [&](Matrix& m, int p) {
      return m.middleCols(static_cast<Eigen::Index>(p) * G, G);
    };
    seg(mixed, j) = seg(rows, j);
    if (j > 0) seg(mixed, j) += 0.5 * seg(rows, j - 1);
    if (j + 1 < r) seg(mixed, j) += 0.5 * seg(rows, j + 1);
  }
  rows.swap(mixed);
}

}  // namespace detail

/// Assemble a PAR(a) panel from innovation rows (burnin + n of them):
/// e_0 = 0, e_t = a e_{t-1} + eps_t, first `burnin` steps discarded.
inline Matrix assemble_par(const Matrix& innovations, double a, int burnin,
                           int n) {
  if (innovations.rows() != static_cast<Eigen::Index>(burnin) + n)
    throw std::invalid_argument("assemble_par: need burnin+n innovation rows");
  Matrix out(n, innovations.cols());
  Vector e = Vector::Zero(innovations.cols());
  for (int t = 0; t < burnin + n; ++t) {
    e = a * e + innovations.row(t).transpose();
    if (t >= burnin) out.row(t - burnin) = e;
  }
  return out;
}

/// Assemble a PMA(a) panel from innovation rows (n+1 of them; row 0 is the
/// pre-sample innovation): e_i = eps_i + a eps_{i-1}.
inline Matrix assemble_pma(const Matrix& innovations, double a, int n) {
  if (innovations.rows() != static_cast<Eigen::Index>(n) + 1)
    throw std::invalid_argument("assemble_pma: need n+1 innovation rows");
  return innovations.bottomRows(n) + a * innovations.topRows(n);
}

/// Simulate one panel. All randomness comes from the (seed, replicate,
/// Innovations) stream, so a fixed config yields a bit-identical panel on
/// every run and thread count.
inline PanelSeries simulate_panel(const SimConfig& cfg,
                                  std::uint64_t replicate = 0) {
  cfg.validate();
  const Grid grid = make_grid(cfg.G);
  RngStream rng(cfg.seed, replicate, StreamPurpose::Innovations);
  Matrix e;
  if (cfg.model == Model::PAR) {
    const Matrix innov = gen_innovations(cfg.burnin + cfg.n, cfg.r,
                                         cfg.K_trunc, cfg.dist, rng, grid);
    e = assemble_par(innov, cfg.a, cfg.burnin, cfg.n);
  } else {
    const Matrix innov =
        gen_innovations(cfg.n + 1, cfg.r, cfg.K_trunc, cfg.dist, rng, grid);
    e = assemble_pma(innov, cfg.a, cfg.n);
  }
  detail::spatial_mix_rows(e, cfg.r, cfg.G);
  if (cfg.mean) {
    const Vector flat = flatten_rg(*cfg.mean);
    e.rowwise() += flat.transpose();
  }
  return PanelSeries(std::move(e), grid, cfg.r);
}

}  // namespace panelband
