// Acceptance suite: end-to-end statistical and algebraic checks of the
// library at the documented tolerances. Each criterion prints one
// PASS/FAIL line; the exit code is the number of failures. Monte Carlo
// sizes follow the desk-scale defaults (R=500, B=500 unless stated).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <panelband/panelband.hpp>

using namespace panelband;

namespace {

int g_failures = 0;
int g_index = 0;
int g_threads = 2;

void report(const std::string& name, bool pass, const std::string& detail) {
  ++g_index;
  if (!pass) ++g_failures;
  std::cout << "[" << g_index << "/8] " << (pass ? "PASS" : "FAIL") << "  "
            << name << ": " << detail << std::endl;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

ExperimentConfig base_config(Model model, double a, int n, int r, int R,
                             int B, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.sim.model = model;
  cfg.sim.a = a;
  cfg.sim.n = n;
  cfg.sim.r = r;
  cfg.sim.G = 101;
  cfg.sim.seed = seed;
  cfg.boot.B = B;
  cfg.boot.alpha = 0.05;
  cfg.R = R;
  cfg.mv = true;
  return cfg;
}

// --- 1. JSCB coverage, easy cell ------------------------------------------
void criterion_coverage_easy() {
  auto cfg = base_config(Model::PAR, 0.0, 200, 5, 500, 500, 101);
  cfg.mode = ExperimentMode::Coverage;
  const auto rep = run_coverage(cfg, g_threads);
  const bool pass = std::abs(rep.rate - 0.941) <= 0.03;
  report("JSCB coverage PAR(0), n=200, r=5, alpha=0.05", pass,
         "rate=" + fmt(rep.rate) + " (target 0.941 +/- 0.03, stderr " +
             fmt(rep.mc_stderr) + ")");
}

// --- 2. JSCB coverage, dependent cell --------------------------------------
void criterion_coverage_dependent() {
  auto cfg = base_config(Model::PAR, 0.5, 200, 5, 500, 500, 102);
  cfg.mode = ExperimentMode::Coverage;
  const auto rep = run_coverage(cfg, g_threads);
  const bool pass = rep.rate >= 0.87 && rep.rate <= 0.95;
  report("JSCB coverage PAR(0.5) (mild undercoverage band)", pass,
         "rate=" + fmt(rep.rate) + " (required [0.87, 0.95], stderr " +
             fmt(rep.mc_stderr) + ")");
}

// --- 3. parallelism type I error -------------------------------------------
void criterion_type1() {
  auto cfg = base_config(Model::PAR, 0.0, 200, 5, 500, 500, 103);
  cfg.mode = ExperimentMode::TypeI;
  const auto rep = run_type1(cfg, g_threads);
  const bool pass = std::abs(rep.rate - 0.042) <= 0.03;
  report("parallelism type I error PAR(0), n=200, r=5", pass,
         "rate=" + fmt(rep.rate) + " (target 0.042 +/- 0.03, stderr " +
             fmt(rep.mc_stderr) + ")");
}

// --- 4. power trend ---------------------------------------------------------
void criterion_power() {
  auto cfg = base_config(Model::PAR, 0.2, 200, 20, 300, 500, 104);
  cfg.mode = ExperimentMode::Power;
  cfg.power_b_grid = {0.0, 0.1, 0.2, 0.3};
  const auto reps = run_power(cfg, g_threads);
  const bool null_ok = std::abs(reps[0].rate - 0.05) <= 0.04;
  bool monotone = true;
  for (std::size_t i = 1; i < reps.size(); ++i)
    if (reps[i].rate <
        reps[i - 1].rate - 2.0 * std::max(reps[i].mc_stderr, reps[i - 1].mc_stderr))
      monotone = false;
  const bool tail_ok = reps[3].rate >= 0.80;
  std::string detail = "rates=";
  for (const auto& r : reps) detail += fmt(r.rate) + " ";
  detail += "(b=0 within 0.05 +/- 0.04: " + std::string(null_ok ? "yes" : "no") +
            "; non-decreasing up to 2se: " + (monotone ? "yes" : "no") +
            "; b=0.3 >= 0.80: " + (tail_ok ? "yes" : "no") + ")";
  report("parallelism power trend PAR(0.2), r=20", null_ok && monotone && tail_ok,
         detail);
}

// --- 5. Gaussian-oracle equivalence ----------------------------------------
void criterion_oracle() {
  SimConfig sim;
  sim.model = Model::PAR;
  sim.a = 0.0;
  sim.n = 400;
  sim.r = 1;
  sim.G = 101;
  sim.seed = 105;
  const PanelSeries panel = simulate_panel(sim);
  const int m = mv_select(panel, default_mv_candidates(sim.n));
  BootstrapConfig boot;
  boot.m = m;
  boot.B = 2000;
  boot.alpha = 0.05;
  boot.seed = 205;
  const auto res = bootstrap_sup_quantile(panel, boot,
                                          sample_mean_sd(panel).sd, g_threads);

  // Direct simulation of the limiting Gaussian sup: for i.i.d. curves the
  // covariance of S_n equals the innovation covariance, so draws are
  // Z(u_g) = xi^T A^T c(u_g) with xi standard normal in R^K.
  const Grid grid = make_grid(sim.G);
  const int K = sim.K_trunc;
  const Matrix bas = innovation_basis(K, grid);  // K x G, rows c_k(u_g)
  Matrix A = Matrix::Identity(K, K);
  for (int k = 0; k + 1 < K; ++k) A(k, k + 1) = A(k + 1, k) = 0.5;
  const Matrix M = A.transpose() * bas;  // K x G
  const Vector v_true = M.array().square().colwise().sum().sqrt();
  const int draws = 10000;
  std::vector<double> sups(draws);
  for (int d = 0; d < draws; ++d) {
    RngStream rng(305, d, StreamPurpose::Oracle);
    Vector xi(K);
    for (int k = 0; k < K; ++k) xi[k] = rng.normal();
    const Vector z = M.transpose() * xi;
    sups[d] = (z.array().abs() / v_true.array()).maxCoeff();
  }
  const double q_oracle = order_statistic_quantile(sups, boot.alpha);
  const double rel = std::abs(res.quantile - q_oracle) / q_oracle;
  report("bootstrap vs Gaussian-oracle sup quantile (r=1, n=400)", rel <= 0.10,
         "boot=" + fmt(res.quantile) + " oracle=" + fmt(q_oracle) + " rel=" +
             fmt(rel) + " (<= 0.10; m=" + std::to_string(m) + ")");
}

// --- 6. algebraic identities -------------------------------------------------
void criterion_algebra() {
  SimConfig sim;
  sim.model = Model::PAR;
  sim.a = 0.2;
  sim.n = 120;
  sim.r = 4;
  sim.G = 51;
  sim.seed = 106;
  const PanelSeries panel = simulate_panel(sim);
  BootstrapConfig boot;
  boot.m = 6;
  boot.B = 300;
  boot.alpha = 0.05;
  boot.seed = 206;
  bool pass = true;
  std::string why;

  // band width identity, exact
  const BandSet bands = jscb(panel, boot, g_threads);
  const Matrix width = bands.upper() - bands.lower();
  const Matrix expect = (2.0 * bands.quantile / std::sqrt(double(sim.n))) *
                        sample_mean_sd(panel).sd;
  if ((width - expect).array().abs().maxCoeff() > 1e-12) {
    pass = false;
    why += "width identity broken; ";
  }

  // alpha nesting
  BootstrapConfig loose = boot;
  loose.alpha = 0.10;
  const BandSet bands10 = jscb(panel, loose, g_threads);
  if (!band_contains(bands, bands10.upper()).overall ||
      !band_contains(bands, bands10.lower()).overall) {
    pass = false;
    why += "alpha nesting broken; ";
  }

  // scale invariance of the parallelism decision under x7
  const ParallelismResult a = parallelism_test(panel, boot, g_threads);
  const PanelSeries scaled(7.0 * panel.data(), panel.grid(), panel.r());
  const ParallelismResult b = parallelism_test(scaled, boot, g_threads);
  double drift = std::abs(a.statistic - b.statistic) /
                 std::max(1e-300, std::abs(a.statistic));
  for (std::size_t i = 0; i < a.replicates.size(); ++i)
    drift = std::max(drift, std::abs(a.replicates[i] - b.replicates[i]) /
                                std::max(1e-300, a.replicates[i]));
  if (drift > 1e-10 || a.reject != b.reject) {
    pass = false;
    why += "scale invariance drift " + fmt(drift) + "; ";
  }

  // constant-shifted panels: T_n = 0, never reject
  Matrix two(panel.n(), 2 * panel.G());
  two.leftCols(panel.G()) = panel.data().leftCols(panel.G());
  two.rightCols(panel.G()) =
      panel.data().leftCols(panel.G()).array() - 3.25;
  const PanelSeries shifted(two, panel.grid(), 2);
  for (const double alpha : {0.01, 0.5, 0.99}) {
    BootstrapConfig c = boot;
    c.alpha = alpha;
    const ParallelismResult res = parallelism_test(shifted, c, g_threads);
    if (res.statistic != 0.0 || res.reject) {
      pass = false;
      why += "shifted-copy panel not exactly parallel; ";
      break;
    }
  }

  report("algebraic identities (width, nesting, scaling, exact parallel)",
         pass, pass ? "all exact within stated tolerances" : why);
}

// --- 7. numerical analysis checks -------------------------------------------
void criterion_numerics() {
  bool pass = true;
  std::string why;

  // cosine closed form for u^2 at G=1001
  const Grid grid = make_grid(1001);
  Curve usq(1001);
  for (int g = 0; g < 1001; ++g) usq[g] = grid[g] * grid[g];
  const CosineCoeffs coeffs = cosine_coeffs(usq, grid, 4);
  double worst = std::abs(coeffs.a[0] - 1.0 / 3.0);
  for (int k = 1; k <= 4; ++k)
    worst = std::max(worst, std::abs(coeffs.a[k] - 4.0 * ((k % 2) ? -1.0 : 1.0) /
                                                       (k * k * M_PI * M_PI)));
  if (worst > 1e-4) {
    pass = false;
    why += "u^2 coefficients off by " + fmt(worst) + "; ";
  }

  // Fourier coefficient decay of simulated smooth curves:
  // least-squares slope of log|a_k| vs log k over k=2..30, 100 curves.
  RngStream rng(107, 0, StreamPurpose::Innovations);
  const Matrix eps = gen_innovations(100, 1, 50, Dist::Normal, rng, grid);
  double slope_sum = 0.0;
  for (int i = 0; i < 100; ++i) {
    const CosineCoeffs ck = cosine_coeffs(eps.row(i).transpose(), grid, 30);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int lo = 2, hi = 30;
    for (int k = lo; k <= hi; ++k) {
      const double x = std::log(double(k));
      const double y = std::log(std::abs(ck.a[k]));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const int cnt = hi - lo + 1;
    slope_sum += (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  }
  const double slope = slope_sum / 100.0;
  if (!(slope <= -1.8)) {
    pass = false;
    why += "decay slope " + fmt(slope) + " > -1.8; ";
  }

  // local linear smoother exact on affine data
  SmoothConfig scfg;
  scfg.grid = make_grid(41);
  scfg.bandwidth = 0.1;
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 150; ++i) {
    const double x = i / 149.0;
    pts.emplace_back(x, -1.75 * x + 0.4);
  }
  const Curve sm = local_linear_smooth(pts, scfg);
  double affine_err = 0.0;
  for (int g = 0; g < scfg.grid.size(); ++g)
    affine_err =
        std::max(affine_err, std::abs(sm[g] - (-1.75 * scfg.grid[g] + 0.4)));
  if (affine_err > 1e-10) {
    pass = false;
    why += "affine smoothing error " + fmt(affine_err) + "; ";
  }

  report("numerical checks (quadrature, coefficient decay, smoother)", pass,
         pass ? "u^2 coeffs within 1e-4, slope " + fmt(slope) +
                    " <= -1.8, affine error " + fmt(affine_err)
              : why);
}

// --- 8. determinism across thread counts -------------------------------------
void criterion_determinism() {
  bool pass = true;
  std::string why;

  SimConfig sim;
  sim.model = Model::PMA;
  sim.a = 0.5;
  sim.n = 100;
  sim.r = 3;
  sim.G = 31;
  sim.seed = 108;
  const PanelSeries p1 = simulate_panel(sim);
  const PanelSeries p2 = simulate_panel(sim);
  if (p1.data() != p2.data()) {
    pass = false;
    why += "simulation not reproducible; ";
  }

  BootstrapConfig boot;
  boot.m = 5;
  boot.B = 257;  // deliberately not a multiple of the replicate tile
  boot.alpha = 0.05;
  boot.seed = 208;
  const auto q1 = bootstrap_sup_quantile(p1, boot, sample_mean_sd(p1).sd, 1);
  const auto q4 = bootstrap_sup_quantile(p1, boot, sample_mean_sd(p1).sd, 4);
  const auto q16 = bootstrap_sup_quantile(p1, boot, sample_mean_sd(p1).sd, 16);
  if (q1.replicates != q4.replicates || q1.replicates != q16.replicates) {
    pass = false;
    why += "bootstrap replicates differ across threads; ";
  }

  const ParallelismResult t1 = parallelism_test(p1, boot, 1);
  const ParallelismResult t4 = parallelism_test(p1, boot, 4);
  const ParallelismResult t16 = parallelism_test(p1, boot, 16);
  if (t1.replicates != t4.replicates || t1.replicates != t16.replicates ||
      t1.critical_value != t16.critical_value) {
    pass = false;
    why += "parallelism replicates differ across threads; ";
  }

  ExperimentConfig cfg;
  cfg.sim = sim;
  cfg.sim.n = 80;
  cfg.boot = boot;
  cfg.boot.m = 0;
  cfg.mv = true;
  cfg.R = 24;
  cfg.mode = ExperimentMode::Coverage;
  const double c1 = run_coverage(cfg, 1).rate;
  const double c4 = run_coverage(cfg, 4).rate;
  const double c16 = run_coverage(cfg, 16).rate;
  if (c1 != c4 || c1 != c16) {
    pass = false;
    why += "coverage rate differs across threads; ";
  }

  report("determinism across 1/4/16 threads", pass,
         pass ? "simulation, bootstrap, test and harness all bit-identical"
              : why);
}

}  // namespace

int main(int argc, char** argv) {
  g_threads = default_threads();
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
      g_threads = std::atoi(argv[++i]);

  std::cout << "panelband acceptance suite (threads=" << g_threads << ")\n";
  criterion_coverage_easy();
  criterion_coverage_dependent();
  criterion_type1();
  criterion_power();
  criterion_oracle();
  criterion_algebra();
  criterion_numerics();
  criterion_determinism();
  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                : std::to_string(g_failures) + " CRITERIA FAILED")
            << std::endl;
  return g_failures;
}
