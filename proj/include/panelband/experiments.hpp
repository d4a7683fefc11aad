#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "panelband/jscb.hpp"
#include "panelband/mv.hpp"
#include "panelband/parallel.hpp"
#include "panelband/parallelism.hpp"
#include "panelband/simulate.hpp"

namespace panelband {

enum class ExperimentMode { Coverage, TypeI, Power };

struct ExperimentConfig {
  SimConfig sim;
  BootstrapConfig boot;  // boot.m used only when mv == false
  int R = 500;           // Monte Carlo replications
  ExperimentMode mode = ExperimentMode::Coverage;
  std::vector<double> power_b_grid;  // Power mode only
  bool mv = true;  // per-replication minimum-volatility block selection

  void validate() const {
    sim.validate();
    if (R < 1) throw std::invalid_argument("ExperimentConfig: R must be >= 1");
    if (boot.B < 1) throw std::invalid_argument("ExperimentConfig: B must be >= 1");
    if (!(boot.alpha > 0.0 && boot.alpha < 1.0))
      throw std::invalid_argument("ExperimentConfig: alpha must be in (0,1)");
    if (!mv) check_block_size(boot.m, sim.n);
    if (mode == ExperimentMode::Power) {
      if (sim.r < 2)
        throw std::invalid_argument("ExperimentConfig: Power mode needs r >= 2");
      if (power_b_grid.empty())
        throw std::invalid_argument("ExperimentConfig: Power mode needs a b grid");
    }
  }
};

/// One Monte Carlo cell: the estimated rate and its binomial stderr,
/// plus the cell coordinates for reporting.
struct ExperimentReport {
  double rate = 0.0;
  double mc_stderr = 0.0;
  ExperimentMode mode = ExperimentMode::Coverage;
  Model model = Model::PAR;
  double a = 0.0;
  int n = 0;
  int r = 0;
  double alpha = 0.0;
  Dist dist = Dist::Normal;
  double b = 0.0;  // Power mode deviation; 0 otherwise
  int R = 0;
  int B = 0;
  bool mv = true;
};

namespace detail {

inline ExperimentReport make_report(const ExperimentConfig& cfg, long successes,
                                    double b) {
  ExperimentReport rep;
  rep.rate = static_cast<double>(successes) / cfg.R;
  rep.mc_stderr = std::sqrt(rep.rate * (1.0 - rep.rate) / cfg.R);
  rep.mode = cfg.mode;
  rep.model = cfg.sim.model;
  rep.a = cfg.sim.a;
  rep.n = cfg.sim.n;
  rep.r = cfg.sim.r;
  rep.alpha = cfg.boot.alpha;
  rep.dist = cfg.sim.dist;
  rep.b = b;
  rep.R = cfg.R;
  rep.B = cfg.boot.B;
  rep.mv = cfg.mv;
  return rep;
}

/// Parallel mean design of the size study: g_i(u) = u^2 - u + c_i with
/// c_i i.i.d. standard normal; the first panel additionally shifted by b*u.
inline Matrix shifted_mean_design(const SimConfig& sim, std::uint64_t replicate,
                                  double b) {
  RngStream rng(sim.seed, replicate, StreamPurpose::MeanShifts);
  const Grid grid = make_grid(sim.G);
  Matrix mean(sim.r, sim.G);
  for (int j = 0; j < sim.r; ++j) {
    const double c = rng.normal();
    for (int g = 0; g < sim.G; ++g) {
      const double u = grid[g];
      mean(j, g) = u * u - u + c;
    }
  }
  if (b != 0.0)
    for (int g = 0; g < sim.G; ++g) mean(0, g) += b * grid[g];
  return mean;
}

inline int select_block(const ExperimentConfig& cfg, const PanelSeries& panel) {
  return cfg.mv ? mv_select(panel, default_mv_candidates(panel.n()))
                : cfg.boot.m;
}

inline BootstrapConfig replicate_boot(const ExperimentConfig& cfg, int m,
                                      std::uint64_t replicate) {
  BootstrapConfig boot = cfg.boot;
  boot.m = m;
  boot.seed = derive_seed(cfg.sim.seed, replicate, StreamPurpose::Multipliers);
  return boot;
}

}  // namespace detail

/// JSCB coverage of the zero mean function: simulate, build the band,
/// record full containment of zero.
inline ExperimentReport run_coverage(const ExperimentConfig& cfg,
                                     int threads = 1) {
  if (cfg.mode != ExperimentMode::Coverage)
    throw std::invalid_argument("run_coverage: mode must be Coverage");
  cfg.validate();
  std::vector<char> covered(cfg.R, 0);
  parallel_for(threads, cfg.R, [&](long rep) {
    SimConfig sim = cfg.sim;
    sim.mean.reset();
    const PanelSeries panel = simulate_panel(sim, rep);
    const int m = detail::select_block(cfg, panel);
    const BandSet bands =
        jscb(panel, detail::replicate_boot(cfg, m, rep), /*threads=*/1);
    const Matrix zero = Matrix::Zero(sim.r, sim.G);
    covered[rep] = band_contains(bands, zero).overall ? 1 : 0;
  });
  const long hits = std::accumulate(covered.begin(), covered.end(), 0L);
  return detail::make_report(cfg, hits, 0.0);
}

/// Type I error of the parallelism test under the parallel mean design.
inline ExperimentReport run_type1(const ExperimentConfig& cfg,
                                  int threads = 1) {
  if (cfg.mode != ExperimentMode::TypeI)
    throw std::invalid_argument("run_type1: mode must be TypeI");
  cfg.validate();
  if (cfg.sim.r < 2) throw std::invalid_argument("run_type1: need r >= 2");
  std::vector<char> rejected(cfg.R, 0);
  parallel_for(threads, cfg.R, [&](long rep) {
    SimConfig sim = cfg.sim;
    sim.mean = detail::shifted_mean_design(sim, rep, 0.0);
    const PanelSeries panel = simulate_panel(sim, rep);
    const PanelSeries W = center_within_curve(panel);
    const int m = detail::select_block(cfg, W);
    const ParallelismResult res =
        parallelism_test(panel, detail::replicate_boot(cfg, m, rep), 1);
    rejected[rep] = res.reject ? 1 : 0;
  });
  const long hits = std::accumulate(rejected.begin(), rejected.end(), 0L);
  return detail::make_report(cfg, hits, 0.0);
}

/// Rejection rate along the power grid: panel 1's mean shifted by b*u.
/// Replication streams are shared across b values (common random numbers),
/// so the power curve is smooth in b.
inline std::vector<ExperimentReport> run_power(const ExperimentConfig& cfg,
                                               int threads = 1) {
  if (cfg.mode != ExperimentMode::Power)
    throw std::invalid_argument("run_power: mode must be Power");
  cfg.validate();
  std::vector<ExperimentReport> out;
  out.reserve(cfg.power_b_grid.size());
  for (const double b : cfg.power_b_grid) {
    std::vector<char> rejected(cfg.R, 0);
    parallel_for(threads, cfg.R, [&](long rep) {
      SimConfig sim = cfg.sim;
      sim.mean = detail::shifted_mean_design(sim, rep, b);
      const PanelSeries panel = simulate_panel(sim, rep);
      const PanelSeries W = center_within_curve(panel);
      const int m = detail::select_block(cfg, W);
      const ParallelismResult res =
          parallelism_test(panel, detail::replicate_boot(cfg, m, rep), 1);
      rejected[rep] = res.reject ? 1 : 0;
    });
    const long hits = std::accumulate(rejected.begin(), rejected.end(), 0L);
    out.push_back(detail::make_report(cfg, hits, b));
  }
  return out;
}

}  // namespace panelband
