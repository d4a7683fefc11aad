// panelband command-line front end: simulate PAR/PMA panels, build joint
// simultaneous confidence bands, test parallelism of mean curves, select
// bootstrap block sizes, run Monte Carlo benchmarks, and smooth raw
// long-format records into panels. Every output carries a JSON metadata
// sidecar with the fully resolved configuration so runs are reproducible
// from the artifacts alone.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <panelband/panelband.hpp>

namespace pb = panelband;
using nlohmann::json;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

json sim_config_json(const pb::SimConfig& cfg) {
  return json{{"model", pb::to_string(cfg.model)}, {"a", cfg.a},
              {"n", cfg.n},                        {"r", cfg.r},
              {"G", cfg.G},                        {"K_trunc", cfg.K_trunc},
              {"burnin", cfg.burnin},              {"dist", pb::to_string(cfg.dist)},
              {"seed", cfg.seed}};
}

void write_meta(const std::string& out_path, json meta, const Timer& timer) {
  meta["version"] = pb::version();
  meta["wall_time_s"] = timer.seconds();
  std::ofstream out(out_path);
  if (!out) throw pb::ParseError("cannot write " + out_path);
  out << meta.dump(2) << "\n";
}

std::string meta_path(const std::string& out) { return out + ".meta.json"; }

struct BlockChoice {
  int m = 0;
  std::string source;
};

BlockChoice choose_block(const pb::PanelSeries& panel, int block_flag) {
  if (block_flag > 0) return {block_flag, "flag"};
  return {pb::mv_select(panel, pb::default_mv_candidates(panel.n())), "mv"};
}

std::vector<std::string> numbered_labels(int r) {
  std::vector<std::string> labels;
  labels.reserve(r);
  for (int j = 1; j <= r; ++j) labels.push_back(std::to_string(j));
  return labels;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"panelband: simultaneous inference for panels of functional time series"};
  app.require_subcommand(1);

  int threads = pb::default_threads();
  app.add_option("--threads", threads,
                 "worker threads (results never depend on this); default "
                 "from PANELBAND_THREADS or hardware")
      ->capture_default_str();

  // ---- simulate ----------------------------------------------------------
  auto* sim_cmd = app.add_subcommand("simulate", "generate a PAR/PMA panel");
  std::string sim_config_path, sim_out, sim_model = "PAR", sim_dist = "normal";
  pb::SimConfig sim_defaults;
  double sim_a = sim_defaults.a;
  int sim_n = sim_defaults.n, sim_r = sim_defaults.r, sim_G = sim_defaults.G;
  int sim_K = sim_defaults.K_trunc, sim_burnin = sim_defaults.burnin;
  std::uint64_t sim_seed = 0;
  sim_cmd->add_option("--config", sim_config_path,
                      "SimConfig key-value file (inline flags override)");
  sim_cmd->add_option("--model", sim_model, "PAR or PMA")->capture_default_str();
  sim_cmd->add_option("--a", sim_a, "AR/MA coefficient")->capture_default_str();
  sim_cmd->add_option("--n", sim_n, "time length")->capture_default_str();
  sim_cmd->add_option("--r", sim_r, "panel dimension")->capture_default_str();
  sim_cmd->add_option("--grid", sim_G, "grid size G")->capture_default_str();
  sim_cmd->add_option("--ktrunc", sim_K, "innovation truncation")
      ->capture_default_str();
  sim_cmd->add_option("--burnin", sim_burnin, "PAR burn-in steps")
      ->capture_default_str();
  sim_cmd->add_option("--dist", sim_dist, "normal or scaled_t6")
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
  sim_cmd->add_option("--out", sim_out, "output panel CSV")->required();

  // ---- shared inference flags --------------------------------------------
  auto add_infer_flags = [](CLI::App* cmd, std::string& panel_path,
                            double& alpha, int& block, int& boot_reps,
                            std::uint64_t& seed) {
    cmd->add_option("--panel", panel_path, "input panel tensor CSV")->required();
    cmd->add_option("--alpha", alpha, "nominal level")->capture_default_str();
    cmd->add_option("--block", block,
                    "bootstrap block size m (0 = minimum-volatility selection)")
        ->capture_default_str();
    cmd->add_option("--boot-reps", boot_reps, "bootstrap replicates B")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  };

  auto* jscb_cmd = app.add_subcommand("jscb", "joint simultaneous confidence bands");
  std::string jscb_panel, jscb_out, jscb_reps_out;
  double jscb_alpha = 0.05;
  int jscb_block = 0, jscb_B = 500;
  std::uint64_t jscb_seed = 0;
  add_infer_flags(jscb_cmd, jscb_panel, jscb_alpha, jscb_block, jscb_B, jscb_seed);
  jscb_cmd->add_option("--out", jscb_out, "output band CSV")->required();
  jscb_cmd->add_option("--replicates-out", jscb_reps_out,
                       "optional bootstrap replicate CSV");

  auto* par_cmd = app.add_subcommand("test-parallel", "test parallelism of mean curves");
  std::string par_panel, par_out, par_pvalues_out, par_reps_out;
  double par_alpha = 0.05;
  int par_block = 0, par_B = 500;
  std::uint64_t par_seed = 0;
  add_infer_flags(par_cmd, par_panel, par_alpha, par_block, par_B, par_seed);
  par_cmd->add_option("--out", par_out, "output result JSON")->required();
  par_cmd->add_option("--pvalues-out", par_pvalues_out,
                      "pairwise p-value CSV (default <out>.pvalues.csv)");
  par_cmd->add_option("--replicates-out", par_reps_out,
                      "optional bootstrap replicate CSV");

  auto* mv_cmd = app.add_subcommand("mv-select", "minimum-volatility block size");
  std::string mv_panel, mv_out;
  mv_cmd->add_option("--panel", mv_panel, "input panel tensor CSV")->required();
  mv_cmd->add_option("--out", mv_out, "optional JSON output");

  // ---- benches ------------------------------------------------------------
  struct BenchFlags {
    std::string model = "PAR", dist = "normal", out;
    double a = 0.0, alpha = 0.05;
    int n = 200, r = 5, G = 101, reps = 500, boot_reps = 500, block = 0;
    std::uint64_t seed = 0;
    std::string b_grid = "0,0.1,0.2,0.3";
  };
  auto add_bench_flags = [](CLI::App* cmd, BenchFlags& f, bool power) {
    cmd->add_option("--model", f.model, "PAR or PMA")->capture_default_str();
    cmd->add_option("--a", f.a, "AR/MA coefficient")->capture_default_str();
    cmd->add_option("--n", f.n, "time length")->capture_default_str();
    cmd->add_option("--r", f.r, "panel dimension")->capture_default_str();
    cmd->add_option("--grid", f.G, "grid size G")->capture_default_str();
    cmd->add_option("--dist", f.dist, "normal or scaled_t6")->capture_default_str();
    cmd->add_option("--alpha", f.alpha, "nominal level")->capture_default_str();
    cmd->add_option("--reps", f.reps, "Monte Carlo replications R")
        ->capture_default_str();
    cmd->add_option("--boot-reps", f.boot_reps, "bootstrap replicates B")
        ->capture_default_str();
    cmd->add_option("--block", f.block,
                    "fixed block size (0 = per-replication MV selection)")
        ->capture_default_str();
    cmd->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--out", f.out, "output report CSV")->required();
    if (power)
      cmd->add_option("--b-grid", f.b_grid, "comma-separated deviations b")
          ->capture_default_str();
  };
  BenchFlags cov_flags, size_flags, pow_flags;
  auto* cov_cmd = app.add_subcommand("coverage-bench", "JSCB coverage Monte Carlo");
  add_bench_flags(cov_cmd, cov_flags, false);
  auto* size_cmd = app.add_subcommand("size-bench", "parallelism type I error Monte Carlo");
  add_bench_flags(size_cmd, size_flags, false);
  auto* pow_cmd = app.add_subcommand("power-bench", "parallelism power Monte Carlo");
  add_bench_flags(pow_cmd, pow_flags, true);

  // ---- smooth --------------------------------------------------------------
  auto* smooth_cmd = app.add_subcommand(
      "smooth", "smooth long-format records into a panel tensor");
  std::string smooth_in, smooth_out;
  int smooth_G = 101, smooth_min_points = 2;
  double smooth_bandwidth = 0.0;
  smooth_cmd->add_option("--in", smooth_in, "long CSV (unit,period,position,value)")
      ->required();
  smooth_cmd->add_option("--grid", smooth_G, "grid size G")->capture_default_str();
  smooth_cmd
      ->add_option("--bandwidth", smooth_bandwidth,
                   "kernel bandwidth on [0,1] (0 = rule of thumb per cell count)")
      ->capture_default_str();
  smooth_cmd->add_option("--min-points", smooth_min_points,
                         "required points within bandwidth of each grid point")
      ->capture_default_str();
  smooth_cmd->add_option("--out", smooth_out, "output panel tensor CSV")->required();

  CLI11_PARSE(app, argc, argv);
  Timer timer;

  if (sim_cmd->parsed()) {
    pb::SimConfig cfg;
    if (!sim_config_path.empty()) cfg = pb::load_sim_config(sim_config_path);
    if (sim_config_path.empty() || sim_cmd->count("--model")) cfg.model = pb::model_from_string(sim_model);
    if (sim_config_path.empty() || sim_cmd->count("--a")) cfg.a = sim_a;
    if (sim_config_path.empty() || sim_cmd->count("--n")) cfg.n = sim_n;
    if (sim_config_path.empty() || sim_cmd->count("--r")) cfg.r = sim_r;
    if (sim_config_path.empty() || sim_cmd->count("--grid")) cfg.G = sim_G;
    if (sim_config_path.empty() || sim_cmd->count("--ktrunc")) cfg.K_trunc = sim_K;
    if (sim_config_path.empty() || sim_cmd->count("--burnin")) cfg.burnin = sim_burnin;
    if (sim_config_path.empty() || sim_cmd->count("--dist")) cfg.dist = pb::dist_from_string(sim_dist);
    if (sim_config_path.empty() || sim_cmd->count("--seed")) cfg.seed = sim_seed;
    cfg.validate();
    const pb::PanelSeries panel = pb::simulate_panel(cfg);
    pb::save_panel_csv(panel, sim_out);
    write_meta(meta_path(sim_out),
               json{{"command", "simulate"},
                    {"config", sim_config_json(cfg)},
                    {"seed", cfg.seed},
                    {"threads", threads},
                    {"outputs", {{"panel_csv", sim_out}}}},
               timer);
    std::cout << "wrote " << sim_out << " (n=" << cfg.n << " r=" << cfg.r
              << " G=" << cfg.G << ")\n";
    return 0;
  }

  if (jscb_cmd->parsed()) {
    const pb::PanelSeries panel = pb::load_panel_csv(jscb_panel);
    const BlockChoice block = choose_block(panel, jscb_block);
    pb::BootstrapConfig boot{block.m, jscb_B, jscb_alpha, jscb_seed};
    const pb::BandSet bands = pb::jscb(panel, boot, threads);
    pb::write_bands_csv(bands, panel.grid(), jscb_out);
    if (!jscb_reps_out.empty()) {
      const auto boot_out =
          pb::bootstrap_sup_quantile(panel, boot, pb::sample_mean_sd(panel).sd, threads);
      pb::write_replicates_csv(boot_out.replicates, jscb_reps_out);
    }
    write_meta(meta_path(jscb_out),
               json{{"command", "jscb"},
                    {"config",
                     {{"alpha", jscb_alpha},
                      {"boot_reps", jscb_B},
                      {"block_size", block.m},
                      {"block_source", block.source},
                      {"panel", jscb_panel},
                      {"n", panel.n()},
                      {"r", panel.r()},
                      {"G", panel.G()}}},
                    {"seed", jscb_seed},
                    {"threads", threads},
                    {"quantile", bands.quantile},
                    {"outputs", {{"bands_csv", jscb_out}}}},
               timer);
    std::cout << "jscb: m=" << block.m << " (" << block.source
              << ") quantile=" << bands.quantile << " -> " << jscb_out << "\n";
    return 0;
  }

  if (par_cmd->parsed()) {
    const pb::PanelSeries panel = pb::load_panel_csv(par_panel);
    const pb::PanelSeries W = pb::center_within_curve(panel);
    const BlockChoice block = choose_block(W, par_block);
    pb::BootstrapConfig boot{block.m, par_B, par_alpha, par_seed};
    const pb::ParallelismResult res = pb::parallelism_test(panel, boot, threads);
    const std::string pvalues_out =
        par_pvalues_out.empty() ? par_out + ".pvalues.csv" : par_pvalues_out;
    pb::write_pvalues_csv(res.pairwise_pvalues, numbered_labels(panel.r()),
                          pvalues_out);
    if (!par_reps_out.empty())
      pb::write_replicates_csv(res.replicates, par_reps_out);
    json result{{"command", "test-parallel"},
                {"statistic", res.statistic},
                {"critical_value", res.critical_value},
                {"alpha", res.alpha},
                {"reject", res.reject},
                {"config",
                 {{"alpha", par_alpha},
                  {"boot_reps", par_B},
                  {"block_size", block.m},
                  {"block_source", block.source},
                  {"panel", par_panel},
                  {"n", panel.n()},
                  {"r", panel.r()},
                  {"G", panel.G()}}},
                {"seed", par_seed},
                {"threads", threads},
                {"outputs", {{"pvalues_csv", pvalues_out}}}};
    write_meta(par_out, result, timer);
    std::cout << "test-parallel: Tn=" << res.statistic
              << " crit=" << res.critical_value << " reject=" << res.reject
              << " -> " << par_out << "\n";
    return 0;
  }

  if (mv_cmd->parsed()) {
    const pb::PanelSeries panel = pb::load_panel_csv(mv_panel);
    const int m = pb::mv_select(panel, pb::default_mv_candidates(panel.n()));
    if (!mv_out.empty())
      write_meta(mv_out,
                 json{{"command", "mv-select"},
                      {"block_size", m},
                      {"config", {{"panel", mv_panel}, {"n", panel.n()}}},
                      {"seed", 0},
                      {"threads", threads}},
                 timer);
    std::cout << m << "\n";
    return 0;
  }

  auto bench_config = [&](const BenchFlags& f,
                          pb::ExperimentMode mode) -> pb::ExperimentConfig {
    pb::ExperimentConfig cfg;
    cfg.sim.model = pb::model_from_string(f.model);
    cfg.sim.a = f.a;
    cfg.sim.n = f.n;
    cfg.sim.r = f.r;
    cfg.sim.G = f.G;
    cfg.sim.dist = pb::dist_from_string(f.dist);
    cfg.sim.seed = f.seed;
    cfg.boot.B = f.boot_reps;
    cfg.boot.alpha = f.alpha;
    cfg.mode = mode;
    cfg.R = f.reps;
    cfg.mv = f.block <= 0;
    if (!cfg.mv) cfg.boot.m = f.block;
    return cfg;
  };
  auto bench_meta = [&](const BenchFlags& f, const pb::ExperimentConfig& cfg,
                        const std::string& command) -> json {
    return json{{"command", command},
                {"config",
                 {{"sim", sim_config_json(cfg.sim)},
                  {"alpha", cfg.boot.alpha},
                  {"boot_reps", cfg.boot.B},
                  {"reps", cfg.R},
                  {"mv", cfg.mv},
                  {"block_size", cfg.mv ? 0 : cfg.boot.m}}},
                {"seed", f.seed},
                {"threads", threads},
                {"outputs", {{"report_csv", f.out}}}};
  };

  if (cov_cmd->parsed()) {
    const auto cfg = bench_config(cov_flags, pb::ExperimentMode::Coverage);
    const auto report = pb::run_coverage(cfg, threads);
    pb::write_reports_csv({report}, cov_flags.out);
    json meta = bench_meta(cov_flags, cfg, "coverage-bench");
    meta["rate"] = report.rate;
    meta["mc_stderr"] = report.mc_stderr;
    write_meta(meta_path(cov_flags.out), meta, timer);
    std::cout << "coverage=" << report.rate << " stderr=" << report.mc_stderr
              << " -> " << cov_flags.out << "\n";
    return 0;
  }

  if (size_cmd->parsed()) {
    const auto cfg = bench_config(size_flags, pb::ExperimentMode::TypeI);
    const auto report = pb::run_type1(cfg, threads);
    pb::write_reports_csv({report}, size_flags.out);
    json meta = bench_meta(size_flags, cfg, "size-bench");
    meta["rate"] = report.rate;
    meta["mc_stderr"] = report.mc_stderr;
    write_meta(meta_path(size_flags.out), meta, timer);
    std::cout << "type1=" << report.rate << " stderr=" << report.mc_stderr
              << " -> " << size_flags.out << "\n";
    return 0;
  }

  if (pow_cmd->parsed()) {
    auto cfg = bench_config(pow_flags, pb::ExperimentMode::Power);
    for (const auto& tok : pb::detail::split_csv(pow_flags.b_grid))
      cfg.power_b_grid.push_back(std::stod(tok));
    const auto reports = pb::run_power(cfg, threads);
    pb::write_power_csv(reports, pow_flags.out);
    json meta = bench_meta(pow_flags, cfg, "power-bench");
    meta["config"]["b_grid"] = cfg.power_b_grid;
    json rates = json::array();
    for (const auto& rep : reports)
      rates.push_back({{"b", rep.b}, {"rate", rep.rate}, {"stderr", rep.mc_stderr}});
    meta["rates"] = rates;
    write_meta(meta_path(pow_flags.out), meta, timer);
    for (const auto& rep : reports)
      std::cout << "b=" << rep.b << " rate=" << rep.rate
                << " stderr=" << rep.mc_stderr << "\n";
    std::cout << "-> " << pow_flags.out << "\n";
    return 0;
  }

  if (smooth_cmd->parsed()) {
    const auto records = pb::load_long_csv(smooth_in);
    pb::SmoothConfig cfg;
    cfg.grid = pb::make_grid(smooth_G);
    cfg.min_points = smooth_min_points;
    if (smooth_bandwidth > 0.0) {
      cfg.bandwidth = smooth_bandwidth;
    } else {
      std::size_t per_cell = records.empty() ? 1 : records.size();
      std::set<std::pair<std::string, long>> cells;
      for (const auto& rec : records) cells.insert({rec.unit, rec.period});
      if (!cells.empty()) per_cell = records.size() / cells.size();
      cfg.bandwidth = std::min(1.0, pb::default_bandwidth(std::max<std::size_t>(per_cell, 1)));
    }
    const pb::BuiltPanel built = pb::build_panel(records, cfg);
    pb::save_panel_csv(built.panel, smooth_out);
    json meta{{"command", "smooth"},
              {"config",
               {{"in", smooth_in},
                {"grid", smooth_G},
                {"bandwidth", cfg.bandwidth},
                {"min_points", cfg.min_points}}},
              {"seed", 0},
              {"threads", threads},
              {"units", built.units},
              {"periods", built.periods},
              {"outputs", {{"panel_csv", smooth_out}}}};
    write_meta(meta_path(smooth_out), meta, timer);
    std::cout << "smoothed " << built.units.size() << " units x "
              << built.periods.size() << " periods -> " << smooth_out << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const pb::DegenerateScaleError& e) {
    std::cerr << "error (degenerate): " << e.what() << "\n";
    return 3;
  } catch (const pb::ParseError& e) {
    std::cerr << "error (data): " << e.what() << "\n";
    return 2;
  } catch (const pb::StructuralError& e) {
    std::cerr << "error (data): " << e.what() << "\n";
    return 2;
  } catch (const pb::SparseDataError& e) {
    std::cerr << "error (data): " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (config): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
