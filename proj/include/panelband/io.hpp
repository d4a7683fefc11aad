#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "panelband/errors.hpp"
#include "panelband/experiments.hpp"
#include "panelband/ingest.hpp"
#include "panelband/jscb.hpp"
#include "panelband/panel.hpp"
#include "panelband/simulate.hpp"

namespace panelband {

namespace detail {

inline std::string fmt_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void require_stream(const std::ofstream& out, const std::string& path) {
  if (!out) throw ParseError("cannot write " + path);
}

}  // namespace detail

/// Panel tensor format: comment lines start with '#'; the first data line
/// is `n,r,G`; then n*r lines (time-major, then panel) of G comma-separated
/// values. Values are printed with 17 significant digits so a round trip
/// is bit-exact.
inline void save_panel_csv(const PanelSeries& panel, const std::string& path) {
  std::ofstream out(path);
  detail::require_stream(out, path);
  out << "# panelband panel tensor v1\n";
  out << "# n,r,G then n*r rows of G values, row index = i*r + j\n";
  out << panel.n() << "," << panel.r() << "," << panel.G() << "\n";
  const int G = panel.G();
  for (int i = 0; i < panel.n(); ++i)
    for (int j = 0; j < panel.r(); ++j) {
      for (int g = 0; g < G; ++g) {
        if (g) out << ",";
        out << detail::fmt_full(panel(i, j, g));
      }
      out << "\n";
    }
}

inline PanelSeries load_panel_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  long lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      const auto t = detail::trim(line);
      if (!t.empty() && t[0] != '#') {
        line = t;
        return true;
      }
    }
    return false;
  };
  if (!next_line()) throw ParseError("missing n,r,G header in " + path, lineno);
  int n = 0, r = 0, G = 0;
  {
    const auto f = detail::split_csv(line);
    if (f.size() != 3) throw ParseError("expected n,r,G", lineno);
    try {
      n = std::stoi(f[0]);
      r = std::stoi(f[1]);
      G = std::stoi(f[2]);
    } catch (const std::exception&) {
      throw ParseError("bad n,r,G values", lineno);
    }
  }
  if (n < 1 || r < 1 || G < 2) throw ParseError("invalid dimensions", lineno);
  Matrix data(n, static_cast<Eigen::Index>(r) * G);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j) {
      if (!next_line())
        throw ParseError("unexpected end of tensor data", lineno);
      const auto f = detail::split_csv(line);
      if (static_cast<int>(f.size()) != G)
        throw ParseError("expected " + std::to_string(G) + " values, got " +
                             std::to_string(f.size()),
                         lineno);
      for (int g = 0; g < G; ++g) {
        try {
          data(i, static_cast<Eigen::Index>(j) * G + g) = std::stod(f[g]);
        } catch (const std::exception&) {
          throw ParseError("bad value '" + f[g] + "'", lineno);
        }
      }
    }
  return PanelSeries(std::move(data), make_grid(G), r);
}

inline std::string to_string(Model m) { return m == Model::PAR ? "PAR" : "PMA"; }
inline std::string to_string(Dist d) {
  return d == Dist::Normal ? "normal" : "scaled_t6";
}

inline Model model_from_string(const std::string& s) {
  if (s == "PAR") return Model::PAR;
  if (s == "PMA") return Model::PMA;
  throw std::invalid_argument("unknown model '" + s + "' (PAR or PMA)");
}

inline Dist dist_from_string(const std::string& s) {
  if (s == "normal") return Dist::Normal;
  if (s == "scaled_t6" || s == "t6") return Dist::ScaledT6;
  throw std::invalid_argument("unknown dist '" + s + "' (normal or scaled_t6)");
}

/// Flat key-value serialization of a SimConfig (keys: model, a, n, r, G,
/// K_trunc, burnin, dist, seed).
inline std::string serialize_sim_config(const SimConfig& cfg) {
  std::ostringstream out;
  out << "model=" << to_string(cfg.model) << "\n";
  out << "a=" << detail::fmt_full(cfg.a) << "\n";
  out << "n=" << cfg.n << "\n";
  out << "r=" << cfg.r << "\n";
  out << "G=" << cfg.G << "\n";
  out << "K_trunc=" << cfg.K_trunc << "\n";
  out << "burnin=" << cfg.burnin << "\n";
  out << "dist=" << to_string(cfg.dist) << "\n";
  out << "seed=" << cfg.seed << "\n";
  return out.str();
}

inline SimConfig parse_sim_config(std::istream& in) {
  SimConfig cfg;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key=value, got '" + t + "'", lineno);
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string value = detail::trim(t.substr(eq + 1));
    try {
      if (key == "model") cfg.model = model_from_string(value);
      else if (key == "a") cfg.a = std::stod(value);
      else if (key == "n") cfg.n = std::stoi(value);
      else if (key == "r") cfg.r = std::stoi(value);
      else if (key == "G") cfg.G = std::stoi(value);
      else if (key == "K_trunc") cfg.K_trunc = std::stoi(value);
      else if (key == "burnin") cfg.burnin = std::stoi(value);
      else if (key == "dist") cfg.dist = dist_from_string(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad config entry: ") + e.what(), lineno);
    }
  }
  cfg.validate();
  return cfg;
}

inline SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_sim_config(in);
}

/// Wide band CSV: u, then lower_j, center_j, upper_j for each panel.
inline void write_bands_csv(const BandSet& bands, const Grid& grid,
                            const std::string& path,
                            const std::vector<std::string>& labels = {}) {
  std::ofstream out(path);
  detail::require_stream(out, path);
  const int r = static_cast<int>(bands.center.rows());
  const int G = static_cast<int>(bands.center.cols());
  out << "u";
  for (int j = 0; j < r; ++j) {
    const std::string lab =
        labels.empty() ? std::to_string(j + 1) : labels[j];
    out << ",lower_" << lab << ",center_" << lab << ",upper_" << lab;
  }
  out << "\n";
  const Matrix lo = bands.lower(), hi = bands.upper();
  for (int g = 0; g < G; ++g) {
    out << detail::fmt_full(grid[g]);
    for (int j = 0; j < r; ++j)
      out << "," << detail::fmt_full(lo(j, g)) << ","
          << detail::fmt_full(bands.center(j, g)) << ","
          << detail::fmt_full(hi(j, g));
    out << "\n";
  }
}

/// Square pairwise p-value CSV with unit labels; diagonal left empty.
inline void write_pvalues_csv(const Matrix& pvalues,
                              const std::vector<std::string>& labels,
                              const std::string& path) {
  std::ofstream out(path);
  detail::require_stream(out, path);
  const int r = static_cast<int>(pvalues.rows());
  out << "unit";
  for (int j = 0; j < r; ++j) out << "," << labels[j];
  out << "\n";
  for (int j = 0; j < r; ++j) {
    out << labels[j];
    for (int k = 0; k < r; ++k) {
      out << ",";
      if (j != k) out << detail::fmt_full(pvalues(j, k));
    }
    out << "\n";
  }
}

/// Bootstrap replicate values as a single-column CSV.
inline void write_replicates_csv(const std::vector<double>& replicates,
                                 const std::string& path) {
  std::ofstream out(path);
  detail::require_stream(out, path);
  out << "replicate\n";
  for (const double v : replicates) out << detail::fmt_full(v) << "\n";
}

inline std::string to_string(ExperimentMode m) {
  switch (m) {
    case ExperimentMode::Coverage: return "coverage";
    case ExperimentMode::TypeI: return "type1";
    case ExperimentMode::Power: return "power";
  }
  return "?";
}

/// One CSV row per Monte Carlo cell.
inline void write_reports_csv(const std::vector<ExperimentReport>& reports,
                              const std::string& path) {
  std::ofstream out(path);
  detail::require_stream(out, path);
  out << "mode,model,a,n,r,alpha,dist,b,R,B,mv,rate,stderr\n";
  for (const auto& rep : reports)
    out << to_string(rep.mode) << "," << to_string(rep.model) << "," << rep.a
        << "," << rep.n << "," << rep.r << "," << rep.alpha << ","
        << to_string(rep.dist) << "," << rep.b << "," << rep.R << "," << rep.B
        << "," << (rep.mv ? 1 : 0) << "," << detail::fmt_full(rep.rate) << ","
        << detail::fmt_full(rep.mc_stderr) << "\n";
}

/// Power curve as (b, rate, stderr) rows for external plotting.
inline void write_power_csv(const std::vector<ExperimentReport>& reports,
                            const std::string& path) {
  std::ofstream out(path);
  detail::require_stream(out, path);
  out << "b,rate,stderr\n";
  for (const auto& rep : reports)
    out << detail::fmt_full(rep.b) << "," << detail::fmt_full(rep.rate) << ","
        << detail::fmt_full(rep.mc_stderr) << "\n";
}

}  // namespace panelband
