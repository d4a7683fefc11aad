#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "panelband/errors.hpp"
#include "panelband/panel.hpp"
#include "panelband/smoothing.hpp"

namespace panelband {

/// One long-format observation, e.g. a city's temperature on one day.
struct RawRecord {
  std::string unit;
  long period = 0;
  double position = 0.0;  // within-period position in [0,1]
  double value = 0.0;
  bool missing = false;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace detail

/// Parse a long-format CSV with header `unit,period,position,value`.
/// Blank or "NA" value fields become missing observations.
inline std::vector<RawRecord> load_long_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty file: " + path, 1);
  ++lineno;
  const auto header = detail::split_csv(line);
  if (header != std::vector<std::string>{"unit", "period", "position", "value"})
    throw ParseError("expected header unit,period,position,value", lineno);

  std::vector<RawRecord> records;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 4)
      throw ParseError("expected 4 fields, got " + std::to_string(fields.size()),
                       lineno);
    RawRecord rec;
    rec.unit = fields[0];
    if (rec.unit.empty()) throw ParseError("empty unit", lineno);
    try {
      std::size_t pos = 0;
      rec.period = std::stol(fields[1], &pos);
      if (pos != fields[1].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError("bad period '" + fields[1] + "'", lineno);
    }
    try {
      std::size_t pos = 0;
      rec.position = std::stod(fields[2], &pos);
      if (pos != fields[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError("bad position '" + fields[2] + "'", lineno);
    }
    if (!(rec.position >= 0.0 && rec.position <= 1.0))
      throw ParseError("position " + fields[2] + " outside [0,1]", lineno);
    if (fields[3].empty() || fields[3] == "NA") {
      rec.missing = true;
    } else {
      try {
        std::size_t pos = 0;
        rec.value = std::stod(fields[3], &pos);
        if (pos != fields[3].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("bad value '" + fields[3] + "'", lineno);
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

struct BuiltPanel {
  PanelSeries panel;
  std::vector<std::string> units;    // column order, sorted lexicographically
  std::vector<long> periods;         // row order, sorted ascending
};

/// Smooth every (unit, period) cell into a curve and stack the curves into
/// a panel: rows are sorted periods, columns sorted units. The index set
/// must be rectangular; missing values are dropped before each local fit.
inline BuiltPanel build_panel(const std::vector<RawRecord>& records,
                              const SmoothConfig& cfg) {
  cfg.validate();
  using Cell = std::pair<std::string, long>;
  std::map<Cell, std::vector<std::pair<double, double>>> cells;
  std::set<std::string> unit_set;
  std::set<long> period_set;
  for (const auto& rec : records) {
    unit_set.insert(rec.unit);
    period_set.insert(rec.period);
    auto& cell = cells[{rec.unit, rec.period}];
    if (!rec.missing) cell.emplace_back(rec.position, rec.value);
  }
  if (cells.empty()) throw StructuralError("build_panel: no records");

  const std::vector<std::string> units(unit_set.begin(), unit_set.end());
  const std::vector<long> periods(period_set.begin(), period_set.end());
  std::string missing_cells;
  for (const auto& u : units)
    for (const long p : periods)
      if (!cells.count({u, p})) {
        if (!missing_cells.empty()) missing_cells += ", ";
        missing_cells += u + "/" + std::to_string(p);
      }
  if (!missing_cells.empty())
    throw StructuralError("build_panel: missing cells: " + missing_cells);

  const int n = static_cast<int>(periods.size());
  const int r = static_cast<int>(units.size());
  const int G = cfg.grid.size();
  Matrix data(n, static_cast<Eigen::Index>(r) * G);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j) {
      const auto& pts = cells.at({units[j], periods[i]});
      try {
        data.row(i).segment(static_cast<Eigen::Index>(j) * G, G) =
            local_linear_smooth(pts, cfg);
      } catch (const SparseDataError& e) {
        throw SparseDataError("cell unit=" + units[j] + " period=" +
                                  std::to_string(periods[i]) + ": " + e.what(),
                              e.grid_point());
      }
    }
  return BuiltPanel{PanelSeries(std::move(data), cfg.grid, r), units, periods};
}

}  // namespace panelband
