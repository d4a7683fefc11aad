#pragma once

#include <stdexcept>
#include <string>

namespace panelband {

/// Every pointwise scale is zero (or numerically indistinguishable from
/// zero): a self-normalized sup-statistic cannot be formed.
class DegenerateScaleError : public std::runtime_error {
 public:
  explicit DegenerateScaleError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  explicit ParseError(const std::string& what)
      : std::runtime_error(what), line_(-1) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

/// Too few observations near a grid point for a local fit.
class SparseDataError : public std::runtime_error {
 public:
  SparseDataError(const std::string& what, double grid_point)
      : std::runtime_error(what + " (grid point u=" +
                           std::to_string(grid_point) + ")"),
        grid_point_(grid_point) {}
  double grid_point() const noexcept { return grid_point_; }

 private:
  double grid_point_;
};

/// Ragged (unit, period) index set: the panel cannot be assembled.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace panelband
