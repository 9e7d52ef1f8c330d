#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qgt/geometric_tensor.hpp"
#include "qgt/spectral_oracle.hpp"

namespace qgt {

struct SweepGrid {
  std::vector<double> alphas{1.0};
  std::vector<double> lambdas{0.0};
  std::vector<double> js{0.0};

  /// Points in row order: α outermost, then λ, then J.
  [[nodiscard]] std::vector<ParameterPoint> points() const;
};

struct SweepEntry {
  double series = 0.0;
  double oracle = 0.0;
  double oracle_error = 0.0;
  double deviation = 0.0;  // oracle − series
};

struct SweepRow {
  ParameterPoint point;
  std::vector<SweepEntry> entries;  // upper triangle of the metric, row-major
  double determinant = 0.0;
  double critical_coupling = 0.0;  // NaN when no positive root
};

struct SweepResult {
  ParameterSpace space;
  int order = 0;
  std::vector<SweepRow> rows;
};

/// Evaluates the symbolic metric and the spectral oracle at every grid
/// point. Points are distributed over `workers` threads; rows come back in
/// grid order regardless.
SweepResult run_sweep(const ParameterSpace& space, const SweepGrid& grid, const QgtOptions& symbolic,
                      const OracleConfig& oracle, unsigned workers = 0);

void write_csv(std::ostream& os, const SweepResult& result);

}  // namespace qgt
