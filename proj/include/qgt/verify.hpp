#pragma once

#include <string>
#include <vector>

#include "qgt/geometric_tensor.hpp"
#include "qgt/spectral_oracle.hpp"

namespace qgt {

struct Check {
  std::string name;
  bool pass = false;
  double delta = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] double max_delta() const;
  void append(const VerifyReport& other);
};

struct VerifyOptions {
  QgtOptions symbolic;
  OracleConfig oracle;
};

/// Symbolic pipeline against the closed forms, then closed form, wavefunction
/// quadrature, spectral oracle and series evaluation pairwise on
/// α ∈ {0.5, 1, 2} × J ∈ {0, 0.5}.
VerifyReport verify_linear(const VerifyOptions& options = {});

/// First-order quartic series, determinant and λ_c against their known
/// exact values; free-theory oracle at α ∈ {0.5, 1, 2}; λ² scaling of the
/// oracle deviation at α = 1.
VerifyReport verify_quartic(const VerifyOptions& options = {});

VerifyReport verify_all(const VerifyOptions& options = {});

/// |a − b| / max(|a|, |b|), or |a − b| when both are below `floor`.
double relative_delta(double a, double b, double floor = 1e-12);

/// Least-squares slope of log|y| against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qgt
