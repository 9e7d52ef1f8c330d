#pragma once

#include <string>
#include <vector>

#include "qgt/geometric_tensor.hpp"

namespace qgt {

/// Ground state of p²/2 + αq²/2 + Jq:
/// Ψ(q) = (√α/π)^{1/4} exp(−(√α/2)(q + J/α)²).
struct ShiftedGaussianState {
  double alpha = 1.0;
  double j = 0.0;

  ShiftedGaussianState(double alpha, double j);

  [[nodiscard]] double center() const { return -j / alpha; }
  [[nodiscard]] double operator()(double q) const;
  /// Half width of the quadrature window around the center.
  [[nodiscard]] double window() const;
};

/// Closed-form metric and connections of the linear model.
struct ExactLinearQgt {
  double g_alpha_alpha = 0.0;
  double g_alpha_j = 0.0;
  double g_j_j = 0.0;
  double connection_alpha = 0.0;  // ⟨∂_αΨ|Ψ⟩
  double connection_j = 0.0;      // ⟨∂_JΨ|Ψ⟩

  [[nodiscard]] double component(Parameter a, Parameter b) const;
};

ExactLinearQgt exact_linear_qgt(double alpha, double j);

/// The same closed forms as exact series in α and J.
ComponentMap exact_linear_series();

struct OverlapCheck {
  std::string name;
  double numeric = 0.0;
  double closed_form = 0.0;
  double deviation = 0.0;  // relative when the closed form is nonzero, else absolute
  bool pass = false;
};

struct OverlapReport {
  double alpha = 0.0;
  double j = 0.0;
  double norm = 0.0;
  std::vector<OverlapCheck> checks;
  [[nodiscard]] bool pass() const;
  [[nodiscard]] double max_deviation() const;
};

/// ∫|Ψ|² dq by adaptive quadrature.
double wavefunction_norm(double alpha, double j);

/// Quadrature over q of central-difference parameter derivatives of Ψ,
/// compared with the closed forms. Overlaps use relative tolerance
/// `tolerance`; the vanishing connections use absolute `zero_tolerance`.
OverlapReport overlap_derivative_checks(double alpha, double j, double step,
                                        double tolerance = 1e-6, double zero_tolerance = 1e-8);

}  // namespace qgt
