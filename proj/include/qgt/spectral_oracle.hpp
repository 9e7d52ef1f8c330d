#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <vector>

#include "qgt/perturbation.hpp"

namespace qgt {

struct OracleConfig {
  int basis_size = 128;
  /// ω of the number basis; √α when unset.
  std::optional<double> reference_frequency;
  /// Per-parameter central-difference steps; unset entries use the defaults
  /// h_α = 1e-4·α, h_λ = 1e-4·α^{3/2}, h_J = 1e-4·α^{3/4}.
  std::map<Parameter, double> fd_step;
  double eigen_tolerance = 1e-12;
  /// Also solve at 2N and report the drift of every entry.
  bool basis_check = false;

  void validate() const;
  [[nodiscard]] double frequency(double alpha) const;
  [[nodiscard]] double step(Parameter p, double alpha) const;
};

struct ParameterPoint {
  double alpha = 1.0;
  double lambda = 0.0;
  double j = 0.0;

  [[nodiscard]] double get(Parameter p) const;
  [[nodiscard]] ParameterPoint shifted(Parameter p, double delta) const;
};

/// H = p²/2 + αq²/2 + Jq + λV(q) in the number basis of an oscillator of
/// frequency ω.
Eigen::MatrixXd build_hamiltonian(const ParameterPoint& point, const PolynomialPotential& potential,
                                  const OracleConfig& config);

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXd vector;
};

/// Smallest eigenpair, normalized, largest-magnitude entry made positive.
GroundState ground_state(const Eigen::MatrixXd& h, double tolerance = 1e-12);

/// Sign convention applied by ground_state.
void fix_gauge(Eigen::VectorXd& v);

/// ground_state of build_hamiltonian, rejecting bases whose top 10% carry
/// more than 1e-10 of the weight.
GroundState solve_point(const ParameterPoint& point, const PolynomialPotential& potential,
                        const OracleConfig& config);

struct NumericQGT {
  std::vector<Parameter> labels;
  Eigen::MatrixXd metric;
  /// |g(h) − g(h/2)| per entry.
  Eigen::MatrixXd step_error;
  /// |g(2N) − g(N)| per entry, when config.basis_check is set.
  std::optional<Eigen::MatrixXd> basis_drift;

  [[nodiscard]] double at(Parameter a, Parameter b) const;
  [[nodiscard]] double error(Parameter a, Parameter b) const;
};

/// g_ab = ⟨∂_aψ|∂_bψ⟩ − ⟨∂_aψ|ψ⟩⟨ψ|∂_bψ⟩ from central differences of the
/// ground state.
NumericQGT numeric_qim(const ParameterPoint& point, const PolynomialPotential& potential,
                       const std::vector<Parameter>& labels, const OracleConfig& config = {});

/// Second estimator: 2(1 − F)/δ² from ground-state fidelities, symmetrized
/// over ±δ. `scale` multiplies the configured steps.
NumericQGT fidelity_qim(const ParameterPoint& point, const PolynomialPotential& potential,
                        const std::vector<Parameter>& labels, const OracleConfig& config = {},
                        double scale = 10.0);

}  // namespace qgt
