#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgt/integrator.hpp"
#include "qgt/perturbation.hpp"
#include "qgt/scalar_series.hpp"

namespace qgt {

enum class ModelKind { LinearSource, Quartic, Monomial };

/// H = p²/2 + αq²/2 + λV(q) (+ Jq). LinearSource is the exactly solvable
/// V = 0 with a constant source; Quartic is V = q⁴/4!; Monomial(k) is q^k/k!.
struct Model {
  ModelKind kind = ModelKind::Quartic;
  int degree = 4;

  static Model linear_source() { return {ModelKind::LinearSource, 1}; }
  static Model quartic() { return {ModelKind::Quartic, 4}; }
  static Model monomial(int k);
  /// "linear", "quartic" or "monomial:k".
  static Model parse(std::string_view text);

  [[nodiscard]] std::string name() const;
  [[nodiscard]] PolynomialPotential potential() const;
  [[nodiscard]] bool has_interaction() const { return kind != ModelKind::LinearSource; }

  friend bool operator==(const Model&, const Model&) = default;
};

struct ParameterSpace {
  Model model;
  std::vector<Parameter> labels;

  /// (α, J) for the linear model, (α, λ) otherwise.
  static ParameterSpace standard(const Model& model);

  /// Labels distinct, α present, λ only with an interaction.
  void validate() const;
  [[nodiscard]] bool has(Parameter p) const;
};

using ComponentIndex = std::pair<Parameter, Parameter>;
using ComponentMap = std::map<ComponentIndex, ScalarSeries>;

struct QgtOptions {
  /// Truncation order in λ (ignored by the exact linear model).
  int order = 1;
  int max_order = kDefaultMaxOrder;
  /// Replaces the operator prefactor of a parameter (fault injection in
  /// verification tests).
  std::map<Parameter, Rational> prefactor_override;
  IntegrationOptions integration;
};

/// Conventions recorded alongside every result.
inline constexpr std::string_view kFidelityConvention = "F = 1 - (1/2) G_ab dl^a dl^b";

struct QGTResult {
  ParameterSpace space;
  int order = 0;
  ComponentMap components;
  ComponentMap metric;
  ComponentMap curvature;
};

/// Operator prefactor of O_a = prefactor · q^n for the model.
Rational operator_prefactor(const Model& model, Parameter p);

/// prefactor_a · prefactor_b · ∫_{−∞}^0 dτ₁ ∫_0^∞ dτ₂ ⟨O_a(τ₁) O_b(τ₂)⟩_c.
ScalarSeries qgt_component(const ParameterSpace& space, Parameter a, Parameter b,
                           const QgtOptions& options = {});

/// The connected correlator integrated by qgt_component, before prefactors.
Correlator component_integrand(const ParameterSpace& space, Parameter a, Parameter b,
                               const QgtOptions& options = {});

/// Symmetric and antisymmetric parts of the full component map.
std::pair<ComponentMap, ComponentMap> metric_and_curvature(const ComponentMap& components);

QGTResult compute_qgt(const ParameterSpace& space, const QgtOptions& options = {});

struct CriticalCoupling {
  /// Exact root when the truncated determinant is linear in λ.
  std::optional<ScalarSeries> exact;
  /// λ_c = coefficient · α^{alpha_half_pow/2}; set whenever a positive root
  /// exists at this order.
  std::optional<double> coefficient;
  int alpha_half_pow = 0;
  int truncation_order = 0;
};

struct DeterminantResult {
  ScalarSeries determinant;
  CriticalCoupling critical;
};

/// det of the metric restricted to `labels`, truncated at λ^order, and the
/// smallest positive λ at which it vanishes.
DeterminantResult determinant_and_critical(const ComponentMap& metric,
                                           const std::vector<Parameter>& labels, int order);

}  // namespace qgt
