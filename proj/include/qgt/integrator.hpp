#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgt/propagator.hpp"
#include "qgt/scalar_series.hpp"

namespace qgt {

/// Increasing total order of the variables still to be integrated. The
/// wedge constraint τ₁ ≤ 0 ≤ τ₂ is implied by the variables' domains and is
/// not stored; only τ₁ before τ₂ is enforced.
struct Chamber {
  std::vector<TimeVar> ordering;

  [[nodiscard]] std::string str() const;
  friend auto operator<=>(const Chamber&, const Chamber&) = default;
  friend bool operator==(const Chamber&, const Chamber&) = default;
};

/// scalar · ∏ t^{monomial[t]} · exp(√α Σ rates[t]·t), valid on `chamber`.
struct ExpPolyTerm {
  ScalarTerm scalar{Rational(1)};
  std::map<TimeVar, unsigned> monomial;
  std::map<TimeVar, Rational> rates;
  Chamber chamber;

  [[nodiscard]] Rational rate(const TimeVar& v) const;
  [[nodiscard]] unsigned degree(const TimeVar& v) const;
  [[nodiscard]] std::string str() const;
};

struct IntegrationOptions {
  /// Sign of α. For α ≤ 0 no propagator decays, so every unbounded
  /// integration is reported as divergent.
  int alpha_sign = 1;
  /// Order in which interaction vertices are integrated (innermost first).
  /// Empty means ascending s1, s2, ...
  std::vector<TimeVar> vertex_order;
  /// Integrate τ₁ before τ₂ instead of the default τ₂ then τ₁.
  bool tau1_first = false;
};

/// Splits a propagator product into one exponential term per ordering of the
/// variables (τ₁ always before τ₂), replacing every |x−y| by its signed form.
std::vector<ExpPolyTerm> resolve_absolute_values(const PropagatorProduct& product,
                                                 const std::vector<TimeVar>& vars);

/// Integrates `var` between its chamber neighbours (vertices) or over its
/// half axis (τ₁, τ₂). Throws DivergentIntegral when the integrand does not
/// decay toward an infinite bound.
std::vector<ExpPolyTerm> integrate_innermost(const ExpPolyTerm& term, const TimeVar& var,
                                             const IntegrationOptions& options = {});

/// Integrates every variable of every term: vertices first, then τ₂ and τ₁.
ScalarSeries integrate_all(const std::vector<ExpPolyTerm>& terms,
                           const IntegrationOptions& options = {});

/// ∫_{−∞}^0 dτ₁ ∫_0^∞ dτ₂ ∫ds₁…ds_m of the product.
ScalarSeries integrate_wedge(const PropagatorProduct& product,
                             const IntegrationOptions& options = {});

/// Numeric value of the product at a point, for checks against quadrature.
double evaluate_product(const PropagatorProduct& product, const std::map<TimeVar, double>& at,
                        double alpha);

/// Numeric value of an ExpPolyTerm (ignores the chamber restriction).
double evaluate_term(const ExpPolyTerm& term, const std::map<TimeVar, double>& at, double alpha);

}  // namespace qgt
