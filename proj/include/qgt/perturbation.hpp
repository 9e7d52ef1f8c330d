#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qgt/propagator.hpp"
#include "qgt/rational.hpp"
#include "qgt/wick.hpp"

namespace qgt {

/// Coordinates on parameter space.
enum class Parameter { Alpha, Lambda, J };

std::string to_string(Parameter p);
Parameter parse_parameter(std::string_view text);

/// V(q) = Σ_n c_n q^n.
struct PolynomialPotential {
  std::map<int, Rational> coefficients;

  /// q^k / k!
  static PolynomialPotential monomial(int k);

  [[nodiscard]] bool is_monomial() const;
  /// Highest power with a nonzero coefficient.
  [[nodiscard]] int degree() const;
  [[nodiscard]] double eval(double q) const;
};

/// O_a = prefactor · q^power, the operator multiplying δλ^a in the Lagrangian.
struct DeformationOperator {
  Parameter parameter = Parameter::Alpha;
  int q_power = 2;
  Rational prefactor{-1, 2};
};

/// O_α = −q²/2, O_λ = −V(q) (monomial V only), O_J = −q.
DeformationOperator deformation_operator(Parameter p, const PolynomialPotential& potential);

inline constexpr int kDefaultMaxOrder = 2;

/// Expansion of interacting correlators in the coupling λ of λ·V(q) to
/// order λ^order around the free (optionally source-shifted) oscillator.
struct PerturbativeExpansion {
  int order = 1;
  PolynomialPotential interaction = PolynomialPotential::monomial(4);
  GaussianModel reference{};
  int max_order = kDefaultMaxOrder;

  /// Throws OrderOverflow / invalid_argument for unusable settings.
  void validate() const;
  [[nodiscard]] int vertex_degree() const { return interaction.degree(); }
  /// (−λ c_k)^m / m!, the weight of m interaction vertices.
  [[nodiscard]] ScalarSeries vertex_weight(int m) const;
};

/// Numerator and denominator series of the interacting n-point function and
/// their ratio expanded as a power series in λ.
struct GreenFunctionSeries {
  Correlator numerator;
  Correlator denominator;
  Correlator value;
};

GreenFunctionSeries interacting_green(const std::vector<InsertionPoint>& points,
                                      const PerturbativeExpansion& expansion);

/// ⟨q^{a}(τ₁) q^{b}(τ₂)⟩ − ⟨q^{a}(τ₁)⟩⟨q^{b}(τ₂)⟩ in the interacting theory,
/// truncated at λ^order. Operator prefactors are not applied.
Correlator connected_integrand(const DeformationOperator& a, const DeformationOperator& b,
                               const PerturbativeExpansion& expansion);

/// The vertex-integrand of order m: the λ^m part of `correlator` with the
/// weight (−λ/k!)^m/m! stripped, so the first-order part reads I in
/// −(λ/k!) ∫ds I.
Correlator vertex_integrand(const Correlator& correlator, int m, const PerturbativeExpansion& expansion);

/// One line per term: "<coefficient> <propagator product>", canonical order.
std::string integrand_text(const Correlator& integrand);

/// True when some term contains a vertex (or group of vertices) with no path
/// to τ₁ or τ₂.
bool has_vacuum_component(const Correlator& c);

}  // namespace qgt
