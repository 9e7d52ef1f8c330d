#include "qgt/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qgt/errors.hpp"

namespace qgt {

std::string to_string(Parameter p) {
  switch (p) {
    case Parameter::Alpha:
      return "alpha";
    case Parameter::Lambda:
      return "lambda";
    case Parameter::J:
      return "j";
  }
  return "?";
}

Parameter parse_parameter(std::string_view text) {
  if (text == "alpha" || text == "a") return Parameter::Alpha;
  if (text == "lambda" || text == "l") return Parameter::Lambda;
  if (text == "j" || text == "J") return Parameter::J;
  throw std::invalid_argument("unknown parameter '" + std::string(text) + "'");
}

PolynomialPotential PolynomialPotential::monomial(int k) {
  if (k < 1) throw std::invalid_argument("potential degree must be >= 1");
  PolynomialPotential v;
  v.coefficients[k] = Rational(1) / Rational::factorial(static_cast<unsigned>(k));
  return v;
}

bool PolynomialPotential::is_monomial() const {
  int nonzero = 0;
  for (const auto& [n, c] : coefficients) nonzero += c.is_zero() ? 0 : 1;
  return nonzero == 1;
}

int PolynomialPotential::degree() const {
  int d = 0;
  for (const auto& [n, c] : coefficients) {
    if (!c.is_zero()) d = std::max(d, n);
  }
  return d;
}

double PolynomialPotential::eval(double q) const {
  double v = 0.0;
  for (const auto& [n, c] : coefficients) v += c.to_double() * std::pow(q, n);
  return v;
}

DeformationOperator deformation_operator(Parameter p, const PolynomialPotential& potential) {
  switch (p) {
    case Parameter::Alpha:
      return {p, 2, Rational(-1, 2)};
    case Parameter::J:
      return {p, 1, Rational(-1)};
    case Parameter::Lambda: {
      if (!potential.is_monomial()) {
        throw std::invalid_argument("the symbolic pipeline supports monomial potentials only");
      }
      const int k = potential.degree();
      return {p, k, -potential.coefficients.at(k)};
    }
  }
  throw std::invalid_argument("unknown parameter");
}

void PerturbativeExpansion::validate() const {
  if (order < 0) throw std::invalid_argument("perturbative order must be >= 0");
  if (order > max_order) throw OrderOverflow(order, max_order);
  if (!interaction.is_monomial() || interaction.degree() < 1) {
    throw std::invalid_argument("interaction must be a single monomial c_k q^k with k >= 1");
  }
}

ScalarSeries PerturbativeExpansion::vertex_weight(int m) const {
  const Rational c = interaction.coefficients.at(vertex_degree());
  const Rational w = (-c).pow(m) / Rational::factorial(static_cast<unsigned>(m));
  return ScalarSeries::monomial(w, 0, static_cast<unsigned>(m));
}

namespace {

std::vector<InsertionPoint> with_vertices(std::vector<InsertionPoint> points, int m, int k) {
  for (int i = 1; i <= m; ++i) points.push_back({TimeVar::vertex(i), k});
  return points;
}

// 1/(1 + X) = Σ (−X)^n with X = D − 1 carrying at least one power of λ.
Correlator inverse_series(const Correlator& d, unsigned order) {
  Correlator x = d - Correlator::constant(ScalarSeries(1));
  Correlator minus_x = x * ScalarSeries(-1);
  Correlator result = Correlator::constant(ScalarSeries(1));
  Correlator power = Correlator::constant(ScalarSeries(1));
  for (unsigned n = 1; n <= order; ++n) {
    power = multiply_truncated(power, minus_x, order);
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

}  // namespace

GreenFunctionSeries interacting_green(const std::vector<InsertionPoint>& points,
                                      const PerturbativeExpansion& expansion) {
  expansion.validate();
  const int k = expansion.vertex_degree();
  GreenFunctionSeries out;
  for (int m = 0; m <= expansion.order; ++m) {
    const ScalarSeries w = expansion.vertex_weight(m);
    out.numerator += moment(expansion.reference, with_vertices(points, m, k)) * w;
    out.denominator += moment(expansion.reference, with_vertices({}, m, k)) * w;
  }
  const auto order = static_cast<unsigned>(expansion.order);
  out.value = multiply_truncated(out.numerator, inverse_series(out.denominator, order), order);
  return out;
}

Correlator connected_integrand(const DeformationOperator& a, const DeformationOperator& b,
                               const PerturbativeExpansion& expansion) {
  const std::vector<InsertionPoint> pa{{TimeVar::tau1(), a.q_power}};
  const std::vector<InsertionPoint> pb{{TimeVar::tau2(), b.q_power}};
  std::vector<InsertionPoint> joint = pa;
  joint.insert(joint.end(), pb.begin(), pb.end());

  const auto order = static_cast<unsigned>(expansion.order);
  const Correlator full = interacting_green(joint, expansion).value;
  const Correlator left = interacting_green(pa, expansion).value;
  const Correlator right = interacting_green(pb, expansion).value;
  return full - multiply_truncated(left, right, order);
}

Correlator vertex_integrand(const Correlator& correlator, int m,
                            const PerturbativeExpansion& expansion) {
  const Rational c = expansion.interaction.coefficients.at(expansion.vertex_degree());
  const Rational unweight = Rational::factorial(static_cast<unsigned>(m)) / (-c).pow(m);
  Correlator out;
  for (const auto& [p, coeff] : correlator.terms()) {
    ScalarSeries part;
    for (const auto& t : coeff.lambda_coefficient(static_cast<unsigned>(m)).terms()) {
      part += ScalarSeries(ScalarTerm{t.coeff * unweight, t.alpha_half_pow, 0, t.j_pow});
    }
    out.add(p, part);
  }
  return out;
}

std::string integrand_text(const Correlator& integrand) {
  std::ostringstream os;
  for (const auto& [p, c] : integrand.terms()) os << c.str() << " " << p.str() << "\n";
  return os.str();
}

bool has_vacuum_component(const Correlator& c) {
  for (const auto& [p, coeff] : c.terms()) {
    for (int i = 1; i <= p.vertex_count; ++i) {
      std::vector<TimeVar> component{TimeVar::vertex(i)};
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& e : p.edges) {
          const bool has_a = std::find(component.begin(), component.end(), e.a) != component.end();
          const bool has_b = std::find(component.begin(), component.end(), e.b) != component.end();
          if (has_a != has_b) {
            component.push_back(has_a ? e.b : e.a);
            grew = true;
          }
        }
      }
      const bool external = std::any_of(component.begin(), component.end(),
                                        [](const TimeVar& v) { return !v.is_vertex(); });
      if (!external) return true;
    }
  }
  return false;
}

}  // namespace qgt
