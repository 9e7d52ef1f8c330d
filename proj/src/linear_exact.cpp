#include "qgt/linear_exact.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qgt/errors.hpp"

namespace qgt {

ShiftedGaussianState::ShiftedGaussianState(double alpha_, double j_) : alpha(alpha_), j(j_) {
  if (!(alpha > 0.0)) throw NonPositiveAlpha(alpha);
}

double ShiftedGaussianState::operator()(double q) const {
  const double root = std::sqrt(alpha);
  const double x = q + j / alpha;
  return std::pow(root / std::numbers::pi, 0.25) * std::exp(-0.5 * root * x * x);
}

double ShiftedGaussianState::window() const { return 12.0 / std::pow(alpha, 0.25); }

double ExactLinearQgt::component(Parameter a, Parameter b) const {
  if (a == Parameter::Alpha && b == Parameter::Alpha) return g_alpha_alpha;
  if (a == Parameter::J && b == Parameter::J) return g_j_j;
  if (a != Parameter::Lambda && b != Parameter::Lambda) return g_alpha_j;
  throw std::invalid_argument("the linear model has no lambda component");
}

ExactLinearQgt exact_linear_qgt(double alpha, double j) {
  if (!(alpha > 0.0)) throw NonPositiveAlpha(alpha);
  ExactLinearQgt r;
  r.g_alpha_alpha = 1.0 / (32.0 * alpha * alpha) + j * j / (2.0 * std::pow(alpha, 3.5));
  r.g_alpha_j = -j / (2.0 * std::pow(alpha, 2.5));
  r.g_j_j = 1.0 / (2.0 * std::pow(alpha, 1.5));
  return r;
}

ComponentMap exact_linear_series() {
  const auto aa = ScalarSeries::monomial(Rational(1, 32), -4) + ScalarSeries::monomial(Rational(1, 2), -7, 0, 2);
  const auto aj = ScalarSeries::monomial(Rational(-1, 2), -5, 0, 1);
  const auto jj = ScalarSeries::monomial(Rational(1, 2), -3);
  return {{{Parameter::Alpha, Parameter::Alpha}, aa},
          {{Parameter::Alpha, Parameter::J}, aj},
          {{Parameter::J, Parameter::Alpha}, aj},
          {{Parameter::J, Parameter::J}, jj}};
}

bool OverlapReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const OverlapCheck& c) { return c.pass; });
}

double OverlapReport::max_deviation() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.deviation);
  return m;
}

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

template <class F>
double integrate_window(F f, const ShiftedGaussianState& state) {
  using boost::math::quadrature::gauss_kronrod;
  const double c = state.center();
  const double w = state.window();
  double error = 0.0;
  const double value = gauss_kronrod<double, 61>::integrate(f, c - w, c + w, 15, 1e-12, &error);
  if (!std::isfinite(value) || error > 1e-8 * std::max(1.0, std::abs(value))) {
    throw QuadratureFailure("adaptive quadrature did not converge (error estimate " +
                            format_double(error) + " for value " + format_double(value) + ")");
  }
  return value;
}

}  // namespace

double wavefunction_norm(double alpha, double j) {
  const ShiftedGaussianState psi(alpha, j);
  return integrate_window([&](double q) { return psi(q) * psi(q); }, psi);
}

OverlapReport overlap_derivative_checks(double alpha, double j, double step, double tolerance,
                                        double zero_tolerance) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const ShiftedGaussianState psi(alpha, j);
  const ShiftedGaussianState a_plus(alpha + step, j), a_minus(alpha - step, j);
  const ShiftedGaussianState j_plus(alpha, j + step), j_minus(alpha, j - step);
  auto d_alpha = [&](double q) { return (a_plus(q) - a_minus(q)) / (2.0 * step); };
  auto d_j = [&](double q) { return (j_plus(q) - j_minus(q)) / (2.0 * step); };

  OverlapReport report;
  report.alpha = alpha;
  report.j = j;
  report.norm = integrate_window([&](double q) { return psi(q) * psi(q); }, psi);

  const double aa = integrate_window([&](double q) { return d_alpha(q) * d_alpha(q); }, psi);
  const double aj = integrate_window([&](double q) { return d_alpha(q) * d_j(q); }, psi);
  const double jj = integrate_window([&](double q) { return d_j(q) * d_j(q); }, psi);
  const double ca = integrate_window([&](double q) { return d_alpha(q) * psi(q); }, psi);
  const double cj = integrate_window([&](double q) { return d_j(q) * psi(q); }, psi);

  const ExactLinearQgt exact = exact_linear_qgt(alpha, j);
  auto check = [&](std::string name, double numeric, double closed) {
    OverlapCheck c{std::move(name), numeric, closed, 0.0, false};
    if (closed == 0.0) {
      c.deviation = std::abs(numeric);
      c.pass = c.deviation <= zero_tolerance;
    } else {
      c.deviation = std::abs(numeric - closed) / std::abs(closed);
      c.pass = c.deviation <= tolerance;
    }
    report.checks.push_back(std::move(c));
  };
  check("<dA psi|dA psi>", aa, exact.g_alpha_alpha);
  check("<dA psi|dJ psi>", aj, exact.g_alpha_j);
  check("<dJ psi|dJ psi>", jj, exact.g_j_j);
  check("<dA psi|psi>", ca, exact.connection_alpha);
  check("<dJ psi|psi>", cj, exact.connection_j);
  return report;
}

}  // namespace qgt
