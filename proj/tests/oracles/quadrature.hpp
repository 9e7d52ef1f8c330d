#pragma once

// Direct numerical integration of propagator products, for checking the
// closed-form chamber integrals.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

using boost::math::quadrature::gauss_kronrod;

inline double propagator(double x, double y, double alpha) {
  const double r = std::sqrt(alpha);
  return std::exp(-r * std::abs(x - y)) / (2.0 * r);
}

/// ∫_{−∞}^{∞} f(s) ds split at the given kinks.
template <class F>
double integrate_line(F f, std::vector<double> kinks) {
  std::sort(kinks.begin(), kinks.end());
  const double inf = std::numeric_limits<double>::infinity();
  double total = gauss_kronrod<double, 61>::integrate(f, -inf, kinks.front(), 15, 1e-13);
  for (std::size_t i = 0; i + 1 < kinks.size(); ++i) {
    if (kinks[i + 1] > kinks[i]) total += gauss_kronrod<double, 61>::integrate(f, kinks[i], kinks[i + 1], 15, 1e-13);
  }
  total += gauss_kronrod<double, 61>::integrate(f, kinks.back(), inf, 15, 1e-13);
  return total;
}

/// ∫_{−∞}^0 dτ₁ ∫_0^∞ dτ₂ f(τ₁, τ₂).
template <class F>
double integrate_wedge(F f) {
  const double inf = std::numeric_limits<double>::infinity();
  auto inner = [&](double t1) {
    return gauss_kronrod<double, 31>::integrate([&](double t2) { return f(t1, t2); }, 0.0, inf, 10, 1e-11);
  };
  return gauss_kronrod<double, 31>::integrate(inner, -inf, 0.0, 10, 1e-11);
}

}  // namespace oracle
