#include "qgt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qgt/linear_exact.hpp"

namespace qgt {

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double VerifyReport::max_delta() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.delta);
  return m;
}

void VerifyReport::append(const VerifyReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

double relative_delta(double a, double b, double floor) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < floor) return std::abs(a - b);
  return std::abs(a - b) / scale;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

std::string label(Parameter a, Parameter b) { return "G(" + to_string(a) + "," + to_string(b) + ")"; }

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double max_abs_coefficient(const ScalarSeries& s) {
  double m = 0.0;
  for (const auto& [key, c] : s.coefficients()) m = std::max(m, std::abs(c.to_double()));
  return m;
}

Check exact_check(const std::string& name, const ScalarSeries& got, const ScalarSeries& want) {
  const ScalarSeries diff = got - want;
  return {name, diff.is_zero(), max_abs_coefficient(diff), 0.0,
          diff.is_zero() ? got.str() : "got " + got.str() + ", expected " + want.str()};
}

std::vector<std::pair<Parameter, Parameter>> upper(const std::vector<Parameter>& labels) {
  std::vector<std::pair<Parameter, Parameter>> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t k = i; k < labels.size(); ++k) out.emplace_back(labels[i], labels[k]);
  }
  return out;
}

void curvature_checks(VerifyReport& report, const QGTResult& result) {
  for (const auto& [index, value] : result.curvature) {
    if (index.first >= index.second) continue;
    report.checks.push_back({"curvature F(" + to_string(index.first) + "," + to_string(index.second) + ") = 0",
                             value.is_zero(), max_abs_coefficient(value), 0.0, value.str()});
  }
}

}  // namespace

VerifyReport verify_linear(const VerifyOptions& options) {
  VerifyReport report;
  const auto space = ParameterSpace::standard(Model::linear_source());
  const QGTResult result = compute_qgt(space, options.symbolic);
  const ComponentMap exact = exact_linear_series();
  for (const auto& [a, b] : upper(space.labels)) {
    report.checks.push_back(exact_check("symbolic " + label(a, b) + " closed form", result.metric.at({a, b}),
                                        exact.at({a, b})));
  }
  curvature_checks(report, result);

  constexpr double kTol = 1e-6;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double j : {0.0, 0.5}) {
      const auto closed = exact_linear_qgt(alpha, j);
      const auto overlaps = overlap_derivative_checks(alpha, j, 1e-5, kTol);
      const auto oracle = numeric_qim({alpha, 0.0, j}, {}, space.labels, options.oracle);
      const std::string where = fmt(" at alpha=%g j=%g", alpha, j);
      for (const auto& oc : overlaps.checks) {
        report.checks.push_back({"wavefunction " + oc.name + where, oc.pass, oc.deviation,
                                 oc.closed_form == 0.0 ? 1e-8 : kTol,
                                 fmt("quadrature %.12g, closed form %.12g", oc.numeric, oc.closed_form)});
      }
      const double values_closed[] = {closed.g_alpha_alpha, closed.g_alpha_j, closed.g_j_j};
      const double values_quad[] = {overlaps.checks[0].numeric, overlaps.checks[1].numeric,
                                    overlaps.checks[2].numeric};
      std::size_t i = 0;
      for (const auto& [a, b] : upper(space.labels)) {
        const double series = result.metric.at({a, b}).eval(alpha, 0.0, j);
        const double values[] = {values_closed[i], values_quad[i], oracle.at(a, b), series};
        double worst = 0.0;
        for (int x = 0; x < 4; ++x) {
          for (int y = x + 1; y < 4; ++y) worst = std::max(worst, relative_delta(values[x], values[y], 1e-9));
        }
        report.checks.push_back({"triangle " + label(a, b) + where, worst <= kTol, worst, kTol,
                                 fmt("closed %.12g, oracle %.12g, series %.12g", values[0], values[2], values[3])});
        ++i;
      }
    }
  }
  return report;
}

VerifyReport verify_quartic(const VerifyOptions& options) {
  VerifyReport report;
  const auto space = ParameterSpace::standard(Model::quartic());
  QgtOptions symbolic = options.symbolic;
  symbolic.order = 1;
  const QGTResult result = compute_qgt(space, symbolic);
  const auto A = Parameter::Alpha;
  const auto L = Parameter::Lambda;
  auto m = [](long n, long d, int h, unsigned l = 0) { return ScalarSeries::monomial(Rational(n, d), h, l); };

  report.checks.push_back(exact_check("symbolic " + label(A, A), result.metric.at({A, A}),
                                      m(1, 32, -4) + m(-11, 512, -7, 1)));
  report.checks.push_back(exact_check("symbolic " + label(L, L), result.metric.at({L, L}),
                                      m(13, 6144, -6) + m(-31, 12288, -9, 1)));
  report.checks.push_back(exact_check("symbolic " + label(A, L), result.metric.at({A, L}),
                                      m(1, 128, -5) + m(-89, 12288, -8, 1)));
  curvature_checks(report, result);
  const auto det = determinant_and_critical(result.metric, space.labels, 1);
  report.checks.push_back(exact_check("symbolic det", det.determinant, m(1, 196608, -10) + m(-35, 3145728, -13, 1)));
  if (det.critical.exact) {
    report.checks.push_back(exact_check("symbolic lambda_c", *det.critical.exact, m(16, 35, 3)));
  } else {
    report.checks.push_back({"symbolic lambda_c", false, 1.0, 0.0, "no positive root"});
  }

  const auto potential = Model::quartic().potential();
  for (double alpha : {0.5, 1.0, 2.0}) {
    const auto oracle = numeric_qim({alpha, 0.0, 0.0}, potential, space.labels, options.oracle);
    for (const auto& [a, b] : upper(space.labels)) {
      const double series = result.metric.at({a, b}).eval(alpha);
      const double d = relative_delta(oracle.at(a, b), series);
      report.checks.push_back({"free oracle " + label(a, b) + fmt(" at alpha=%g", alpha), d <= 1e-6, d, 1e-6,
                               fmt("oracle %.12g, series %.12g", oracle.at(a, b), series)});
    }
  }

  const std::vector<double> lambdas{0.02, 0.04, 0.08};
  std::vector<NumericQGT> points;
  for (double l : lambdas) points.push_back(numeric_qim({1.0, l, 0.0}, potential, space.labels, options.oracle));
  for (const auto& [a, b] : upper(space.labels)) {
    std::vector<double> dev;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      dev.push_back(points[i].at(a, b) - result.metric.at({a, b}).eval(1.0, lambdas[i]));
    }
    const bool nonzero = std::all_of(dev.begin(), dev.end(), [](double x) { return x != 0.0; });
    const double slope = nonzero ? log_log_slope(lambdas, dev) : 0.0;
    report.checks.push_back({"lambda^2 scaling " + label(a, b), std::abs(slope - 2.0) <= 0.3,
                             std::abs(slope - 2.0), 0.3,
                             fmt("slope %.4f, deviation at lambda=0.02 %.3e, 0.08 %.3e", slope, dev.front(), dev.back())});
  }
  const auto at_005 = numeric_qim({1.0, 0.05, 0.0}, potential, space.labels, options.oracle);
  const double dev = std::abs(at_005.at(L, L) - result.metric.at({L, L}).eval(1.0, 0.05));
  report.checks.push_back({"oracle " + label(L, L) + " at lambda=0.05", dev <= 5e-5, dev, 5e-5,
                           fmt("oracle %.12g, series %.12g", at_005.at(L, L), result.metric.at({L, L}).eval(1.0, 0.05))});
  return report;
}

VerifyReport verify_all(const VerifyOptions& options) {
  VerifyReport report = verify_linear(options);
  report.append(verify_quartic(options));
  return report;
}

}  // namespace qgt
