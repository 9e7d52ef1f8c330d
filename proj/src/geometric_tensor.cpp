#include "qgt/geometric_tensor.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qgt/errors.hpp"

namespace qgt {

Model Model::monomial(int k) {
  if (k < 1) throw std::invalid_argument("monomial degree must be >= 1");
  if (k == 4) return quartic();
  return {ModelKind::Monomial, k};
}

Model Model::parse(std::string_view text) {
  if (text == "linear") return linear_source();
  if (text == "quartic") return quartic();
  constexpr std::string_view prefix = "monomial:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string digits(text.substr(prefix.size()));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad monomial degree in '" + std::string(text) + "'");
    }
    return monomial(std::stoi(digits));
  }
  throw std::invalid_argument("unknown model '" + std::string(text) + "'");
}

std::string Model::name() const {
  switch (kind) {
    case ModelKind::LinearSource:
      return "linear";
    case ModelKind::Quartic:
      return "quartic";
    case ModelKind::Monomial:
      return "monomial:" + std::to_string(degree);
  }
  return "?";
}

PolynomialPotential Model::potential() const {
  if (kind == ModelKind::LinearSource) return {};
  return PolynomialPotential::monomial(degree);
}

ParameterSpace ParameterSpace::standard(const Model& model) {
  if (model.kind == ModelKind::LinearSource) return {model, {Parameter::Alpha, Parameter::J}};
  return {model, {Parameter::Alpha, Parameter::Lambda}};
}

bool ParameterSpace::has(Parameter p) const {
  return std::find(labels.begin(), labels.end(), p) != labels.end();
}

void ParameterSpace::validate() const {
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("parameter labels must be distinct");
  }
  if (!has(Parameter::Alpha)) throw std::invalid_argument("alpha must be a parameter");
  if (has(Parameter::Lambda) && !model.has_interaction()) {
    throw std::invalid_argument("the linear model has no lambda coupling");
  }
}

Rational operator_prefactor(const Model& model, Parameter p) {
  return deformation_operator(p, model.has_interaction() ? model.potential()
                                                         : PolynomialPotential::monomial(1))
      .prefactor;
}

namespace {

Rational prefactor(const ParameterSpace& space, Parameter p, const QgtOptions& options) {
  auto it = options.prefactor_override.find(p);
  if (it != options.prefactor_override.end()) return it->second;
  return operator_prefactor(space.model, p);
}

int q_power(const Model& model, Parameter p) {
  switch (p) {
    case Parameter::Alpha:
      return 2;
    case Parameter::J:
      return 1;
    case Parameter::Lambda:
      return model.degree;
  }
  return 0;
}

using IntegralCache = std::map<PropagatorProduct, ScalarSeries>;

ScalarSeries integrate_correlator(const Correlator& c, const IntegrationOptions& options,
                                  IntegralCache& cache) {
  ScalarSeries total;
  for (const auto& [product, coeff] : c.terms()) {
    auto it = cache.find(product);
    if (it == cache.end()) it = cache.emplace(product, integrate_wedge(product, options)).first;
    total += coeff * it->second;
  }
  return total;
}

ScalarSeries component_with_cache(const ParameterSpace& space, Parameter a, Parameter b,
                                  const QgtOptions& options, IntegralCache& cache) {
  const Correlator integrand = component_integrand(space, a, b, options);
  ScalarSeries value = integrate_correlator(integrand, options.integration, cache);
  value *= prefactor(space, a, options) * prefactor(space, b, options);
  if (space.model.has_interaction()) value = value.truncate_lambda(static_cast<unsigned>(options.order));
  return value;
}

}  // namespace

Correlator component_integrand(const ParameterSpace& space, Parameter a, Parameter b,
                               const QgtOptions& options) {
  space.validate();
  if (!space.has(a) || !space.has(b)) throw std::invalid_argument("component label not in parameter space");

  const GaussianModel reference{space.has(Parameter::J)};
  if (!space.model.has_interaction()) {
    return connected_pair_correlator(reference, {{TimeVar::tau1(), q_power(space.model, a)}},
                                     {{TimeVar::tau2(), q_power(space.model, b)}});
  }
  PerturbativeExpansion expansion;
  expansion.order = options.order;
  expansion.max_order = options.max_order;
  expansion.interaction = space.model.potential();
  expansion.reference = reference;
  const auto potential = space.model.potential();
  return connected_integrand(deformation_operator(a, potential), deformation_operator(b, potential),
                             expansion);
}

ScalarSeries qgt_component(const ParameterSpace& space, Parameter a, Parameter b,
                           const QgtOptions& options) {
  IntegralCache cache;
  return component_with_cache(space, a, b, options, cache);
}

std::pair<ComponentMap, ComponentMap> metric_and_curvature(const ComponentMap& components) {
  ComponentMap metric;
  ComponentMap curvature;
  for (const auto& [index, value] : components) {
    const ComponentIndex swapped{index.second, index.first};
    auto it = components.find(swapped);
    if (it == components.end()) throw std::invalid_argument("component map is not square");
    metric[index] = (value + it->second) * Rational(1, 2);
    curvature[index] = (value - it->second) * Rational(1, 2);
  }
  return {metric, curvature};
}

QGTResult compute_qgt(const ParameterSpace& space, const QgtOptions& options) {
  space.validate();
  QGTResult result;
  result.space = space;
  result.order = space.model.has_interaction() ? options.order : 0;
  IntegralCache cache;
  for (Parameter a : space.labels) {
    for (Parameter b : space.labels) {
      result.components[{a, b}] = component_with_cache(space, a, b, options, cache);
    }
  }
  std::tie(result.metric, result.curvature) = metric_and_curvature(result.components);
  return result;
}

namespace {

using SeriesMatrix = std::vector<std::vector<ScalarSeries>>;

// Laplace expansion along the first row; exact, truncated at λ^order.
ScalarSeries determinant(const SeriesMatrix& m, unsigned order) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  ScalarSeries det;
  for (std::size_t col = 0; col < n; ++col) {
    SeriesMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<ScalarSeries> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    ScalarSeries term = (m[0][col] * determinant(minor, order)).truncate_lambda(order);
    det += col % 2 == 1 ? -term : term;
  }
  return det;
}

std::vector<double> positive_real_roots(const std::vector<double>& coeffs) {
  // coeffs[m] multiplies x^m
  std::size_t deg = coeffs.size() - 1;
  while (deg > 0 && coeffs[deg] == 0.0) --deg;
  std::vector<double> roots;
  if (deg == 0) return roots;
  if (deg == 1) {
    roots.push_back(-coeffs[0] / coeffs[1]);
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg),
                                                      static_cast<Eigen::Index>(deg));
    for (std::size_t i = 1; i < deg; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) {
      companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -coeffs[i] / coeffs[deg];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    for (const auto& z : solver.eigenvalues()) {
      if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z.real()))) roots.push_back(z.real());
    }
  }
  std::erase_if(roots, [](double x) { return !(x > 0.0); });
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

DeterminantResult determinant_and_critical(const ComponentMap& metric,
                                           const std::vector<Parameter>& labels, int order) {
  if (labels.empty()) throw std::invalid_argument("empty label set");
  DeterminantResult out;
  SeriesMatrix m;
  for (Parameter a : labels) {
    std::vector<ScalarSeries> row;
    for (Parameter b : labels) row.push_back(metric.at({a, b}));
    m.push_back(std::move(row));
  }
  out.determinant = determinant(m, static_cast<unsigned>(order));
  out.critical.truncation_order = order;

  // Needs det = α^{p0/2} Σ_m c_m (λ α^{−δ/2})^m with one monomial per order.
  const ScalarSeries& det = out.determinant;
  if (det.max_j_pow() > 0 || det.max_lambda_pow() == 0) return out;
  std::vector<ScalarTerm> by_order(det.max_lambda_pow() + 1);
  std::vector<bool> present(by_order.size(), false);
  for (const auto& t : det.terms()) {
    if (present[t.lambda_pow]) return out;
    present[t.lambda_pow] = true;
    by_order[t.lambda_pow] = t;
  }
  if (!present[0]) return out;
  int step = 0;
  bool have_step = false;
  for (std::size_t m = 1; m < by_order.size(); ++m) {
    if (!present[m]) continue;
    const int diff = by_order[0].alpha_half_pow - by_order[m].alpha_half_pow;
    if (diff % static_cast<int>(m) != 0) return out;
    const int s = diff / static_cast<int>(m);
    if (have_step && s != step) return out;
    step = s;
    have_step = true;
  }

  std::vector<double> coeffs(by_order.size(), 0.0);
  for (std::size_t m = 0; m < by_order.size(); ++m) {
    if (present[m]) coeffs[m] = by_order[m].coeff.to_double();
  }
  const auto roots = positive_real_roots(coeffs);
  if (roots.empty()) return out;
  out.critical.coefficient = roots.front();
  out.critical.alpha_half_pow = step;
  if (by_order.size() == 2) {
    out.critical.exact = ScalarSeries::monomial(-by_order[0].coeff / by_order[1].coeff, step);
  }
  return out;
}

}  // namespace qgt
