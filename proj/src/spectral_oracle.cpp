#include "qgt/spectral_oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qgt/errors.hpp"

namespace qgt {

void OracleConfig::validate() const {
  if (basis_size < 16) throw std::invalid_argument("basis size must be at least 16");
  if (reference_frequency && !(*reference_frequency > 0.0)) {
    throw std::invalid_argument("reference frequency must be positive");
  }
  for (const auto& [p, h] : fd_step) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw std::invalid_argument("finite-difference step for " + to_string(p) + " must be positive");
    }
  }
  if (!(eigen_tolerance > 0.0)) throw std::invalid_argument("eigen tolerance must be positive");
}

double OracleConfig::frequency(double alpha) const {
  return reference_frequency ? *reference_frequency : std::sqrt(alpha);
}

double OracleConfig::step(Parameter p, double alpha) const {
  if (auto it = fd_step.find(p); it != fd_step.end()) return it->second;
  switch (p) {
    case Parameter::Alpha:
      return 1e-4 * alpha;
    case Parameter::Lambda:
      return 1e-4 * std::pow(alpha, 1.5);
    case Parameter::J:
      return 1e-4 * std::pow(alpha, 0.75);
  }
  return 1e-4;
}

double ParameterPoint::get(Parameter p) const {
  switch (p) {
    case Parameter::Alpha:
      return alpha;
    case Parameter::Lambda:
      return lambda;
    case Parameter::J:
      return j;
  }
  return 0.0;
}

ParameterPoint ParameterPoint::shifted(Parameter p, double delta) const {
  ParameterPoint out = *this;
  switch (p) {
    case Parameter::Alpha:
      out.alpha += delta;
      break;
    case Parameter::Lambda:
      out.lambda += delta;
      break;
    case Parameter::J:
      out.j += delta;
      break;
  }
  return out;
}

Eigen::MatrixXd build_hamiltonian(const ParameterPoint& point, const PolynomialPotential& potential,
                                  const OracleConfig& config) {
  config.validate();
  if (!(point.alpha > 0.0)) throw NonPositiveAlpha(point.alpha);
  const int degree = potential.degree();
  if (degree > 8) throw std::invalid_argument("potential degree must be <= 8");

  const Eigen::Index n = config.basis_size;
  // Powers of q are built in a larger basis so the kept block is exact.
  const Eigen::Index big = n + std::max(degree, 2);
  const double omega = config.frequency(point.alpha);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(big, big);
  for (Eigen::Index i = 0; i + 1 < big; ++i) {
    q(i, i + 1) = q(i + 1, i) = std::sqrt(static_cast<double>(i + 1) / (2.0 * omega));
  }

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) h(i, i) = omega * (static_cast<double>(i) + 0.5);

  std::vector<Eigen::MatrixXd> powers{Eigen::MatrixXd::Identity(big, big), q};
  for (int k = 2; k <= std::max(degree, 2); ++k) powers.push_back(powers.back() * q);

  h += 0.5 * (point.alpha - omega * omega) * powers[2].topLeftCorner(n, n);
  h += point.j * q.topLeftCorner(n, n);
  if (point.lambda != 0.0) {
    for (const auto& [k, c] : potential.coefficients) {
      h += point.lambda * c.to_double() * powers[static_cast<std::size_t>(k)].topLeftCorner(n, n);
    }
  }
  return 0.5 * (h + h.transpose());
}

void fix_gauge(Eigen::VectorXd& v) {
  Eigen::Index largest = 0;
  v.cwiseAbs().maxCoeff(&largest);
  if (v(largest) < 0.0) v = -v;
}

GroundState ground_state(const Eigen::MatrixXd& h, double tolerance) {
  if (h.rows() != h.cols() || h.rows() == 0) throw std::invalid_argument("matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw NoConvergence("symmetric eigensolver failed");
  GroundState gs{solver.eigenvalues()(0), solver.eigenvectors().col(0).normalized()};
  const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
  const double residual = (h * gs.vector - gs.energy * gs.vector).norm();
  if (!(residual <= tolerance * scale * static_cast<double>(h.rows()))) {
    throw NoConvergence("ground-state residual " + std::to_string(residual) + " above tolerance");
  }
  fix_gauge(gs.vector);
  return gs;
}

GroundState solve_point(const ParameterPoint& point, const PolynomialPotential& potential,
                        const OracleConfig& config) {
  GroundState gs = ground_state(build_hamiltonian(point, potential, config), config.eigen_tolerance);
  const Eigen::Index n = gs.vector.size();
  const Eigen::Index tail = std::max<Eigen::Index>(1, n / 10);
  const double weight = gs.vector.tail(tail).squaredNorm();
  if (weight > 1e-10) {
    throw BasisTooSmall("ground-state weight " + std::to_string(weight) + " in the top " +
                        std::to_string(tail) + " basis states");
  }
  return gs;
}

double NumericQGT::at(Parameter a, Parameter b) const {
  const auto ia = std::find(labels.begin(), labels.end(), a) - labels.begin();
  const auto ib = std::find(labels.begin(), labels.end(), b) - labels.begin();
  if (ia == static_cast<long>(labels.size()) || ib == static_cast<long>(labels.size())) {
    throw std::invalid_argument("label not computed");
  }
  return metric(ia, ib);
}

double NumericQGT::error(Parameter a, Parameter b) const {
  const auto ia = std::find(labels.begin(), labels.end(), a) - labels.begin();
  const auto ib = std::find(labels.begin(), labels.end(), b) - labels.begin();
  return step_error(ia, ib);
}

namespace {

Eigen::MatrixXd derivative_metric(const ParameterPoint& point, const PolynomialPotential& potential,
                                  const std::vector<Parameter>& labels, const OracleConfig& config,
                                  const Eigen::VectorXd& psi, double scale) {
  const auto d = static_cast<Eigen::Index>(labels.size());
  std::vector<Eigen::VectorXd> derivs;
  for (Parameter p : labels) {
    const double h = scale * config.step(p, point.alpha);
    const auto plus = solve_point(point.shifted(p, h), potential, config).vector;
    const auto minus = solve_point(point.shifted(p, -h), potential, config).vector;
    derivs.push_back((plus - minus) / (2.0 * h));
  }
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const auto& da = derivs[static_cast<std::size_t>(a)];
      const auto& db = derivs[static_cast<std::size_t>(b)];
      g(a, b) = da.dot(db) - da.dot(psi) * psi.dot(db);
    }
  }
  return g;
}

Eigen::MatrixXd metric_at(const ParameterPoint& point, const PolynomialPotential& potential,
                          const std::vector<Parameter>& labels, const OracleConfig& config,
                          Eigen::MatrixXd* step_error) {
  const Eigen::VectorXd psi = solve_point(point, potential, config).vector;
  const Eigen::MatrixXd g = derivative_metric(point, potential, labels, config, psi, 1.0);
  const Eigen::MatrixXd half = derivative_metric(point, potential, labels, config, psi, 0.5);
  const Eigen::MatrixXd err = (g - half).cwiseAbs();
  for (Eigen::Index a = 0; a < g.rows(); ++a) {
    for (Eigen::Index b = 0; b < g.cols(); ++b) {
      if (err(a, b) > 1e-10 && err(a, b) > 0.1 * std::abs(g(a, b))) {
        throw StepTooLarge("halving the step changes g(" + to_string(labels[static_cast<std::size_t>(a)]) +
                           "," + to_string(labels[static_cast<std::size_t>(b)]) + ") by more than 10%");
      }
    }
  }
  if (step_error) *step_error = err;
  return g;
}

// Shifted points must share one basis, so ω is frozen at the base point.
OracleConfig pinned(const OracleConfig& options, const ParameterPoint& point) {
  options.validate();
  if (!(point.alpha > 0.0)) throw NonPositiveAlpha(point.alpha);
  OracleConfig config = options;
  config.reference_frequency = options.frequency(point.alpha);
  for (Parameter p : {Parameter::Alpha, Parameter::Lambda, Parameter::J}) {
    config.fd_step[p] = options.step(p, point.alpha);
  }
  return config;
}

void check_labels(const std::vector<Parameter>& labels) {
  if (labels.empty()) throw std::invalid_argument("no parameters requested");
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("parameter labels must be distinct");
  }
}

}  // namespace

NumericQGT numeric_qim(const ParameterPoint& point, const PolynomialPotential& potential,
                       const std::vector<Parameter>& labels, const OracleConfig& options) {
  check_labels(labels);
  const OracleConfig config = pinned(options, point);
  NumericQGT out;
  out.labels = labels;
  out.metric = metric_at(point, potential, labels, config, &out.step_error);
  if (config.basis_check) {
    OracleConfig doubled = config;
    doubled.basis_size *= 2;
    doubled.basis_check = false;
    out.basis_drift = (metric_at(point, potential, labels, doubled, nullptr) - out.metric).cwiseAbs();
  }
  return out;
}

namespace {

double infidelity(const Eigen::VectorXd& psi, const ParameterPoint& p, const PolynomialPotential& v,
                  const OracleConfig& config) {
  return 1.0 - std::abs(psi.dot(solve_point(p, v, config).vector));
}

Eigen::MatrixXd fidelity_metric(const ParameterPoint& point, const PolynomialPotential& potential,
                                const std::vector<Parameter>& labels, const OracleConfig& config,
                                double scale) {
  const Eigen::VectorXd psi = solve_point(point, potential, config).vector;
  const auto d = static_cast<Eigen::Index>(labels.size());
  std::vector<double> steps;
  for (Parameter p : labels) steps.push_back(scale * config.step(p, point.alpha));

  // 1 − F(δ) ≈ ½ δᵀgδ; averaging ±δ removes the cubic term.
  auto symmetric = [&](const std::vector<double>& delta) {
    ParameterPoint plus = point, minus = point;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      plus = plus.shifted(labels[i], delta[i]);
      minus = minus.shifted(labels[i], -delta[i]);
    }
    return infidelity(psi, plus, potential, config) + infidelity(psi, minus, potential, config);
  };

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    std::vector<double> delta(labels.size(), 0.0);
    delta[static_cast<std::size_t>(a)] = steps[static_cast<std::size_t>(a)];
    const double h = steps[static_cast<std::size_t>(a)];
    g(a, a) = symmetric(delta) / (h * h);
  }
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a + 1; b < d; ++b) {
      std::vector<double> delta(labels.size(), 0.0);
      const double ha = steps[static_cast<std::size_t>(a)];
      const double hb = steps[static_cast<std::size_t>(b)];
      delta[static_cast<std::size_t>(a)] = ha;
      delta[static_cast<std::size_t>(b)] = hb;
      const double both = symmetric(delta);
      g(a, b) = g(b, a) = (both - g(a, a) * ha * ha - g(b, b) * hb * hb) / (2.0 * ha * hb);
    }
  }
  return g;
}

}  // namespace

NumericQGT fidelity_qim(const ParameterPoint& point, const PolynomialPotential& potential,
                        const std::vector<Parameter>& labels, const OracleConfig& options,
                        double scale) {
  check_labels(labels);
  const OracleConfig config = pinned(options, point);
  NumericQGT out;
  out.labels = labels;
  out.metric = fidelity_metric(point, potential, labels, config, scale);
  out.step_error = (out.metric - fidelity_metric(point, potential, labels, config, 0.5 * scale)).cwiseAbs();
  return out;
}

}  // namespace qgt
