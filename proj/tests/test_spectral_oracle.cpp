#include <doctest.h>

#include <cmath>

#include "qgt/errors.hpp"
#include "qgt/geometric_tensor.hpp"
#include "qgt/spectral_oracle.hpp"
#include "qgt/verify.hpp"

using qgt::OracleConfig;
using qgt::Parameter;
using qgt::ParameterPoint;
using qgt::PolynomialPotential;

namespace {

constexpr Parameter A = Parameter::Alpha;
constexpr Parameter L = Parameter::Lambda;
constexpr Parameter J = Parameter::J;

const PolynomialPotential quartic = PolynomialPotential::monomial(4);

OracleConfig with_basis(int n) {
  OracleConfig c;
  c.basis_size = n;
  return c;
}

}  // namespace

TEST_CASE("ground-state energies") {
  CHECK(qgt::solve_point({1.0, 0.0, 0.0}, quartic, {}).energy == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(qgt::solve_point({1.0, 0.0, 0.5}, quartic, {}).energy == doctest::Approx(0.375).epsilon(1e-10));
  CHECK(qgt::solve_point({2.0, 0.0, 1.0}, quartic, {}).energy ==
        doctest::Approx(std::sqrt(2.0) / 2.0 - 0.25).epsilon(1e-10));

  // First-order shift λ⟨q⁴⟩/4! with ⟨q⁴⟩ = 3/(4α).
  const double lambda = 0.1;
  const double e = qgt::solve_point({1.0, lambda, 0.0}, quartic, {}).energy;
  CHECK(std::abs(e - (0.5 + lambda * 0.75 / 24.0)) < 5.0 * lambda * lambda * 1e-2);
  CHECK(e < 0.5 + lambda * 0.75 / 24.0);

  // A frequency away from √α needs more states but lands on the same energy.
  OracleConfig off = with_basis(256);
  off.reference_frequency = 1.5;
  CHECK(qgt::solve_point({1.0, lambda, 0.0}, quartic, off).energy == doctest::Approx(e).epsilon(1e-11));
}

TEST_CASE("ground_state on simple matrices") {
  const auto id = qgt::ground_state(Eigen::MatrixXd::Identity(4, 4));
  CHECK(id.energy == doctest::Approx(1.0));
  CHECK(id.vector.norm() == doctest::Approx(1.0));
  CHECK(id.vector.maxCoeff() == doctest::Approx(id.vector.cwiseAbs().maxCoeff()));

  Eigen::MatrixXd d = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
  const auto g = qgt::ground_state(d);
  CHECK(g.energy == doctest::Approx(1.0));
  CHECK(g.vector(0) == doctest::Approx(1.0));
  CHECK(std::abs(g.vector(1)) < 1e-15);
  CHECK(std::abs(g.vector(2)) < 1e-15);
}

TEST_CASE("property: gauge fixing is insensitive to the incoming sign") {
  const auto h = qgt::build_hamiltonian({1.3, 0.07, 0.4}, quartic, with_basis(64));
  const auto g = qgt::ground_state(h);
  Eigen::VectorXd flipped = -g.vector;
  qgt::fix_gauge(flipped);
  CHECK((flipped - g.vector).cwiseAbs().maxCoeff() == 0.0);
  Eigen::VectorXd same = g.vector;
  qgt::fix_gauge(same);
  CHECK((same - g.vector).cwiseAbs().maxCoeff() == 0.0);

  // A numeric_qim run is reproducible bit for bit, hence sign choices inside
  // the eigensolver cannot leak into the metric.
  const auto a = qgt::numeric_qim({1.0, 0.05, 0.2}, quartic, {A, L, J});
  const auto b = qgt::numeric_qim({1.0, 0.05, 0.2}, quartic, {A, L, J});
  CHECK((a.metric - b.metric).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamiltonian is symmetric and rejects high-degree potentials") {
  const auto h = qgt::build_hamiltonian({0.7, 0.2, 0.3}, quartic, with_basis(40));
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.rows() == 40);
  CHECK_THROWS_AS(qgt::build_hamiltonian({1.0, 0.1, 0.0}, PolynomialPotential::monomial(10), {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(qgt::build_hamiltonian({0.0, 0.1, 0.0}, quartic, {}), qgt::NonPositiveAlpha);
}

TEST_CASE("property: basis doubling") {
  const double e128 = qgt::solve_point({1.0, 0.1, 0.0}, quartic, with_basis(128)).energy;
  const double e256 = qgt::solve_point({1.0, 0.1, 0.0}, quartic, with_basis(256)).energy;
  CHECK(std::abs(e128 - e256) < 1e-10);

  for (const ParameterPoint& p : {ParameterPoint{1.0, 0.0, 0.0}, ParameterPoint{1.0, 0.05, 0.0},
                                  ParameterPoint{0.5, 0.0, 0.5}, ParameterPoint{2.0, 0.08, 0.0}}) {
    OracleConfig c;
    c.basis_check = true;
    const auto q = qgt::numeric_qim(p, quartic, {A, L}, c);
    REQUIRE(q.basis_drift.has_value());
    CAPTURE(p.alpha);
    CAPTURE(p.lambda);
    CHECK(q.basis_drift->maxCoeff() < 1e-8);
  }
}

TEST_CASE("numeric_qim free-theory examples") {
  const auto lin = qgt::numeric_qim({1.0, 0.0, 0.0}, quartic, {A, J});
  CHECK(std::abs(lin.at(J, J) - 0.5) < 1e-6);
  CHECK(std::abs(lin.at(A, A) - 1.0 / 32.0) < 1e-6);
  CHECK(std::abs(lin.at(A, J)) < 1e-6);

  const auto space = qgt::ParameterSpace::standard(qgt::Model::quartic());
  const auto free = qgt::compute_qgt(space, [] {
    qgt::QgtOptions o;
    o.order = 0;
    return o;
  }());
  for (double alpha : {0.5, 1.0, 2.0}) {
    const auto q = qgt::numeric_qim({alpha, 0.0, 0.0}, quartic, {A, L});
    for (const auto& [index, series] : free.metric) {
      const double s = series.eval(alpha);
      CAPTURE(alpha);
      CHECK(std::abs(q.at(index.first, index.second) - s) <= 1e-6 * std::abs(s));
    }
  }
}

TEST_CASE("property: metric is symmetric and positive within its error") {
  const auto q = qgt::numeric_qim({1.0, 0.08, 0.3}, quartic, {A, L, J});
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) CHECK(std::abs(q.metric(i, k) - q.metric(k, i)) <= 1e-12);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q.metric);
  CHECK(es.eigenvalues().minCoeff() > q.step_error.maxCoeff());
}

TEST_CASE("property: step halving changes entries by less than 1e-7") {
  for (const ParameterPoint& p : {ParameterPoint{1.0, 0.0, 0.0}, ParameterPoint{1.0, 0.05, 0.0},
                                  ParameterPoint{2.0, 0.02, 0.5}}) {
    const auto q = qgt::numeric_qim(p, quartic, {A, L, J});
    CHECK(q.step_error.maxCoeff() < 1e-7);
  }
}

TEST_CASE("property: deviation from the first-order series scales as lambda^2") {
  const auto r = qgt::compute_qgt(qgt::ParameterSpace::standard(qgt::Model::quartic()));
  const std::vector<double> lambdas{0.02, 0.04, 0.08};
  std::map<qgt::ComponentIndex, std::vector<double>> deviations;
  for (double l : lambdas) {
    const auto q = qgt::numeric_qim({1.0, l, 0.0}, quartic, {A, L});
    for (const auto& [index, series] : r.metric) {
      deviations[index].push_back(std::abs(q.at(index.first, index.second) - series.eval(1.0, l)));
    }
  }
  for (const auto& [index, d] : deviations) {
    CAPTURE(qgt::to_string(index.first));
    CAPTURE(qgt::to_string(index.second));
    CHECK(std::abs(qgt::log_log_slope(lambdas, d) - 2.0) <= 0.3);
  }
  const auto at = qgt::numeric_qim({1.0, 0.05, 0.0}, quartic, {A, L});
  CHECK(std::abs(at.at(L, L) - r.metric.at({L, L}).eval(1.0, 0.05)) <= 5e-5);
}

TEST_CASE("property: fidelity estimator agrees with the derivative estimator") {
  for (const ParameterPoint& p : {ParameterPoint{1.0, 0.0, 0.0}, ParameterPoint{1.0, 0.05, 0.3}}) {
    const auto d = qgt::numeric_qim(p, quartic, {A, L, J});
    const auto f = qgt::fidelity_qim(p, quartic, {A, L, J});
    for (Parameter a : {A, L, J}) {
      const double ref = d.at(a, a);
      CHECK(std::abs(f.at(a, a) - ref) <= 1e-4 * ref);
    }
  }
}

TEST_CASE("configuration and failure reporting") {
  CHECK_THROWS_AS(with_basis(8).validate(), std::invalid_argument);
  OracleConfig bad_step;
  bad_step.fd_step[A] = -1.0;
  CHECK_THROWS_AS(bad_step.validate(), std::invalid_argument);
  OracleConfig bad_freq;
  bad_freq.reference_frequency = 0.0;
  CHECK_THROWS_AS(bad_freq.validate(), std::invalid_argument);

  CHECK_THROWS_AS(qgt::solve_point({1.0, 0.0, 6.0}, quartic, with_basis(16)), qgt::BasisTooSmall);

  OracleConfig huge;
  huge.fd_step[J] = 2.0;
  CHECK_THROWS_AS(qgt::numeric_qim({1.0, 0.1, 0.0}, quartic, {A, J}, huge), qgt::StepTooLarge);

  OracleConfig defaults;
  CHECK(defaults.step(A, 4.0) == doctest::Approx(4e-4));
  CHECK(defaults.step(L, 4.0) == doctest::Approx(8e-4));
  CHECK(defaults.step(J, 16.0) == doctest::Approx(8e-4));
  CHECK(defaults.frequency(4.0) == doctest::Approx(2.0));
}
