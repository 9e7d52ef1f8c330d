#include <doctest.h>

#include "qgt/errors.hpp"
#include "qgt/geometric_tensor.hpp"
#include "qgt/linear_exact.hpp"
#include "qgt/perturbation.hpp"
#include "support.hpp"

using qgt::Correlator;
using qgt::DeformationOperator;
using qgt::Parameter;
using qgt::PerturbativeExpansion;
using qgt::Propagator;
using qgt::PropagatorProduct;
using qgt::Rational;
using qgt::ScalarSeries;
using qgt::TimeVar;

namespace {

const TimeVar t1 = TimeVar::tau1();
const TimeVar t2 = TimeVar::tau2();
const TimeVar s1 = TimeVar::vertex(1);

PerturbativeExpansion expansion(int k, int order) {
  PerturbativeExpansion e;
  e.order = order;
  e.interaction = qgt::PolynomialPotential::monomial(k);
  return e;
}

DeformationOperator op(Parameter p, int k) { return qgt::deformation_operator(p, qgt::PolynomialPotential::monomial(k)); }

/// Labeled leg pairings of q^a(τ₁) q^b(τ₂) Π s_i^k with every node in one
/// connected component, keyed by canonical form.
std::map<std::string, Rational> connected_brute(int a, int b, int k, int m) {
  std::vector<oracle::Point> pts{{"t1", a}, {"t2", b}};
  std::vector<std::string> nodes{"t1", "t2"};
  for (int i = 1; i <= m; ++i) {
    pts.push_back({"s" + std::to_string(i), k});
    nodes.push_back("s" + std::to_string(i));
  }
  const auto keep = [&](const oracle::Graph& g) { return oracle::connected(g, nodes); };
  return testing_support::as_rationals(oracle::canonicalize(oracle::all_pairings(pts, keep), m));
}

std::map<std::string, Rational> library_counts(Parameter a, Parameter b, int k, int m) {
  const auto e = expansion(k, m);
  const auto c = qgt::connected_integrand(op(a, k), op(b, k), e);
  return testing_support::as_counts(qgt::vertex_integrand(c, m, e));
}

}  // namespace

TEST_CASE("order zero reproduces the free connected correlator") {
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; b <= 4; ++b) {
      DeformationOperator oa{Parameter::Alpha, a, Rational(1)}, ob{Parameter::Alpha, b, Rational(1)};
      CHECK(qgt::connected_integrand(oa, ob, expansion(4, 0)) ==
            qgt::connected_pair_correlator(qgt::GaussianModel{}, {{t1, a}}, {{t2, b}}));
    }
  }
}

TEST_CASE("interacting_green examples") {
  const auto g = qgt::interacting_green({}, expansion(4, 1));
  // Z = 1 − (λ/24)·3 D(s1,s1)² + O(λ²)
  PropagatorProduct bubble{{Propagator(s1, s1), Propagator(s1, s1)}, 1};
  bubble.normalize();
  Correlator expected = Correlator::constant(ScalarSeries(1));
  expected += Correlator(bubble, ScalarSeries::monomial(Rational(-1, 8), 0, 1));
  CHECK(g.denominator == expected);
  CHECK(g.value == Correlator::constant(ScalarSeries(1)));

  const auto two = qgt::interacting_green({{t1, 1}, {t2, 1}}, expansion(4, 1));
  CHECK_FALSE(qgt::has_vacuum_component(two.value));
  CHECK(qgt::has_vacuum_component(two.numerator));
}

TEST_CASE("deformation operators") {
  CHECK(op(Parameter::Alpha, 4).prefactor == Rational(-1, 2));
  CHECK(op(Parameter::Alpha, 4).q_power == 2);
  CHECK(op(Parameter::J, 4).prefactor == Rational(-1));
  CHECK(op(Parameter::Lambda, 4).prefactor == Rational(-1, 24));
  CHECK(op(Parameter::Lambda, 4).q_power == 4);
  CHECK(op(Parameter::Lambda, 3).prefactor == Rational(-1, 6));
  qgt::PolynomialPotential mixed;
  mixed.coefficients[2] = Rational(1);
  mixed.coefficients[4] = Rational(1);
  CHECK_THROWS_AS(qgt::deformation_operator(Parameter::Lambda, mixed), std::invalid_argument);
}

TEST_CASE("order above the cap is rejected") {
  auto e = expansion(4, 3);
  CHECK_THROWS_AS(e.validate(), qgt::OrderOverflow);
  CHECK_THROWS_AS(qgt::interacting_green({{t1, 2}}, e), qgt::OrderOverflow);
  e.max_order = 3;
  CHECK_NOTHROW(e.validate());
  CHECK_THROWS_AS(expansion(4, -1).validate(), std::invalid_argument);
}

TEST_CASE("property: vacuum bubbles cancel through second order") {
  for (int k : {1, 3, 4}) {
    for (int m = 0; m <= 2; ++m) {
      for (Parameter a : {Parameter::Alpha, Parameter::Lambda}) {
        for (Parameter b : {Parameter::Alpha, Parameter::Lambda}) {
          CAPTURE(k);
          CAPTURE(m);
          const auto c = qgt::connected_integrand(op(a, k), op(b, k), expansion(k, m));
          CHECK_FALSE(qgt::has_vacuum_component(c));
          for (const auto& [p, coeff] : c.terms()) {
            std::vector<std::string> nodes{"t1", "t2"};
            for (int i = 1; i <= p.vertex_count; ++i) nodes.push_back("s" + std::to_string(i));
            CHECK(oracle::connected(testing_support::as_graph(p), nodes));
          }
        }
      }
    }
  }
}

TEST_CASE("property: first-order vertex integrands match brute-force connected pairings") {
  CHECK(library_counts(Parameter::Alpha, Parameter::Alpha, 4, 1) == connected_brute(2, 2, 4, 1));
  CHECK(library_counts(Parameter::Lambda, Parameter::Lambda, 4, 1) == connected_brute(4, 4, 4, 1));
  CHECK(library_counts(Parameter::Alpha, Parameter::Lambda, 4, 1) == connected_brute(2, 4, 4, 1));
  CHECK(library_counts(Parameter::Lambda, Parameter::Alpha, 4, 1) == connected_brute(4, 2, 4, 1));
  CHECK(library_counts(Parameter::Alpha, Parameter::Alpha, 6, 1) == connected_brute(2, 2, 6, 1));

  auto pattern = [](const std::map<std::string, Rational>& m, long overall) {
    std::vector<long> out;
    for (const auto& [k, v] : m) {
      const Rational r = v / Rational(overall);
      REQUIRE(r.is_integer());
      out.push_back(std::stol(r.numerator()));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(pattern(library_counts(Parameter::Alpha, Parameter::Alpha, 4, 1), 24) == std::vector<long>{1, 2});
  CHECK(pattern(library_counts(Parameter::Lambda, Parameter::Lambda, 4, 1), 288) ==
        std::vector<long>{3, 3, 3, 4, 4, 4, 6, 6});
  CHECK(pattern(library_counts(Parameter::Alpha, Parameter::Lambda, 4, 1), 48) == std::vector<long>{3, 3, 4, 6});
}

TEST_CASE("property: second-order vertex integrands match brute-force connected pairings") {
  CHECK(library_counts(Parameter::Alpha, Parameter::Alpha, 4, 2) == connected_brute(2, 2, 4, 2));
  CHECK(library_counts(Parameter::Alpha, Parameter::Lambda, 4, 2) == connected_brute(2, 4, 4, 2));
  CHECK(library_counts(Parameter::Alpha, Parameter::Alpha, 3, 2) == connected_brute(2, 2, 3, 2));
}

TEST_CASE("property: an odd number of legs contributes nothing") {
  for (Parameter a : {Parameter::Alpha, Parameter::Lambda}) {
    for (Parameter b : {Parameter::Alpha, Parameter::Lambda}) {
      const auto e = expansion(3, 2);
      const auto c = qgt::connected_integrand(op(a, 3), op(b, 3), e);
      for (int m = 0; m <= 2; ++m) {
        const int legs = op(a, 3).q_power + op(b, 3).q_power + 3 * m;
        CAPTURE(m);
        CHECK(qgt::vertex_integrand(c, m, e).is_zero() == (legs % 2 == 1));
      }
    }
  }
}

TEST_CASE("property: a linear vertex reproduces the exact source expansion") {
  const qgt::ParameterSpace space{qgt::Model::monomial(1), {Parameter::Alpha, Parameter::Lambda}};
  const auto exact = qgt::exact_linear_series();
  qgt::QgtOptions o;
  o.order = 2;
  const auto r = qgt::compute_qgt(space, o);
  CHECK(r.components.at({Parameter::Alpha, Parameter::Alpha}).lambda_as_j() ==
        exact.at({Parameter::Alpha, Parameter::Alpha}));
  CHECK(r.components.at({Parameter::Alpha, Parameter::Lambda}).lambda_as_j() ==
        exact.at({Parameter::Alpha, Parameter::J}));
  CHECK(r.components.at({Parameter::Lambda, Parameter::Lambda}).lambda_as_j() ==
        exact.at({Parameter::J, Parameter::J}));
  // First order only sees the linear term in J.
  o.order = 1;
  const auto r1 = qgt::compute_qgt(space, o);
  CHECK(r1.components.at({Parameter::Alpha, Parameter::Alpha}) == ScalarSeries::monomial(Rational(1, 32), -4));
  CHECK(r1.components.at({Parameter::Alpha, Parameter::Lambda}).lambda_as_j() ==
        exact.at({Parameter::Alpha, Parameter::J}));
}

TEST_CASE("integrand_text is one line per term") {
  const auto e = expansion(4, 1);
  const auto c = qgt::connected_integrand(op(Parameter::Alpha, 4), op(Parameter::Alpha, 4), e);
  const auto text = qgt::integrand_text(c);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == c.terms().size());
  CHECK(text == qgt::integrand_text(qgt::connected_integrand(op(Parameter::Alpha, 4), op(Parameter::Alpha, 4), e)));
}
