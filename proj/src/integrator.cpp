#include "qgt/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qgt/errors.hpp"

namespace qgt {

std::string Chamber::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    if (i > 0) os << " < ";
    os << ordering[i];
  }
  return os.str();
}

Rational ExpPolyTerm::rate(const TimeVar& v) const {
  auto it = rates.find(v);
  return it == rates.end() ? Rational(0) : it->second;
}

unsigned ExpPolyTerm::degree(const TimeVar& v) const {
  auto it = monomial.find(v);
  return it == monomial.end() ? 0U : it->second;
}

std::string ExpPolyTerm::str() const {
  std::ostringstream os;
  os << "[" << chamber.str() << "] " << ScalarSeries(scalar).str();
  for (const auto& [v, k] : monomial) os << " * " << v << (k == 1 ? "" : "^" + std::to_string(k));
  if (!rates.empty()) {
    os << " * exp(sqrt(a)*(";
    bool first = true;
    for (const auto& [v, r] : rates) {
      if (!first) os << (r.sign() < 0 ? " - " : " + ");
      else if (r.sign() < 0) os << "-";
      first = false;
      os << r.abs() << "*" << v;
    }
    os << "))";
  }
  return os.str();
}

std::vector<ExpPolyTerm> resolve_absolute_values(const PropagatorProduct& product,
                                                 const std::vector<TimeVar>& vars) {
  std::vector<TimeVar> order = vars;
  for (const auto& v : product.variables()) order.push_back(v);
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  const auto t1 = TimeVar::tau1();
  const auto t2 = TimeVar::tau2();
  ScalarTerm base{Rational(1)};
  for (std::size_t k = 0; k < product.edges.size(); ++k) base *= ScalarTerm{Rational(1, 2), -1};

  std::vector<ExpPolyTerm> out;
  do {
    const auto p1 = std::find(order.begin(), order.end(), t1);
    const auto p2 = std::find(order.begin(), order.end(), t2);
    if (p1 != order.end() && p2 != order.end() && p2 < p1) continue;

    ExpPolyTerm term;
    term.scalar = base;
    term.chamber.ordering = order;
    auto position = [&](const TimeVar& v) { return std::find(order.begin(), order.end(), v); };
    for (const auto& e : product.edges) {
      if (e.is_loop()) continue;
      // |x − y| = later − earlier on this chamber
      const bool a_first = position(e.a) < position(e.b);
      const TimeVar& early = a_first ? e.a : e.b;
      const TimeVar& late = a_first ? e.b : e.a;
      term.rates[early] += Rational(1);
      term.rates[late] -= Rational(1);
    }
    std::erase_if(term.rates, [](const auto& kv) { return kv.second.is_zero(); });
    out.push_back(std::move(term));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

namespace {

enum class BoundKind { NegInfinity, PosInfinity, Zero, Variable };

struct Bound {
  BoundKind kind;
  TimeVar var;
};

// Substitutes var := bound into the non-var part of `rest` multiplied by
// c · var^power · exp(√α rate · var).
void emit_at_bound(const ExpPolyTerm& rest, const Bound& b, const ScalarTerm& c, unsigned power,
                   const Rational& rate, std::vector<ExpPolyTerm>& out) {
  ExpPolyTerm t = rest;
  t.scalar *= c;
  if (b.kind == BoundKind::Zero) {
    if (power > 0) return;
    out.push_back(std::move(t));
    return;
  }
  if (power > 0) t.monomial[b.var] += power;
  if (!rate.is_zero()) {
    t.rates[b.var] += rate;
    if (t.rates[b.var].is_zero()) t.rates.erase(b.var);
  }
  out.push_back(std::move(t));
}

[[noreturn]] void divergent(const TimeVar& var, const char* why) {
  throw DivergentIntegral("integral over " + var.name + " diverges: " + why);
}

}  // namespace

std::vector<ExpPolyTerm> integrate_innermost(const ExpPolyTerm& term, const TimeVar& var,
                                             const IntegrationOptions& options) {
  const auto& chain = term.chamber.ordering;
  const auto pos = std::find(chain.begin(), chain.end(), var);
  if (pos == chain.end()) throw std::invalid_argument("variable " + var.name + " is not in the chamber");

  Bound lower{BoundKind::NegInfinity, {}};
  Bound upper{BoundKind::PosInfinity, {}};
  switch (var.domain) {
    case Domain::FullAxis:
      if (pos != chain.begin()) lower = {BoundKind::Variable, *(pos - 1)};
      if (pos + 1 != chain.end()) upper = {BoundKind::Variable, *(pos + 1)};
      break;
    case Domain::NegativeHalfAxis:
    case Domain::PositiveHalfAxis:
      for (const auto& v : chain) {
        if (v.is_vertex()) {
          throw std::invalid_argument("interaction vertices must be integrated before " + var.name);
        }
      }
      if (var.domain == Domain::NegativeHalfAxis) {
        upper = {BoundKind::Zero, {}};
      } else {
        lower = {BoundKind::Zero, {}};
      }
      break;
  }

  const unsigned k = term.degree(var);
  const Rational r = term.rate(var);

  ExpPolyTerm rest = term;
  rest.monomial.erase(var);
  rest.rates.erase(var);
  rest.chamber.ordering.erase(rest.chamber.ordering.begin() + (pos - chain.begin()));

  const bool unbounded = lower.kind == BoundKind::NegInfinity || upper.kind == BoundKind::PosInfinity;
  if (unbounded && options.alpha_sign <= 0) divergent(var, "alpha <= 0 gives no decay");
  if (lower.kind == BoundKind::NegInfinity && r.sign() <= 0) divergent(var, "no decay toward -inf");
  if (upper.kind == BoundKind::PosInfinity && r.sign() >= 0) divergent(var, "no decay toward +inf");

  std::vector<ExpPolyTerm> out;
  if (r.is_zero()) {
    // bounded interval: t^{k+1}/(k+1) |_L^U
    const ScalarTerm c{Rational(1, static_cast<long>(k + 1))};
    emit_at_bound(rest, upper, c, k + 1, Rational(0), out);
    emit_at_bound(rest, lower, ScalarTerm{-c.coeff}, k + 1, Rational(0), out);
    return out;
  }

  // F(t) = e^{r√α t} Σ_i (−1)^i k!/(k−i)! t^{k−i} / (r√α)^{i+1}
  for (unsigned i = 0; i <= k; ++i) {
    Rational coeff = Rational::factorial(k) / Rational::factorial(k - i) / r.pow(static_cast<int>(i + 1));
    if (i % 2 == 1) coeff = -coeff;
    const ScalarTerm c{coeff, -static_cast<int>(i + 1)};
    if (upper.kind != BoundKind::PosInfinity) emit_at_bound(rest, upper, c, k - i, r, out);
    if (lower.kind != BoundKind::NegInfinity) {
      emit_at_bound(rest, lower, ScalarTerm{-coeff, -static_cast<int>(i + 1)}, k - i, r, out);
    }
  }
  return out;
}

namespace {

std::vector<TimeVar> integration_order(const ExpPolyTerm& term, const IntegrationOptions& options) {
  std::vector<TimeVar> vertices;
  bool has_t1 = false;
  bool has_t2 = false;
  for (const auto& v : term.chamber.ordering) {
    if (v.is_vertex()) vertices.push_back(v);
    has_t1 |= v == TimeVar::tau1();
    has_t2 |= v == TimeVar::tau2();
  }
  std::vector<TimeVar> order;
  if (options.vertex_order.empty()) {
    order = vertices;
  } else {
    order = options.vertex_order;
    auto sorted_a = order;
    auto sorted_b = vertices;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a != sorted_b) throw std::invalid_argument("vertex_order must list every vertex once");
  }
  std::vector<TimeVar> taus;
  if (has_t2) taus.push_back(TimeVar::tau2());
  if (has_t1) taus.push_back(TimeVar::tau1());
  if (options.tau1_first) std::reverse(taus.begin(), taus.end());
  order.insert(order.end(), taus.begin(), taus.end());
  return order;
}

using TermKey = std::tuple<std::vector<TimeVar>, std::map<TimeVar, unsigned>, std::map<TimeVar, Rational>,
                           int, unsigned, unsigned>;

}  // namespace

ScalarSeries integrate_all(const std::vector<ExpPolyTerm>& terms, const IntegrationOptions& options) {
  ScalarSeries total;
  for (const auto& start : terms) {
    const auto order = integration_order(start, options);
    // Collect like terms after each step so the expansion stays small.
    std::vector<ExpPolyTerm> current{start};
    for (const auto& var : order) {
      std::map<TermKey, ExpPolyTerm> merged;
      for (const auto& t : current) {
        for (auto& r : integrate_innermost(t, var, options)) {
          TermKey key{r.chamber.ordering, r.monomial, r.rates, r.scalar.alpha_half_pow,
                      r.scalar.lambda_pow, r.scalar.j_pow};
          auto [it, inserted] = merged.try_emplace(std::move(key), r);
          if (!inserted) it->second.scalar.coeff += r.scalar.coeff;
        }
      }
      current.clear();
      for (auto& [key, t] : merged) {
        if (!t.scalar.coeff.is_zero()) current.push_back(std::move(t));
      }
    }
    for (const auto& t : current) {
      if (!t.monomial.empty() || !t.rates.empty() || !t.chamber.ordering.empty()) {
        throw std::logic_error("time dependence left after integration: " + t.str());
      }
      total += ScalarSeries(t.scalar);
    }
  }
  return total;
}

ScalarSeries integrate_wedge(const PropagatorProduct& product, const IntegrationOptions& options) {
  std::vector<TimeVar> vars{TimeVar::tau1(), TimeVar::tau2()};
  for (int i = 1; i <= product.vertex_count; ++i) vars.push_back(TimeVar::vertex(i));
  return integrate_all(resolve_absolute_values(product, vars), options);
}

double evaluate_product(const PropagatorProduct& product, const std::map<TimeVar, double>& at,
                        double alpha) {
  const double root = std::sqrt(alpha);
  double v = 1.0;
  for (const auto& e : product.edges) {
    v *= std::exp(-root * std::abs(at.at(e.a) - at.at(e.b))) / (2.0 * root);
  }
  return v;
}

double evaluate_term(const ExpPolyTerm& term, const std::map<TimeVar, double>& at, double alpha) {
  double v = ScalarSeries(term.scalar).eval(alpha);
  for (const auto& [var, k] : term.monomial) v *= std::pow(at.at(var), static_cast<double>(k));
  double exponent = 0.0;
  for (const auto& [var, r] : term.rates) exponent += r.to_double() * at.at(var);
  return v * std::exp(std::sqrt(alpha) * exponent);
}

}  // namespace qgt
