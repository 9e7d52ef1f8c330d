#pragma once

#include <compare>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qgt/rational.hpp"

namespace qgt {

/// coeff · α^{alpha_half_pow/2} · λ^{lambda_pow} · J^{j_pow}
struct ScalarTerm {
  Rational coeff;
  int alpha_half_pow = 0;
  unsigned lambda_pow = 0;
  unsigned j_pow = 0;

  ScalarTerm& operator*=(const ScalarTerm& o);
  friend ScalarTerm operator*(ScalarTerm a, const ScalarTerm& b) { return a *= b; }
  friend bool operator==(const ScalarTerm&, const ScalarTerm&) = default;
};

/// Identifies a monomial α^{p/2} λ^a J^b. Ordering is the canonical series
/// order: by λ power, then J power, then α exponent.
struct MonomialKey {
  unsigned lambda_pow = 0;
  unsigned j_pow = 0;
  int alpha_half_pow = 0;

  friend auto operator<=>(const MonomialKey&, const MonomialKey&) = default;
};

/// Exact finite sum of ScalarTerms in canonical form: like monomials merged,
/// zero coefficients dropped, terms ordered by MonomialKey.
class ScalarSeries {
 public:
  ScalarSeries() = default;
  ScalarSeries(Rational constant);  // NOLINT: a rational is a constant series
  ScalarSeries(long constant) : ScalarSeries(Rational(constant)) {}  // NOLINT
  explicit ScalarSeries(const ScalarTerm& term);
  explicit ScalarSeries(const std::vector<ScalarTerm>& terms);

  /// Single monomial helper: coeff · α^{alpha_half_pow/2} λ^l J^j.
  static ScalarSeries monomial(Rational coeff, int alpha_half_pow, unsigned lambda_pow = 0,
                               unsigned j_pow = 0);

  /// Inverse of str(); accepts the canonical rendering and any reordering of
  /// its terms or factors.
  static ScalarSeries parse(std::string_view text);

  [[nodiscard]] std::vector<ScalarTerm> terms() const;
  [[nodiscard]] const std::map<MonomialKey, Rational>& coefficients() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] Rational coefficient(const MonomialKey& key) const;

  [[nodiscard]] unsigned max_lambda_pow() const;
  [[nodiscard]] unsigned max_j_pow() const;

  /// Part of the series with exactly λ^order.
  [[nodiscard]] ScalarSeries lambda_coefficient(unsigned order) const;
  /// Drops every term with λ power above max_order.
  [[nodiscard]] ScalarSeries truncate_lambda(unsigned max_order) const;
  /// Moves λ powers onto J (used to compare a λ·q expansion with J·q results).
  [[nodiscard]] ScalarSeries lambda_as_j() const;

  /// Floating evaluation; throws NonPositiveAlpha for alpha <= 0.
  [[nodiscard]] double eval(double alpha, double lambda = 0.0, double j = 0.0) const;

  /// Canonical rendering, e.g. `1/32 * a^-2 - 11/512 * l * a^-7/2`.
  [[nodiscard]] std::string str() const;

  ScalarSeries& operator+=(const ScalarSeries& o);
  ScalarSeries& operator-=(const ScalarSeries& o);
  ScalarSeries& operator*=(const ScalarSeries& o);
  ScalarSeries& operator*=(const Rational& r);

  friend ScalarSeries operator+(ScalarSeries a, const ScalarSeries& b) { return a += b; }
  friend ScalarSeries operator-(ScalarSeries a, const ScalarSeries& b) { return a -= b; }
  friend ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b);
  friend ScalarSeries operator*(ScalarSeries a, const Rational& r) { return a *= r; }
  friend ScalarSeries operator-(const ScalarSeries& a);

  friend bool operator==(const ScalarSeries&, const ScalarSeries&) = default;

 private:
  void add_term(const MonomialKey& key, const Rational& coeff);

  std::map<MonomialKey, Rational> terms_;
};

ScalarSeries series_add(const ScalarSeries& a, const ScalarSeries& b);
ScalarSeries series_mul(const ScalarSeries& a, const ScalarSeries& b);
double series_eval(const ScalarSeries& a, double alpha, double lambda = 0.0, double j = 0.0);

std::ostream& operator<<(std::ostream& os, const ScalarSeries& s);

}  // namespace qgt
