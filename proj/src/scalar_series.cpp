#include "qgt/scalar_series.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "qgt/errors.hpp"

namespace qgt {

ScalarTerm& ScalarTerm::operator*=(const ScalarTerm& o) {
  coeff *= o.coeff;
  alpha_half_pow += o.alpha_half_pow;
  lambda_pow += o.lambda_pow;
  j_pow += o.j_pow;
  return *this;
}

ScalarSeries::ScalarSeries(Rational constant) { add_term({}, constant); }

ScalarSeries::ScalarSeries(const ScalarTerm& term) {
  add_term({term.lambda_pow, term.j_pow, term.alpha_half_pow}, term.coeff);
}

ScalarSeries::ScalarSeries(const std::vector<ScalarTerm>& terms) {
  for (const auto& t : terms) add_term({t.lambda_pow, t.j_pow, t.alpha_half_pow}, t.coeff);
}

ScalarSeries ScalarSeries::monomial(Rational coeff, int alpha_half_pow, unsigned lambda_pow,
                                    unsigned j_pow) {
  return ScalarSeries(ScalarTerm{std::move(coeff), alpha_half_pow, lambda_pow, j_pow});
}

void ScalarSeries::add_term(const MonomialKey& key, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::vector<ScalarTerm> ScalarSeries::terms() const {
  std::vector<ScalarTerm> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back({c, k.alpha_half_pow, k.lambda_pow, k.j_pow});
  return out;
}

Rational ScalarSeries::coefficient(const MonomialKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned ScalarSeries::max_lambda_pow() const {
  unsigned m = 0;
  for (const auto& [k, c] : terms_) m = std::max(m, k.lambda_pow);
  return m;
}

unsigned ScalarSeries::max_j_pow() const {
  unsigned m = 0;
  for (const auto& [k, c] : terms_) m = std::max(m, k.j_pow);
  return m;
}

ScalarSeries ScalarSeries::lambda_coefficient(unsigned order) const {
  ScalarSeries out;
  for (const auto& [k, c] : terms_) {
    if (k.lambda_pow == order) out.terms_.emplace(k, c);
  }
  return out;
}

ScalarSeries ScalarSeries::truncate_lambda(unsigned max_order) const {
  ScalarSeries out;
  for (const auto& [k, c] : terms_) {
    if (k.lambda_pow <= max_order) out.terms_.emplace(k, c);
  }
  return out;
}

ScalarSeries ScalarSeries::lambda_as_j() const {
  ScalarSeries out;
  for (const auto& [k, c] : terms_) out.add_term({0, k.j_pow + k.lambda_pow, k.alpha_half_pow}, c);
  return out;
}

double ScalarSeries::eval(double alpha, double lambda, double j) const {
  if (!(alpha > 0.0)) throw NonPositiveAlpha(alpha);
  // Extended precision so the result is rounded once, at the end.
  const long double root = std::sqrt(static_cast<long double>(alpha));
  long double sum = 0.0L;
  for (const auto& [k, c] : terms_) {
    long double v = static_cast<long double>(c.raw().get_num().get_d()) /
                    static_cast<long double>(c.raw().get_den().get_d());
    if (k.alpha_half_pow != 0) v *= std::pow(root, static_cast<long double>(k.alpha_half_pow));
    if (k.lambda_pow != 0) v *= std::pow(static_cast<long double>(lambda), static_cast<long double>(k.lambda_pow));
    if (k.j_pow != 0) v *= std::pow(static_cast<long double>(j), static_cast<long double>(k.j_pow));
    sum += v;
  }
  return static_cast<double>(sum);
}

namespace {

std::string power_suffix(unsigned p) { return p == 1 ? "" : "^" + std::to_string(p); }

std::string alpha_factor(int half_pow) {
  if (half_pow == 2) return "a";
  if (half_pow % 2 == 0) return "a^" + std::to_string(half_pow / 2);
  return "a^" + std::to_string(half_pow) + "/2";
}

}  // namespace

std::string ScalarSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    os << c.abs().str();
    if (k.lambda_pow > 0) os << " * l" << power_suffix(k.lambda_pow);
    if (k.j_pow > 0) os << " * j" << power_suffix(k.j_pow);
    if (k.alpha_half_pow != 0) os << " * " << alpha_factor(k.alpha_half_pow);
  }
  return os.str();
}

namespace {

class SeriesParser {
 public:
  explicit SeriesParser(std::string_view text) : s_(text) {}

  ScalarSeries run() {
    skip_ws();
    if (s_.substr(pos_) == "0") return {};
    std::vector<ScalarTerm> terms;
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      ScalarTerm t = term();
      if (sign < 0) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
    }
    if (terms.empty()) fail("empty series");
    return ScalarSeries(terms);
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("series parse error at offset " + std::to_string(pos_) + ": " + what +
                     " in '" + std::string(s_) + "'");
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  // signed integer or integer/2, returned in half units when allow_half
  int exponent(bool half_units) {
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    const int v = std::stoi(digits());
    int out = half_units ? 2 * v : v;
    if (peek() == '/') {
      ++pos_;
      if (!half_units || digits() != "2") fail("only /2 exponents are allowed on a");
      out = v;
    }
    return neg ? -out : out;
  }

  ScalarTerm term() {
    ScalarTerm t{Rational(1), 0, 0, 0};
    bool have_factor = false;
    while (true) {
      skip_ws();
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num = digits();
        if (peek() == '/') {
          ++pos_;
          num += "/" + digits();
        }
        t.coeff *= Rational::parse(num);
      } else if (c == 'a' || c == 'l' || c == 'j') {
        ++pos_;
        int e = c == 'a' ? 2 : 1;
        if (peek() == '^') {
          ++pos_;
          e = exponent(c == 'a');
        }
        if (c == 'a') {
          t.alpha_half_pow += e;
        } else {
          if (e < 0) fail("negative power of l or j");
          (c == 'l' ? t.lambda_pow : t.j_pow) += static_cast<unsigned>(e);
        }
      } else {
        fail("expected a factor");
      }
      have_factor = true;
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    if (!have_factor) fail("empty term");
    return t;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarSeries ScalarSeries::parse(std::string_view text) { return SeriesParser(text).run(); }

ScalarSeries& ScalarSeries::operator+=(const ScalarSeries& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

ScalarSeries& ScalarSeries::operator-=(const ScalarSeries& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
  ScalarSeries out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      out.add_term({ka.lambda_pow + kb.lambda_pow, ka.j_pow + kb.j_pow,
                    ka.alpha_half_pow + kb.alpha_half_pow},
                   ca * cb);
    }
  }
  return out;
}

ScalarSeries& ScalarSeries::operator*=(const ScalarSeries& o) { return *this = *this * o; }

ScalarSeries& ScalarSeries::operator*=(const Rational& r) {
  if (r.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= r;
  return *this;
}

ScalarSeries operator-(const ScalarSeries& a) { return a * Rational(-1); }

ScalarSeries series_add(const ScalarSeries& a, const ScalarSeries& b) { return a + b; }
ScalarSeries series_mul(const ScalarSeries& a, const ScalarSeries& b) { return a * b; }
double series_eval(const ScalarSeries& a, double alpha, double lambda, double j) {
  return a.eval(alpha, lambda, j);
}

std::ostream& operator<<(std::ostream& os, const ScalarSeries& s) { return os << s.str(); }

}  // namespace qgt
