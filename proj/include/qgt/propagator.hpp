#pragma once

#include <compare>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "qgt/scalar_series.hpp"

namespace qgt {

/// Integration domain of a Euclidean time variable.
enum class Domain {
  NegativeHalfAxis,  // τ₁ ∈ (−∞, 0]
  PositiveHalfAxis,  // τ₂ ∈ [0, ∞)
  FullAxis,          // interaction vertices s ∈ (−∞, ∞)
};

struct TimeVar {
  std::string name;
  Domain domain = Domain::FullAxis;

  static TimeVar tau1() { return {"t1", Domain::NegativeHalfAxis}; }
  static TimeVar tau2() { return {"t2", Domain::PositiveHalfAxis}; }
  /// Interaction vertex s_index (1-based).
  static TimeVar vertex(int index) { return {"s" + std::to_string(index), Domain::FullAxis}; }

  [[nodiscard]] bool is_vertex() const { return domain == Domain::FullAxis; }

  friend auto operator<=>(const TimeVar& a, const TimeVar& b) {
    if (auto c = a.domain <=> b.domain; c != 0) return c;
    if (auto c = a.name.size() <=> b.name.size(); c != 0) return c;
    return a.name <=> b.name;
  }
  friend bool operator==(const TimeVar&, const TimeVar&) = default;
};

std::ostream& operator<<(std::ostream& os, const TimeVar& v);

/// Free propagator D(a,b) = e^{−√α|a−b|}/(2√α); endpoints stored with a ≤ b.
struct Propagator {
  TimeVar a;
  TimeVar b;

  Propagator(TimeVar x, TimeVar y);

  [[nodiscard]] bool is_loop() const { return a == b; }

  friend auto operator<=>(const Propagator&, const Propagator&) = default;
  friend bool operator==(const Propagator&, const Propagator&) = default;
};

/// A product of propagators together with the interaction vertices it is
/// integrated over. Vertices are s1..s_{vertex_count}; a vertex may carry no
/// propagator at all (every leg attached to a constant mean), so the count is
/// stored explicitly.
struct PropagatorProduct {
  std::vector<Propagator> edges;  // sorted
  int vertex_count = 0;

  void normalize();
  [[nodiscard]] std::vector<TimeVar> variables() const;
  [[nodiscard]] std::string str() const;

  friend auto operator<=>(const PropagatorProduct&, const PropagatorProduct&) = default;
  friend bool operator==(const PropagatorProduct&, const PropagatorProduct&) = default;
};

/// Formal sum Σ coefficient · product, the symbolic value of a Gaussian
/// moment before time integration. Coefficients carry λ, J and α powers.
class Correlator {
 public:
  Correlator() = default;
  Correlator(PropagatorProduct product, ScalarSeries coefficient);

  static Correlator constant(ScalarSeries value);

  [[nodiscard]] const std::map<PropagatorProduct, ScalarSeries>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] ScalarSeries coefficient(const PropagatorProduct& p) const;

  void add(const PropagatorProduct& product, const ScalarSeries& coefficient);

  Correlator& operator+=(const Correlator& o);
  Correlator& operator-=(const Correlator& o);
  Correlator& operator*=(const ScalarSeries& s);

  friend Correlator operator+(Correlator a, const Correlator& b) { return a += b; }
  friend Correlator operator-(Correlator a, const Correlator& b) { return a -= b; }
  friend Correlator operator*(Correlator a, const ScalarSeries& s) { return a *= s; }

  /// Product of two correlators. Interaction vertices of the right operand are
  /// renumbered after those of the left, then each product is brought to the
  /// canonical vertex labelling so relabelled duplicates merge.
  friend Correlator operator*(const Correlator& a, const Correlator& b);

  /// Drops terms whose coefficients exceed λ^max_order.
  [[nodiscard]] Correlator truncate_lambda(unsigned max_order) const;

  [[nodiscard]] std::string str() const;

  friend bool operator==(const Correlator&, const Correlator&) = default;

 private:
  std::map<PropagatorProduct, ScalarSeries> terms_;
};

/// Disjoint product truncated at λ^max_order; pairs whose combined lowest λ
/// power already exceeds the cap are skipped before relabelling.
Correlator multiply_truncated(const Correlator& a, const Correlator& b, unsigned max_order);

/// Relabels interaction vertices to the lexicographically smallest edge list
/// over all permutations of s1..s_m. Integrals are invariant under this.
PropagatorProduct canonical_vertex_labels(const PropagatorProduct& p);

/// True when the edge graph over all variables of p (including τ₁/τ₂ passed
/// as `required`) forms a single connected component.
bool is_connected(const PropagatorProduct& p, const std::vector<TimeVar>& required);

}  // namespace qgt
