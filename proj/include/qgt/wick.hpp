#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgt/propagator.hpp"
#include "qgt/scalar_series.hpp"

namespace qgt {

/// q^power(time_var) inside a Gaussian moment.
struct InsertionPoint {
  TimeVar time_var;
  int power = 1;
};

/// One Wick contraction class: a multiset of propagators plus the legs routed
/// to the constant one-point function (only with a source), weighted by the
/// number of leg-level pairings that produce it.
struct WickDiagram {
  std::vector<Propagator> edges;   // sorted
  std::vector<TimeVar> mean_legs;  // sorted
  std::uint64_t multiplicity = 0;

  friend bool operator==(const WickDiagram&, const WickDiagram&) = default;
};

/// Free oscillator measure, optionally shifted by a constant source J.
/// With the source on every leg may attach to the constant mean ⟨q⟩ = −J/α.
struct GaussianModel {
  bool source = false;

  [[nodiscard]] ScalarSeries mean_value() const;
};

/// All contraction classes of ∏ q^{power}(t). Points sharing a time variable
/// are merged. Without a mean an odd number of q factors yields no diagrams.
std::vector<WickDiagram> enumerate_pairings(const std::vector<InsertionPoint>& points,
                                            bool with_mean);

/// Σ_diagrams multiplicity · ∏ D · mean^{#mean legs}. FullAxis variables among
/// the points must be named s1..s_m.
Correlator moment(const GaussianModel& model, const std::vector<InsertionPoint>& points);

/// ⟨A B⟩ − ⟨A⟩⟨B⟩ with exact cancellation of the disconnected part.
Correlator connected_pair_correlator(const GaussianModel& model,
                                     const std::vector<InsertionPoint>& a,
                                     const std::vector<InsertionPoint>& b);

/// Graphviz rendering of one diagram. Loops are drawn as self edges and mean
/// legs as dashed edges to a point node.
std::string to_dot(const WickDiagram& diagram, const std::string& graph_name);

/// Graphviz rendering of one correlator term, labelled with its coefficient.
std::string to_dot(const PropagatorProduct& product, const ScalarSeries& coefficient,
                   const std::string& graph_name);

}  // namespace qgt
