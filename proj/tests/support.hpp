#pragma once

#include <map>
#include <string>

#include "oracles/brute_pairing.hpp"
#include "qgt/propagator.hpp"

namespace testing_support {

inline oracle::Graph as_graph(const qgt::PropagatorProduct& p) {
  oracle::Graph g;
  for (const auto& e : p.edges) g.emplace_back(e.a.name, e.b.name);
  return g;
}

/// Correlator with coefficients that are pure rationals (no α, λ, J), keyed
/// by the oracle's canonical graph form.
inline std::map<std::string, qgt::Rational> as_counts(const qgt::Correlator& c) {
  std::map<std::string, qgt::Rational> out;
  for (const auto& [p, coeff] : c.terms()) {
    qgt::Rational total;
    for (const auto& t : coeff.terms()) {
      if (t.alpha_half_pow != 0 || t.lambda_pow != 0 || t.j_pow != 0) throw std::logic_error("non-numeric coefficient");
      total += t.coeff;
    }
    out[oracle::canonical(as_graph(p), p.vertex_count)] += total;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

inline std::map<std::string, qgt::Rational> as_rationals(const std::map<std::string, long long>& counts) {
  std::map<std::string, qgt::Rational> out;
  for (const auto& [k, n] : counts) {
    if (n != 0) out[k] = qgt::Rational(static_cast<long>(n));
  }
  return out;
}

}  // namespace testing_support
