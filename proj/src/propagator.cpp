#include "qgt/propagator.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qgt {

std::ostream& operator<<(std::ostream& os, const TimeVar& v) { return os << v.name; }

Propagator::Propagator(TimeVar x, TimeVar y) : a(std::move(x)), b(std::move(y)) {
  if (b < a) std::swap(a, b);
}

void PropagatorProduct::normalize() { std::sort(edges.begin(), edges.end()); }

std::vector<TimeVar> PropagatorProduct::variables() const {
  std::vector<TimeVar> vars;
  for (const auto& e : edges) {
    vars.push_back(e.a);
    vars.push_back(e.b);
  }
  for (int i = 1; i <= vertex_count; ++i) vars.push_back(TimeVar::vertex(i));
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

std::string PropagatorProduct::str() const {
  if (edges.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    while (j < edges.size() && edges[j] == edges[i]) ++j;
    if (i > 0) os << " ";
    os << "D(" << edges[i].a << "," << edges[i].b << ")";
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

PropagatorProduct canonical_vertex_labels(const PropagatorProduct& p) {
  if (p.vertex_count <= 1) {
    PropagatorProduct q = p;
    q.normalize();
    return q;
  }
  std::vector<int> perm(static_cast<std::size_t>(p.vertex_count));
  std::iota(perm.begin(), perm.end(), 1);

  // Map old vertex index -> new vertex index given by perm.
  auto relabel = [&](const TimeVar& v) -> TimeVar {
    if (!v.is_vertex()) return v;
    const int idx = std::stoi(v.name.substr(1));
    return TimeVar::vertex(perm[static_cast<std::size_t>(idx - 1)]);
  };

  PropagatorProduct best;
  bool have_best = false;
  do {
    PropagatorProduct candidate;
    candidate.vertex_count = p.vertex_count;
    candidate.edges.reserve(p.edges.size());
    for (const auto& e : p.edges) candidate.edges.emplace_back(relabel(e.a), relabel(e.b));
    candidate.normalize();
    if (!have_best || candidate.edges < best.edges) {
      best = std::move(candidate);
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool is_connected(const PropagatorProduct& p, const std::vector<TimeVar>& required) {
  std::vector<TimeVar> vars = p.variables();
  vars.insert(vars.end(), required.begin(), required.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.size() <= 1) return true;

  std::vector<std::size_t> parent(vars.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto index = [&](const TimeVar& v) {
    return static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
  };
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : p.edges) parent[find(index(e.a))] = find(index(e.b));
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < vars.size(); ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

Correlator::Correlator(PropagatorProduct product, ScalarSeries coefficient) {
  add(product, coefficient);
}

Correlator Correlator::constant(ScalarSeries value) {
  return Correlator(PropagatorProduct{}, std::move(value));
}

ScalarSeries Correlator::coefficient(const PropagatorProduct& p) const {
  auto it = terms_.find(canonical_vertex_labels(p));
  return it == terms_.end() ? ScalarSeries{} : it->second;
}

void Correlator::add(const PropagatorProduct& product, const ScalarSeries& coefficient) {
  if (coefficient.is_zero()) return;
  auto key = canonical_vertex_labels(product);
  auto [it, inserted] = terms_.try_emplace(std::move(key), coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Correlator& Correlator::operator+=(const Correlator& o) {
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

Correlator& Correlator::operator-=(const Correlator& o) {
  for (const auto& [p, c] : o.terms_) add(p, -c);
  return *this;
}

Correlator& Correlator::operator*=(const ScalarSeries& s) {
  Correlator out;
  for (const auto& [p, c] : terms_) out.add(p, c * s);
  return *this = std::move(out);
}

namespace {

unsigned lowest_lambda_pow(const ScalarSeries& s) {
  unsigned m = ~0U;
  for (const auto& [k, c] : s.coefficients()) m = std::min(m, k.lambda_pow);
  return m;
}

PropagatorProduct disjoint_union(const PropagatorProduct& pa, const PropagatorProduct& pb) {
  PropagatorProduct prod = pa;
  prod.vertex_count = pa.vertex_count + pb.vertex_count;
  auto shift = [&](const TimeVar& v) {
    if (!v.is_vertex()) return v;
    return TimeVar::vertex(std::stoi(v.name.substr(1)) + pa.vertex_count);
  };
  for (const auto& e : pb.edges) prod.edges.emplace_back(shift(e.a), shift(e.b));
  return prod;
}

}  // namespace

Correlator operator*(const Correlator& a, const Correlator& b) {
  Correlator out;
  for (const auto& [pa, ca] : a.terms_) {
    for (const auto& [pb, cb] : b.terms_) out.add(disjoint_union(pa, pb), ca * cb);
  }
  return out;
}

Correlator multiply_truncated(const Correlator& a, const Correlator& b, unsigned max_order) {
  Correlator out;
  for (const auto& [pa, ca] : a.terms()) {
    const unsigned la = lowest_lambda_pow(ca);
    for (const auto& [pb, cb] : b.terms()) {
      if (la + lowest_lambda_pow(cb) > max_order) continue;
      out.add(disjoint_union(pa, pb), (ca * cb).truncate_lambda(max_order));
    }
  }
  return out;
}

Correlator Correlator::truncate_lambda(unsigned max_order) const {
  Correlator out;
  for (const auto& [p, c] : terms_) {
    auto t = c.truncate_lambda(max_order);
    if (!t.is_zero()) out.terms_.emplace(p, std::move(t));
  }
  return out;
}

std::string Correlator::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) os << "\n";
    first = false;
    os << "[" << c.str() << "] " << p.str();
    if (p.vertex_count > 0) os << " {vertices " << p.vertex_count << "}";
  }
  return os.str();
}

}  // namespace qgt
