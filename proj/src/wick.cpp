#include "qgt/wick.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qgt {

ScalarSeries GaussianModel::mean_value() const {
  // ⟨q⟩ = −J ∫ds D(s,τ) = −J/α
  if (!source) return {};
  return ScalarSeries::monomial(Rational(-1), -2, 0, 1);
}

namespace {

struct Vertex {
  TimeVar var;
  int degree = 0;
};

std::vector<Vertex> merge_points(const std::vector<InsertionPoint>& points) {
  std::map<TimeVar, int> degrees;
  for (const auto& p : points) {
    if (p.power < 1) throw std::invalid_argument("insertion power must be >= 1");
    degrees[p.time_var] += p.power;
  }
  std::vector<Vertex> out;
  for (const auto& [v, d] : degrees) out.push_back({v, d});
  return out;
}

// Enumerates symmetric non-negative integer matrices (loops on the diagonal
// counted twice) with prescribed row sums.
class MultigraphEnumerator {
 public:
  MultigraphEnumerator(const std::vector<Vertex>& vertices, std::vector<int> mean_legs,
                       std::vector<WickDiagram>& out)
      : vertices_(vertices),
        mean_(std::move(mean_legs)),
        out_(out),
        n_(vertices.size()),
        remaining_(n_),
        loops_(n_, 0),
        links_(n_, std::vector<int>(n_, 0)) {
    for (std::size_t i = 0; i < n_; ++i) remaining_[i] = vertices_[i].degree - mean_[i];
  }

  void run() { place_loops(0); }

 private:
  void place_loops(std::size_t i) {
    if (i == n_) {
      emit();
      return;
    }
    const int r = remaining_[i];
    for (int l = r / 2; l >= 0; --l) {
      loops_[i] = l;
      remaining_[i] = r - 2 * l;
      place_links(i, i + 1);
    }
    loops_[i] = 0;
    remaining_[i] = r;
  }

  // distribute the open legs of vertex i over partners j >= next
  void place_links(std::size_t i, std::size_t next) {
    if (remaining_[i] == 0) {
      place_loops(i + 1);
      return;
    }
    if (next >= n_) return;
    const int cap = std::min(remaining_[i], remaining_[next]);
    const int ri = remaining_[i];
    const int rn = remaining_[next];
    for (int m = cap; m >= 0; --m) {
      links_[i][next] = m;
      remaining_[i] = ri - m;
      remaining_[next] = rn - m;
      place_links(i, next + 1);
    }
    links_[i][next] = 0;
    remaining_[i] = ri;
    remaining_[next] = rn;
  }

  void emit() {
    WickDiagram d;
    Rational weight(1);
    for (std::size_t i = 0; i < n_; ++i) {
      weight *= Rational::factorial(static_cast<unsigned>(vertices_[i].degree));
      weight /= Rational::factorial(static_cast<unsigned>(mean_[i]));
      weight /= Rational::factorial(static_cast<unsigned>(loops_[i])) * Rational(2).pow(loops_[i]);
      for (int k = 0; k < mean_[i]; ++k) d.mean_legs.push_back(vertices_[i].var);
      for (int k = 0; k < loops_[i]; ++k) d.edges.emplace_back(vertices_[i].var, vertices_[i].var);
      for (std::size_t j = i + 1; j < n_; ++j) {
        weight /= Rational::factorial(static_cast<unsigned>(links_[i][j]));
        for (int k = 0; k < links_[i][j]; ++k) d.edges.emplace_back(vertices_[i].var, vertices_[j].var);
      }
    }
    std::sort(d.edges.begin(), d.edges.end());
    std::sort(d.mean_legs.begin(), d.mean_legs.end());
    d.multiplicity = std::stoull(weight.numerator());
    out_.push_back(std::move(d));
  }

  const std::vector<Vertex>& vertices_;
  std::vector<int> mean_;
  std::vector<WickDiagram>& out_;
  std::size_t n_;
  std::vector<int> remaining_;
  std::vector<int> loops_;
  std::vector<std::vector<int>> links_;
};

void enumerate_mean_assignments(const std::vector<Vertex>& vertices, bool with_mean,
                                std::vector<int>& mean, std::size_t i,
                                std::vector<WickDiagram>& out) {
  if (i == vertices.size()) {
    int open = 0;
    for (std::size_t k = 0; k < vertices.size(); ++k) open += vertices[k].degree - mean[k];
    if (open % 2 == 0) MultigraphEnumerator(vertices, mean, out).run();
    return;
  }
  const int top = with_mean ? vertices[i].degree : 0;
  for (int m = 0; m <= top; ++m) {
    mean[i] = m;
    enumerate_mean_assignments(vertices, with_mean, mean, i + 1, out);
  }
  mean[i] = 0;
}

int vertex_count_of(const std::vector<Vertex>& vertices) {
  int count = 0;
  for (const auto& v : vertices) {
    if (!v.var.is_vertex()) continue;
    ++count;
    if (v.var.name.size() < 2 || v.var.name[0] != 's') {
      throw std::invalid_argument("interaction vertices must be named s1..sm, got " + v.var.name);
    }
  }
  for (int k = 1; k <= count; ++k) {
    const bool present = std::any_of(vertices.begin(), vertices.end(),
                                     [&](const Vertex& v) { return v.var == TimeVar::vertex(k); });
    if (!present) throw std::invalid_argument("interaction vertices must be numbered contiguously");
  }
  return count;
}

}  // namespace

std::vector<WickDiagram> enumerate_pairings(const std::vector<InsertionPoint>& points,
                                            bool with_mean) {
  const auto vertices = merge_points(points);
  std::vector<WickDiagram> out;
  std::vector<int> mean(vertices.size(), 0);
  enumerate_mean_assignments(vertices, with_mean, mean, 0, out);
  std::sort(out.begin(), out.end(), [](const WickDiagram& a, const WickDiagram& b) {
    return std::tie(a.mean_legs, a.edges) < std::tie(b.mean_legs, b.edges);
  });
  return out;
}

namespace {

using RawSum = std::map<PropagatorProduct, ScalarSeries>;

// Moment with the vertex labels kept as given, so sums over overlapping
// variable sets can be combined before canonical relabelling.
RawSum raw_moment(const GaussianModel& model, const std::vector<InsertionPoint>& points, int vertex_count) {
  const ScalarSeries mean = model.mean_value();
  RawSum out;
  for (const auto& d : enumerate_pairings(points, model.source)) {
    ScalarSeries coeff(Rational(static_cast<long>(d.multiplicity)));
    for (std::size_t k = 0; k < d.mean_legs.size(); ++k) coeff *= mean;
    out[PropagatorProduct{d.edges, vertex_count}] += coeff;
  }
  return out;
}

int highest_vertex(const std::vector<InsertionPoint>& points) {
  int top = 0;
  for (const auto& p : points) {
    if (!p.time_var.is_vertex()) continue;
    const auto& name = p.time_var.name;
    if (name.size() < 2 || name[0] != 's' || name.find_first_not_of("0123456789", 1) != std::string::npos) {
      throw std::invalid_argument("interaction vertices must be named s1..sm, got " + name);
    }
    top = std::max(top, std::stoi(name.substr(1)));
  }
  return top;
}

}  // namespace

Correlator moment(const GaussianModel& model, const std::vector<InsertionPoint>& points) {
  const int vertex_count = vertex_count_of(merge_points(points));
  Correlator out;
  for (const auto& [p, c] : raw_moment(model, points, vertex_count)) out.add(p, c);
  return out;
}

Correlator connected_pair_correlator(const GaussianModel& model,
                                     const std::vector<InsertionPoint>& a,
                                     const std::vector<InsertionPoint>& b) {
  std::vector<InsertionPoint> joint = a;
  joint.insert(joint.end(), b.begin(), b.end());
  const int vertex_count = highest_vertex(joint);
  RawSum sum = raw_moment(model, joint, vertex_count);
  for (const auto& [pa, ca] : raw_moment(model, a, vertex_count)) {
    for (const auto& [pb, cb] : raw_moment(model, b, vertex_count)) {
      PropagatorProduct prod = pa;
      prod.edges.insert(prod.edges.end(), pb.edges.begin(), pb.edges.end());
      prod.normalize();
      sum[prod] -= ca * cb;
    }
  }
  Correlator out;
  for (const auto& [p, c] : sum) out.add(p, c);
  return out;
}

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void write_nodes(std::ostringstream& os, const std::vector<TimeVar>& vars) {
  for (const auto& v : vars) {
    os << "  " << quoted(v.name);
    if (v.is_vertex()) {
      os << " [shape=circle, style=filled, fillcolor=lightgray]";
    } else {
      os << " [shape=box]";
    }
    os << ";\n";
  }
}

void write_edges(std::ostringstream& os, const std::vector<Propagator>& edges) {
  for (const auto& e : edges) {
    os << "  " << quoted(e.a.name) << " -- " << quoted(e.b.name) << " [label="
       << quoted("D(" + e.a.name + "," + e.b.name + ")") << "];\n";
  }
}

}  // namespace

std::string to_dot(const WickDiagram& diagram, const std::string& graph_name) {
  std::vector<TimeVar> vars;
  for (const auto& e : diagram.edges) {
    vars.push_back(e.a);
    vars.push_back(e.b);
  }
  vars.insert(vars.end(), diagram.mean_legs.begin(), diagram.mean_legs.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

  std::ostringstream os;
  os << "graph " << quoted(graph_name) << " {\n";
  os << "  label=" << quoted("multiplicity " + std::to_string(diagram.multiplicity)) << ";\n";
  write_nodes(os, vars);
  write_edges(os, diagram.edges);
  for (std::size_t k = 0; k < diagram.mean_legs.size(); ++k) {
    const std::string node = "mean" + std::to_string(k + 1);
    os << "  " << quoted(node) << " [shape=point];\n";
    os << "  " << quoted(diagram.mean_legs[k].name) << " -- " << quoted(node)
       << " [style=dashed, label=\"<q>\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const PropagatorProduct& product, const ScalarSeries& coefficient,
                   const std::string& graph_name) {
  std::ostringstream os;
  os << "graph " << quoted(graph_name) << " {\n";
  os << "  label=" << quoted("multiplicity " + coefficient.str()) << ";\n";
  write_nodes(os, product.variables());
  write_edges(os, product.edges);
  os << "}\n";
  return os.str();
}

}  // namespace qgt
