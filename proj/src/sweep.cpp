#include "qgt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace qgt {

std::vector<ParameterPoint> SweepGrid::points() const {
  std::vector<ParameterPoint> out;
  for (double a : alphas) {
    for (double l : lambdas) {
      for (double j : js) out.push_back({a, l, j});
    }
  }
  return out;
}

namespace {

std::vector<std::pair<Parameter, Parameter>> upper(const std::vector<Parameter>& labels) {
  std::vector<std::pair<Parameter, Parameter>> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t k = i; k < labels.size(); ++k) out.emplace_back(labels[i], labels[k]);
  }
  return out;
}

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

SweepResult run_sweep(const ParameterSpace& space, const SweepGrid& grid, const QgtOptions& symbolic,
                      const OracleConfig& oracle, unsigned workers) {
  space.validate();
  oracle.validate();
  SweepResult result;
  result.space = space;
  const QGTResult qgt = compute_qgt(space, symbolic);
  result.order = qgt.order;
  const auto det = determinant_and_critical(qgt.metric, space.labels, qgt.order);
  const auto pairs = upper(space.labels);
  const auto potential = space.model.potential();
  const auto points = grid.points();
  result.rows.resize(points.size());

  auto evaluate = [&](std::size_t i) {
    const ParameterPoint& p = points[i];
    SweepRow row;
    row.point = p;
    const NumericQGT numeric = numeric_qim(p, potential, space.labels, oracle);
    for (const auto& [a, b] : pairs) {
      SweepEntry e;
      e.series = qgt.metric.at({a, b}).eval(p.alpha, p.lambda, p.j);
      e.oracle = numeric.at(a, b);
      e.oracle_error = numeric.error(a, b);
      e.deviation = e.oracle - e.series;
      row.entries.push_back(e);
    }
    row.determinant = det.determinant.eval(p.alpha, p.lambda, p.j);
    row.critical_coupling = det.critical.coefficient
                                ? *det.critical.coefficient * std::pow(p.alpha, 0.5 * det.critical.alpha_half_pow)
                                : std::numeric_limits<double>::quiet_NaN();
    result.rows[i] = std::move(row);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, points.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        evaluate(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return result;
}

void write_csv(std::ostream& os, const SweepResult& result) {
  os << "model,order,alpha,lambda,j";
  for (const auto& [a, b] : upper(result.space.labels)) {
    const std::string g = "g_" + to_string(a) + "_" + to_string(b);
    os << "," << g << "_series," << g << "_oracle," << g << "_oracle_error," << g << "_deviation";
  }
  os << ",det_series,lambda_c\n";
  for (const auto& row : result.rows) {
    os << result.space.model.name() << "," << result.order << "," << number(row.point.alpha) << ","
       << number(row.point.lambda) << "," << number(row.point.j);
    for (const auto& e : row.entries) {
      os << "," << number(e.series) << "," << number(e.oracle) << "," << number(e.oracle_error) << ","
         << number(e.deviation);
    }
    os << "," << number(row.determinant) << "," << number(row.critical_coupling) << "\n";
  }
}

}  // namespace qgt
