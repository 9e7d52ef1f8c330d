// qgt: quantum geometric tensor of anharmonic oscillators from Euclidean
// correlators, with numerical cross-checks.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qgt/errors.hpp"
#include "qgt/geometric_tensor.hpp"
#include "qgt/record.hpp"
#include "qgt/spectral_oracle.hpp"
#include "qgt/sweep.hpp"
#include "qgt/verify.hpp"
#include "qgt/wick.hpp"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalidConfig = 2, kDivergent = 3 };

struct Common {
  std::string model = "quartic";
  std::string params;
  int order = 1;
  std::optional<double> alpha, lambda, j;
  int basis_size = 128;
  std::string fd_step;
  std::string format = "json";
  std::string out;
  bool verbose = false;
  std::string inject;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument("not a finite number: '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_double(s));
  return out;
}

qgt::ParameterSpace make_space(const Common& c) {
  const auto model = qgt::Model::parse(c.model);
  auto space = qgt::ParameterSpace::standard(model);
  if (!c.params.empty()) {
    space.labels.clear();
    for (const auto& s : split(c.params, ',')) space.labels.push_back(qgt::parse_parameter(s));
  }
  space.validate();
  if (c.j && *c.j != 0.0 && !space.has(qgt::Parameter::J)) {
    throw std::invalid_argument("a nonzero --j needs j among --params");
  }
  if (c.lambda && *c.lambda != 0.0 && !model.has_interaction()) {
    throw std::invalid_argument("the linear model has no lambda coupling");
  }
  return space;
}

qgt::QgtOptions make_options(const Common& c) {
  qgt::QgtOptions o;
  o.order = c.order;
  if (const char* cap = std::getenv("QGT_MAX_ORDER")) {
    o.max_order = static_cast<int>(parse_double(cap));
  }
  if (o.order < 0) throw std::invalid_argument("--order must be >= 0");
  if (o.order > o.max_order) throw qgt::OrderOverflow(o.order, o.max_order);
  for (const auto& item : split(c.inject, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--inject-prefactor expects name=p/q");
    o.prefactor_override[qgt::parse_parameter(item.substr(0, eq))] = qgt::Rational::parse(item.substr(eq + 1));
  }
  if (c.alpha && *c.alpha <= 0.0) o.integration.alpha_sign = -1;
  return o;
}

qgt::OracleConfig make_oracle(const Common& c) {
  qgt::OracleConfig o;
  o.basis_size = c.basis_size;
  for (const auto& item : split(c.fd_step, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      const double h = parse_double(item);
      for (auto p : {qgt::Parameter::Alpha, qgt::Parameter::Lambda, qgt::Parameter::J}) o.fd_step[p] = h;
    } else {
      o.fd_step[qgt::parse_parameter(item.substr(0, eq))] = parse_double(item.substr(eq + 1));
    }
  }
  o.validate();
  return o;
}

std::optional<qgt::ParameterPoint> make_point(const Common& c) {
  if (!c.alpha) return std::nullopt;
  if (!(*c.alpha > 0.0)) throw qgt::NonPositiveAlpha(*c.alpha);
  return qgt::ParameterPoint{*c.alpha, c.lambda.value_or(0.0), c.j.value_or(0.0)};
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + c.out);
  f << text;
}

void trace_integration(const qgt::ParameterSpace& space, const qgt::QgtOptions& options) {
  for (auto a : space.labels) {
    for (auto b : space.labels) {
      const auto integrand = qgt::component_integrand(space, a, b, options);
      std::cerr << "# integrand " << qgt::to_string(a) << "," << qgt::to_string(b) << "\n"
                << qgt::integrand_text(integrand);
      for (const auto& [product, coeff] : integrand.terms()) {
        std::cerr << "## " << product.str() << "\n";
        for (const auto& term : qgt::resolve_absolute_values(product, product.variables())) {
          std::cerr << "   " << term.str() << "\n";
        }
      }
    }
  }
}

int cmd_compute(const Common& c) {
  const auto space = make_space(c);
  const auto options = make_options(c);
  if (c.verbose) trace_integration(space, options);
  const auto result = qgt::compute_qgt(space, options);
  const auto record = qgt::qgt_record(result, make_point(c));
  if (c.format == "json") {
    emit(c, record.dump(2) + "\n");
  } else if (c.format == "text") {
    emit(c, qgt::record_text(record));
  } else {
    std::ostringstream os;
    os << "row,col,series,numeric_value\n";
    for (const auto& e : record.at("metric")) {
      os << e.at("row").get<std::string>() << "," << e.at("col").get<std::string>() << ",\""
         << e.at("text").get<std::string>() << "\",";
      if (e.contains("numeric_value")) os << e.at("numeric_value").dump();
      os << "\n";
    }
    emit(c, os.str());
  }
  return kOk;
}

int cmd_verify(const Common& c, const std::string& which) {
  qgt::VerifyOptions v;
  v.symbolic = make_options(c);
  v.oracle = make_oracle(c);
  qgt::VerifyReport report;
  if (which == "linear") {
    report = qgt::verify_linear(v);
  } else if (which == "quartic") {
    report = qgt::verify_quartic(v);
  } else {
    report = qgt::verify_all(v);
  }
  if (c.format == "json") {
    qgt::Json j{{"suite", which}, {"pass", report.pass()}, {"max_delta", report.max_delta()}};
    j["checks"] = qgt::Json::array();
    for (const auto& ch : report.checks) {
      j["checks"].push_back({{"name", ch.name}, {"pass", ch.pass}, {"delta", ch.delta},
                             {"tolerance", ch.tolerance}, {"detail", ch.detail}});
    }
    emit(c, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (const auto& ch : report.checks) {
      if (!ch.pass || c.verbose) {
        os << (ch.pass ? "PASS " : "FAIL ") << ch.name << "  delta " << ch.delta << " (tolerance "
           << ch.tolerance << ")  " << ch.detail << "\n";
      }
    }
    os << (report.pass() ? "PASS" : "FAIL") << " verify " << which << ": " << report.checks.size()
       << " checks, max delta " << report.max_delta() << "\n";
    emit(c, os.str());
  }
  return report.pass() ? kOk : kVerifyFailed;
}

int cmd_diagrams(const Common& c, const std::string& component) {
  const auto space = make_space(c);
  const auto options = make_options(c);
  const auto names = split(component, ',');
  if (names.size() != 2) throw std::invalid_argument("--component expects two labels, e.g. alpha,lambda");
  const auto a = qgt::parse_parameter(names[0]);
  const auto b = qgt::parse_parameter(names[1]);
  if (c.out.empty()) throw std::invalid_argument("diagrams needs --out DIR");

  qgt::Correlator integrand = qgt::component_integrand(space, a, b, options);
  const int m = space.model.has_interaction() ? options.order : 0;
  if (space.model.has_interaction()) {
    qgt::PerturbativeExpansion expansion;
    expansion.order = options.order;
    expansion.max_order = options.max_order;
    expansion.interaction = space.model.potential();
    integrand = qgt::vertex_integrand(integrand, m, expansion);
  }
  std::filesystem::create_directories(c.out);
  std::size_t index = 0;
  for (const auto& [product, coeff] : integrand.terms()) {
    ++index;
    const std::string stem = qgt::to_string(a) + "_" + qgt::to_string(b) + "_M" + std::to_string(m) + "_" +
                             std::to_string(index);
    const auto path = std::filesystem::path(c.out) / (stem + ".dot");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write " + path.string());
    f << qgt::to_dot(product, coeff, stem);
    std::cout << path.string() << "\t" << coeff.str() << "\t" << product.str() << "\n";
  }
  return kOk;
}

int cmd_sweep(const Common& c, const std::string& alphas, const std::string& lambdas, const std::string& js,
              unsigned threads) {
  Common base = c;
  base.alpha.reset();
  base.lambda.reset();
  base.j.reset();
  auto space = make_space(base);
  qgt::SweepGrid grid{parse_list(alphas), parse_list(lambdas), parse_list(js)};
  for (double a : grid.alphas) {
    if (!(a > 0.0)) throw qgt::NonPositiveAlpha(a);
  }
  for (double l : grid.lambdas) {
    if (l != 0.0 && !space.model.has_interaction()) throw std::invalid_argument("the linear model has no lambda coupling");
  }
  for (double j : grid.js) {
    if (j != 0.0 && !space.has(qgt::Parameter::J)) throw std::invalid_argument("a nonzero J needs j among --params");
  }
  const auto result = qgt::run_sweep(space, grid, make_options(base), make_oracle(c), threads);
  std::ostringstream os;
  qgt::write_csv(os, result);
  emit(c, os.str());
  return kOk;
}

int cmd_oracle(const Common& c, bool fidelity) {
  const auto space = make_space(c);
  const auto point = make_point(c).value_or(qgt::ParameterPoint{});
  auto config = make_oracle(c);
  config.basis_check = true;
  const auto potential = space.model.potential();
  const auto g = fidelity ? qgt::fidelity_qim(point, potential, space.labels, config)
                          : qgt::numeric_qim(point, potential, space.labels, config);
  std::ostringstream os;
  char buf[200];
  os << "row,col,value,step_error,basis_drift\n";
  for (std::size_t i = 0; i < space.labels.size(); ++i) {
    for (std::size_t k = i; k < space.labels.size(); ++k) {
      const auto ii = static_cast<Eigen::Index>(i), kk = static_cast<Eigen::Index>(k);
      const double drift = g.basis_drift ? (*g.basis_drift)(ii, kk) : std::nan("");
      std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.3e,%.3e\n", qgt::to_string(space.labels[i]).c_str(),
                    qgt::to_string(space.labels[k]).c_str(), g.metric(ii, kk), g.step_error(ii, kk), drift);
      os << buf;
    }
  }
  emit(c, os.str());
  return kOk;
}

void add_common(CLI::App* cmd, Common& c, bool point) {
  cmd->add_option("--model", c.model, "linear, quartic or monomial:k")->capture_default_str();
  cmd->add_option("--params", c.params, "comma-separated parameter labels (default: model standard)");
  cmd->add_option("--order", c.order, "truncation order M in lambda")->capture_default_str();
  if (point) {
    cmd->add_option("--alpha", c.alpha, "alpha > 0");
    cmd->add_option("--lambda", c.lambda, "coupling lambda");
    cmd->add_option("--j", c.j, "source J");
  }
  cmd->add_option("--out", c.out, "output path (stdout when omitted)");
  cmd->add_flag("--verbose", c.verbose, "trace intermediate steps on stderr");
  cmd->add_option("--inject-prefactor", c.inject)->group("");
}

void add_oracle(CLI::App* cmd, Common& c) {
  cmd->add_option("--basis-size", c.basis_size, "oscillator basis size N")->capture_default_str();
  cmd->add_option("--fd-step", c.fd_step, "finite-difference step: h or alpha=h,lambda=h,j=h");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum geometric tensor of anharmonic oscillators"};
  app.require_subcommand(1);
  Common c;

  auto* compute = app.add_subcommand("compute", "symbolic metric, determinant and critical coupling");
  add_common(compute, c, true);
  compute->add_option("--format", c.format)->check(CLI::IsMember({"json", "text", "csv"}))->capture_default_str();

  std::string which = "all";
  auto* verify = app.add_subcommand("verify", "run the reference comparisons");
  verify->add_option("which", which)->check(CLI::IsMember({"linear", "quartic", "all"}))->capture_default_str();
  add_common(verify, c, false);
  add_oracle(verify, c);
  std::string verify_format = "text";
  verify->add_option("--format", verify_format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  std::string component = "alpha,alpha";
  auto* diagrams = app.add_subcommand("diagrams", "one DOT file per integrand term");
  add_common(diagrams, c, false);
  diagrams->add_option("--component", component, "pair of labels, e.g. alpha,lambda")->capture_default_str();

  std::string alphas = "1", lambdas = "0", js = "0";
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "series against oracle over a grid, CSV");
  add_common(sweep, c, false);
  add_oracle(sweep, c);
  sweep->add_option("--alpha", alphas, "comma-separated alpha values")->capture_default_str();
  sweep->add_option("--lambda", lambdas, "comma-separated lambda values")->capture_default_str();
  sweep->add_option("--j", js, "comma-separated J values")->capture_default_str();
  sweep->add_option("--threads", threads, "worker threads (0: hardware)");
  sweep->add_option("--format", c.format)->check(CLI::IsMember({"csv"}));

  bool fidelity = false;
  auto* oracle = app.add_subcommand("oracle", "spectral-oracle metric at one point, CSV");
  add_common(oracle, c, true);
  add_oracle(oracle, c);
  oracle->add_flag("--fidelity", fidelity, "use the fidelity estimator 2(1-F)/d^2");
  oracle->add_option("--format", c.format)->check(CLI::IsMember({"csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalidConfig;
  }

  try {
    if (*compute) return cmd_compute(c);
    if (*verify) {
      c.format = verify_format;
      return cmd_verify(c, which);
    }
    if (*diagrams) return cmd_diagrams(c, component);
    if (*sweep) return cmd_sweep(c, alphas, lambdas, js, threads);
    if (*oracle) return cmd_oracle(c, fidelity);
  } catch (const qgt::DivergentIntegral& e) {
    std::cerr << "qgt: divergent integral: " << e.what() << "\n";
    return kDivergent;
  } catch (const qgt::NonPositiveAlpha& e) {
    std::cerr << "qgt: " << e.what() << "\n";
    return kDivergent;
  } catch (const qgt::OrderOverflow& e) {
    std::cerr << "qgt: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const qgt::ParseError& e) {
    std::cerr << "qgt: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qgt: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const qgt::Error& e) {
    std::cerr << "qgt: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kOk;
}
