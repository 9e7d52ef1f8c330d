#include "qgt/record.hpp"

#include <sstream>

#include "qgt/errors.hpp"

namespace qgt {

Json series_to_json(const ScalarSeries& s) {
  Json out = Json::array();
  for (const auto& t : s.terms()) {
    out.push_back({{"num", t.coeff.numerator()},
                   {"den", t.coeff.denominator()},
                   {"alpha_half_pow", t.alpha_half_pow},
                   {"lambda_pow", t.lambda_pow},
                   {"j_pow", t.j_pow}});
  }
  return out;
}

ScalarSeries series_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("series must be a JSON array");
  ScalarSeries s;
  for (const auto& t : j) {
    try {
      const Rational c = Rational::parse(t.at("num").get<std::string>() + "/" + t.at("den").get<std::string>());
      s += ScalarSeries(ScalarTerm{c, t.at("alpha_half_pow").get<int>(), t.at("lambda_pow").get<unsigned>(),
                                   t.at("j_pow").get<unsigned>()});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad series term: ") + e.what());
    }
  }
  return s;
}

namespace {

Json entry(Parameter a, Parameter b, const ScalarSeries& s, const std::optional<ParameterPoint>& point) {
  Json e{{"row", to_string(a)}, {"col", to_string(b)}, {"text", s.str()}, {"series", series_to_json(s)}};
  if (point) e["numeric_value"] = s.eval(point->alpha, point->lambda, point->j);
  return e;
}

}  // namespace

Json qgt_record(const QGTResult& result, const std::optional<ParameterPoint>& point) {
  const auto& labels = result.space.labels;
  Json record;
  record["version"] = kRecordVersion;
  record["model"] = result.space.model.name();
  Json names = Json::array();
  for (Parameter p : labels) names.push_back(to_string(p));
  record["parameters"] = names;
  record["truncation_order"] = result.order;
  record["conventions"] = {
      {"fidelity", std::string(kFidelityConvention)},
      {"metric", "g_ab = Re G_ab"},
      {"series_variables", "a = alpha, l = lambda, j = J; alpha_half_pow counts powers of sqrt(alpha)"},
      {"truncation", result.space.model.has_interaction()
                         ? "terms above lambda^" + std::to_string(result.order) + " dropped"
                         : "exact"}};
  if (point) record["point"] = {{"alpha", point->alpha}, {"lambda", point->lambda}, {"j", point->j}};

  Json metric = Json::array();
  Json curvature = Json::array();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t k = i; k < labels.size(); ++k) {
      metric.push_back(entry(labels[i], labels[k], result.metric.at({labels[i], labels[k]}), point));
      if (k != i) {
        curvature.push_back(entry(labels[i], labels[k], result.curvature.at({labels[i], labels[k]}), point));
      }
    }
  }
  record["metric"] = metric;
  record["curvature"] = curvature;

  const auto det = determinant_and_critical(result.metric, labels, result.order);
  Json d{{"text", det.determinant.str()}, {"series", series_to_json(det.determinant)}};
  if (point) d["numeric_value"] = det.determinant.eval(point->alpha, point->lambda, point->j);
  record["determinant"] = d;

  const auto& cc = det.critical;
  if (cc.coefficient) {
    Json c{{"coefficient", *cc.coefficient}, {"alpha_half_pow", cc.alpha_half_pow},
           {"truncation_order", cc.truncation_order}};
    c["exact"] = cc.exact ? Json{{"text", cc.exact->str()}, {"series", series_to_json(*cc.exact)}} : Json();
    if (point) c["numeric_value"] = *cc.coefficient * std::pow(point->alpha, 0.5 * cc.alpha_half_pow);
    record["critical_coupling"] = c;
  } else {
    record["critical_coupling"] = nullptr;
  }
  return record;
}

std::string record_text(const Json& record) {
  std::ostringstream os;
  os << "model " << record.at("model").get<std::string>() << ", truncation order "
     << record.at("truncation_order").get<int>() << "\n";
  os << "convention " << record.at("conventions").at("fidelity").get<std::string>() << "\n";
  if (record.contains("point")) {
    const auto& p = record.at("point");
    os << "point alpha=" << p.at("alpha").get<double>() << " lambda=" << p.at("lambda").get<double>()
       << " j=" << p.at("j").get<double>() << "\n";
  }
  auto line = [&](const std::string& name, const Json& e) {
    os << name << " = " << e.at("text").get<std::string>();
    if (e.contains("numeric_value")) os << "  [" << e.at("numeric_value").get<double>() << "]";
    os << "\n";
  };
  for (const auto& e : record.at("metric")) {
    line("G(" + e.at("row").get<std::string>() + "," + e.at("col").get<std::string>() + ")", e);
  }
  for (const auto& e : record.at("curvature")) {
    line("F(" + e.at("row").get<std::string>() + "," + e.at("col").get<std::string>() + ")", e);
  }
  line("det", record.at("determinant"));
  const auto& cc = record.at("critical_coupling");
  if (cc.is_null()) {
    os << "lambda_c: no positive root at this order\n";
  } else {
    os << "lambda_c = " << cc.at("coefficient").get<double>() << " * a^"
       << cc.at("alpha_half_pow").get<int>() << "/2";
    if (!cc.at("exact").is_null()) os << "  (exact " << cc.at("exact").at("text").get<std::string>() << ")";
    if (cc.contains("numeric_value")) os << "  [" << cc.at("numeric_value").get<double>() << "]";
    os << "\n";
  }
  return os.str();
}

}  // namespace qgt
