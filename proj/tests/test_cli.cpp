#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "oracles/schema.hpp"
#include "qgt/errors.hpp"
#include "qgt/geometric_tensor.hpp"
#include "qgt/record.hpp"
#include "qgt/verify.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" QGT_BINARY "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qgt_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

const oracle::SchemaValidator& schema() {
  static const oracle::SchemaValidator v(nlohmann::json::parse(slurp(QGT_SCHEMA)));
  return v;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  REQUIRE(it != header.end());
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

TEST_CASE("compute emits the first-order quartic record") {
  const auto r = run("compute --model quartic --order 1");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(schema().validate(j).empty());
  std::map<std::string, std::string> text;
  for (const auto& e : j.at("metric")) text[e.at("row").get<std::string>() + "," + e.at("col").get<std::string>()] = e.at("text");
  CHECK(text.at("alpha,alpha") == "1/32 * a^-2 - 11/512 * l * a^-7/2");
  CHECK(text.at("alpha,lambda") == "1/128 * a^-5/2 - 89/12288 * l * a^-4");
  CHECK(text.at("lambda,lambda") == "13/6144 * a^-3 - 31/12288 * l * a^-9/2");
  CHECK(j.at("critical_coupling").at("exact").at("text") == "16/35 * a^3/2");
  CHECK(j.at("conventions").at("fidelity") == "F = 1 - (1/2) G_ab dl^a dl^b");
  CHECK(j.at("truncation_order") == 1);
}

TEST_CASE("compute examples") {
  const auto lin = run("compute --model linear --alpha 1 --j 0");
  REQUIRE(lin.code == 0);
  const auto j = nlohmann::json::parse(lin.out);
  CHECK(schema().validate(j).empty());
  bool seen = false;
  for (const auto& e : j.at("metric")) {
    if (e.at("row") == "j" && e.at("col") == "j") {
      seen = true;
      CHECK(e.at("text") == "1/2 * a^-3/2");
      CHECK(e.at("numeric_value").get<double>() == 0.5);
    }
  }
  CHECK(seen);
  CHECK(j.at("critical_coupling").is_null());

  const auto free = nlohmann::json::parse(run("compute --model quartic --order 0").out);
  CHECK(schema().validate(free).empty());
  CHECK(free.at("truncation_order") == 0);
  for (const auto& e : free.at("metric")) {
    for (const auto& t : e.at("series")) CHECK(t.at("lambda_pow") == 0);
  }
  CHECK(free.at("critical_coupling").is_null());
}

TEST_CASE("property: every structured output validates against the schema") {
  for (const std::string args :
       {"--model quartic --order 2", "--model monomial:3 --order 2", "--model monomial:6 --order 1 --alpha 2",
        "--model linear --alpha 0.5 --j 0.3", "--model quartic --params alpha,lambda,j --alpha 1 --lambda 0.1 --j 0.2",
        "--model quartic --params alpha"}) {
    CAPTURE(args);
    const auto r = run("compute " + args);
    REQUIRE(r.code == 0);
    const auto errors = schema().validate(nlohmann::json::parse(r.out));
    for (const auto& e : errors) CAPTURE(e);
    CHECK(errors.empty());
  }
  // The validator itself rejects broken records.
  auto j = nlohmann::json::parse(run("compute --model quartic").out);
  j["metric"][0]["series"][0]["den"] = "0";
  CHECK_FALSE(schema().validate(j).empty());
  j.erase("metric");
  CHECK_FALSE(schema().validate(j).empty());
}

TEST_CASE("property: series survive serialization exactly") {
  const auto j = nlohmann::json::parse(run("compute --model quartic --order 2").out);
  const auto r = qgt::compute_qgt(qgt::ParameterSpace::standard(qgt::Model::quartic()), [] {
    qgt::QgtOptions o;
    o.order = 2;
    return o;
  }());
  for (const auto& e : j.at("metric")) {
    const qgt::ComponentIndex index{qgt::parse_parameter(e.at("row").get<std::string>()),
                                    qgt::parse_parameter(e.at("col").get<std::string>())};
    CHECK(qgt::series_from_json(e.at("series")) == r.metric.at(index));
  }
  CHECK_THROWS_AS(qgt::series_from_json(nlohmann::json::parse(R"([{"num":"1"}])")), qgt::ParseError);
}

TEST_CASE("property: identical runs produce byte-identical files") {
  TempDir dir;
  for (const std::string args : {"compute --model quartic --order 2 --alpha 1.5 --lambda 0.1",
                                 "compute --model linear --format text", "compute --model quartic --format csv",
                                 "sweep --alpha 1,2 --lambda 0,0.05 --threads 4"}) {
    CAPTURE(args);
    const auto a = dir.path / "a.out";
    const auto b = dir.path / "b.out";
    REQUIRE(run(args + " --out " + a.string()).code == 0);
    REQUIRE(run(args + " --out " + b.string()).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
  }
}

TEST_CASE("exit codes") {
  CHECK(run("compute --model quartic --alpha -1").code == 3);
  CHECK(run("compute --model quartic --alpha 0").code == 3);
  CHECK(run("oracle --model quartic --alpha -2").code == 3);
  CHECK(run("sweep --alpha 1,-1").code == 3);
  CHECK(run("compute --model quartic --order 3").code == 2);
  CHECK(run("compute --model quartic --order 1", "QGT_MAX_ORDER=0").code == 2);
  CHECK(run("compute --model cubic").code == 2);
  CHECK(run("compute --model linear --params alpha,lambda").code == 2);
  CHECK(run("compute --bogus").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("compute --alpha abc").code == 2);
  CHECK(run("oracle --basis-size 8").code == 2);
  CHECK(run("oracle --fd-step alpha=-1").code == 2);
  CHECK(run("compute --inject-prefactor alpha=x").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("diagrams writes one file per integrand term") {
  const std::vector<std::pair<std::string, std::size_t>> cases{
      {"alpha,alpha", 2}, {"lambda,lambda", 8}, {"alpha,lambda", 4}};
  for (const auto& [component, count] : cases) {
    TempDir dir;
    const auto r = run("diagrams --model quartic --order 1 --component " + component + " --out " + dir.path.string());
    REQUIRE(r.code == 0);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir.path)) {
      ++files;
      CHECK(entry.path().extension() == ".dot");
      const auto dot = slurp(entry.path());
      CHECK(dot.find("graph") == 0);
      CHECK(dot.find("multiplicity") != std::string::npos);
    }
    CAPTURE(component);
    CHECK(files == count);
    CHECK(static_cast<std::size_t>(std::count(r.out.begin(), r.out.end(), '\n')) == count);
  }
  CHECK(run("diagrams --model quartic --component alpha").code == 2);
}

TEST_CASE("sweep CSV") {
  const auto empty = run("sweep --lambda ''");
  REQUIRE(empty.code == 0);
  const auto header_only = csv_rows(empty.out);
  REQUIRE(header_only.size() == 1);
  CHECK(header_only[0].front() == "model");

  const auto r = run("sweep --model quartic --alpha 1 --lambda 0.02,0.04,0.08");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  const auto& header = rows[0];
  const std::vector<double> lambdas{0.02, 0.04, 0.08};
  for (const std::string entry : {"g_alpha_alpha", "g_alpha_lambda", "g_lambda_lambda"}) {
    std::vector<double> dev;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(std::stod(rows[i][column(header, "lambda")]) == lambdas[i - 1]);
      dev.push_back(std::abs(std::stod(rows[i][column(header, entry + "_deviation")])));
    }
    CAPTURE(entry);
    CHECK(std::abs(qgt::log_log_slope(lambdas, dev) - 2.0) <= 0.3);
  }

  const auto free = csv_rows(run("sweep --model quartic --alpha 0.5,1,2 --lambda 0").out);
  REQUIRE(free.size() == 4);
  for (std::size_t i = 1; i < free.size(); ++i) {
    for (const std::string entry : {"g_alpha_alpha", "g_alpha_lambda", "g_lambda_lambda"}) {
      const double s = std::stod(free[i][column(free[0], entry + "_series")]);
      const double o = std::stod(free[i][column(free[0], entry + "_oracle")]);
      CHECK(std::abs(s - o) <= 1e-6 * std::abs(s));
    }
  }
}

TEST_CASE("oracle CSV") {
  const auto r = run("oracle --model quartic --alpha 1 --lambda 0");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1][0] == "alpha");
  CHECK(rows[1][1] == "alpha");
  CHECK(std::abs(std::stod(rows[1][2]) - 1.0 / 32.0) < 1e-6);
  const auto f = csv_rows(run("oracle --model quartic --alpha 1 --fidelity").out);
  REQUIRE(f.size() == 4);
  CHECK(std::abs(std::stod(f[1][2]) - 1.0 / 32.0) < 1e-5);
}

TEST_CASE("verify passes and catches an injected prefactor") {
  const auto lin = run("verify linear");
  CHECK(lin.code == 0);
  CHECK(lin.out.rfind("PASS verify linear") != std::string::npos);

  const auto broken = run("verify all --inject-prefactor alpha=-1/3");
  CHECK(broken.code == 1);
  CHECK(broken.out.find("FAIL") != std::string::npos);
  CHECK(broken.out.find("alpha") != std::string::npos);

  const auto json = run("verify linear --format json");
  REQUIRE(json.code == 0);
  const auto j = nlohmann::json::parse(json.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("max_delta").get<double>() < 1e-6);
}
