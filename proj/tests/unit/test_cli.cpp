#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lagdpw/cli.hpp"

using namespace lagdpw;
namespace fs = std::filesystem;

namespace {

const std::string kSpecs = LAGDPW_SPEC_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> row;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

int column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  FAIL("missing column " << name);
  return -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lagdpw_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

int run(std::vector<std::string> args, std::string* output = nullptr) {
  args.insert(args.begin(), "lagdpw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (output) *output = out.str();
  return code;
}

}  // namespace

TEST_CASE("format_double uses 17 significant digits") {
  CHECK(cli::format_double(1.0) == "1.0000000000000000e+00");
  CHECK(cli::format_double(-0.1) == "-1.0000000000000001e-01");
  CHECK(cli::format_double(std::nan("")) == "nan");
  CHECK(std::stod(cli::format_double(M_PI)) == M_PI);
}

TEST_CASE("build on the Clifford spec") {
  const fs::path out = scratch("build");
  REQUIRE(run({"build", "--spec", kSpecs + "/clifford.json", "--grid", "cartesian:1:8:8", "--out",
               out.string(), "--format", "csv,json,obj"}) == 0);
  const auto rows = read_csv(out / "samples.csv");
  REQUIRE(rows.size() == 65);
  const int u = column(rows[0], "u"), res = column(rows[0], "residual");
  const int tail = column(rows[0], "tail_norm");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::abs(std::stod(rows[i][u])) < 1e-8);
    CHECK(std::stod(rows[i][res]) >= 0.0);
    CHECK(std::stod(rows[i][tail]) >= 0.0);
  }
  const auto report = nlohmann::json::parse(slurp(out / "report.json"));
  CHECK(report["status"] == "ok");
  CHECK(report["samples"] == 64);
  const std::string obj = slurp(out / "mesh.obj");
  CHECK(std::count(obj.begin(), obj.end(), 'v') >= 64);
  CHECK(obj.find("\nf ") != std::string::npos);
}

TEST_CASE("validate on the rp2 spec") {
  const fs::path out = scratch("validate");
  REQUIRE(run({"validate", "--spec", kSpecs + "/rp2.json", "--out", out.string()}) == 0);
  const auto report = nlohmann::json::parse(slurp(out / "report.json"));
  for (const char* k : {"horizontality", "conformality", "tzitzeica", "codazzi"})
    CHECK(report["residuals"][k].get<double>() < 1e-5);
}

TEST_CASE("painleve exact solution through the CLI") {
  const fs::path out = scratch("painleve");
  REQUIRE(run({"painleve", "--k", "0", "--n", "0", "--psi0", "1", "--ak", "1", "--s-max", "10",
               "--out", out.string()}) == 0);
  const auto rows = read_csv(out / "painleve.csv");
  REQUIRE(rows.size() > 100);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double s = std::stod(rows[i][0]), h = std::stod(rows[i][1]);
    CHECK(std::abs(h - std::cbrt(s)) < 1e-6);
  }
}

TEST_CASE("closing prints a JSON document") {
  std::string text;
  REQUIRE(run({"closing", "--l", "1,0,0"}, &text) == 0);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["closed"] == true);
  CHECK(doc["root_index"] == 2);
  CHECK(doc["delta"][0].get<double>() == doctest::Approx(2.0 * M_PI / 3.0));
}

TEST_CASE("outputs are byte identical across runs and worker counts") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const std::vector<std::string> args{"build", "--spec", kSpecs + "/polynomial.json", "--grid",
                                      "polar:1:4:6", "--lambda", "0,0.7"};
  setenv("LAGDPW_THREADS", "1", 1);
  auto with_a = args;
  with_a.insert(with_a.end(), {"--out", a.string()});
  REQUIRE(run(with_a) == 0);
  setenv("LAGDPW_THREADS", "3", 1);
  auto with_b = args;
  with_b.insert(with_b.end(), {"--out", b.string()});
  REQUIRE(run(with_b) == 0);
  unsetenv("LAGDPW_THREADS");
  CHECK(slurp(a / "samples.csv") == slurp(b / "samples.csv"));
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
}

TEST_CASE("errors map to exit codes with an error document") {
  std::string text;
  CHECK(run({"build", "--spec", "/nonexistent/spec.json"}, &text) == cli::kSchema);
  CHECK(nlohmann::json::parse(text)["kind"] == "SchemaError");
  CHECK(run({"build", "--spec", kSpecs + "/clifford.json", "--tol", "0.1"}, &text) == cli::kSchema);
  CHECK(run({"build", "--spec", kSpecs + "/clifford.json", "--format", "png"}, &text) ==
        cli::kSchema);
  CHECK(run({"frobnicate"}, &text) == cli::kSchema);
  CHECK(run({"painleve", "--k", "0", "--psi0", "0"}, &text) == cli::kNumeric);
  CHECK(nlohmann::json::parse(text)["kind"] == "NotRadialPIII");
  CHECK(run({"symmetry", "--spec", kSpecs + "/polynomial.json"}, &text) == cli::kSchema);
}
