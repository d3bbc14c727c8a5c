#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lagdpw/error.hpp"
#include "lagdpw/painleve.hpp"

namespace lagdpw::cli {

enum class Command { Build, Validate, Painleve, Closing, Symmetry };

enum ExitCode : int { kOk = 0, kSchema = 2, kNumeric = 3, kThreshold = 4 };

struct RunConfig {
  Command command = Command::Build;
  std::string spec_path;
  std::optional<std::string> grid;
  std::vector<Complex> lambdas;  // empty: from the spec, else lambda = 1
  std::optional<int> trunc;
  std::optional<double> tol;
  std::string out_dir = ".";
  std::set<std::string> formats{"csv", "json"};
  // Indices into (Re f1, Im f1, Re f2, Im f2, Re f3, Im f3) for mesh.obj.
  std::array<int, 3> projection{0, 1, 2};

  double stencil_h = 1e-3;  // validate

  std::optional<PainleveParams> piii;  // painleve without a spec
  double s0 = 1e-3;
  double s_max = 10.0;
  int samples = 200;

  std::array<int, 3> lattice{1, 0, 0};  // closing
  Complex lambda0{1.0, 0.0};
};

// Checks the config invariants: trunc >= 4, tol in (0, 1e-4], counts >= 1.
// Throws SchemaError.
void validate_config(const RunConfig& config);

// Runs one command, writes artifacts into out_dir and a JSON summary (or an
// error document) to `out`. Returns the process exit code.
int execute(const RunConfig& config, std::ostream& out);

// Command line front end: parses argv with CLI11 and calls execute.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int exit_code(ErrorKind kind);
std::string error_json(ErrorKind kind, const std::string& message);

// 17 significant digits in scientific notation; "nan" and "inf" spelled out.
std::string format_double(double x);

}  // namespace lagdpw::cli
