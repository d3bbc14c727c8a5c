#include "lagdpw/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lagdpw/geometry.hpp"
#include "lagdpw/periodicity.hpp"
#include "lagdpw/spec_io.hpp"

namespace lagdpw::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kStructureLimit = 1e-5;
constexpr double kTzitzeicaLimit = 1e-4;
constexpr double kFrameLimit = 1e-8;
constexpr double kHopfLimit = 1e-6;
constexpr double kSymmetryLimit = 1e-7;

const char* const kDefaultGrid = "polar:1:8:16";

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

struct Context {
  SpecDocument doc;
  GridDescriptor grid;
  std::vector<Complex> lambdas;
  DpwOptions opt;
};

Context load(const RunConfig& c, const char* default_grid = kDefaultGrid) {
  if (c.spec_path.empty()) fail(ErrorKind::SchemaError, "--spec: required for this command");
  Context ctx;
  ctx.doc = parse_spec_file(c.spec_path);
  if (c.grid) {
    try {
      ctx.grid = parse_grid(*c.grid);
    } catch (const Error& e) {
      fail(ErrorKind::SchemaError, std::string("--grid: ") + e.what());
    }
  } else {
    ctx.grid = ctx.doc.grid ? *ctx.doc.grid : parse_grid(default_grid);
  }
  ctx.lambdas = !c.lambdas.empty() ? c.lambdas : ctx.doc.lambdas;
  if (ctx.lambdas.empty()) ctx.lambdas.push_back(1.0);
  ctx.opt.trunc = c.trunc.value_or(ctx.doc.spec.trunc);
  ctx.opt.tol = c.tol.value_or(ctx.doc.tol.value_or(1e-10));
  return ctx;
}

json spec_summary(const Context& ctx) {
  json j;
  j["name"] = ctx.doc.spec.name;
  j["kind"] = to_string(ctx.doc.spec.kind);
  j["grid"] = ctx.grid.describe();
  j["trunc"] = ctx.opt.trunc;
  j["tol"] = ctx.opt.tol;
  json ls = json::array();
  for (Complex l : ctx.lambdas) ls.push_back(complex_json(l));
  j["lambda"] = ls;
  j["notes"] = ctx.doc.notes;
  return j;
}

bool wants(const RunConfig& c, const std::string& fmt) { return c.formats.count(fmt) > 0; }

void write_file(const RunConfig& c, const std::string& name, const std::string& body) {
  fs::create_directories(c.out_dir);
  std::ofstream f(fs::path(c.out_dir) / name, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + (fs::path(c.out_dir) / name).string());
  f << body;
}

std::string samples_csv(const GridResult& r, std::size_t nl) {
  std::ostringstream os;
  os << "node,lambda_index,z_re,z_im,lambda_re,lambda_im,f1_re,f1_im,f2_re,f2_im,f3_re,f3_im,"
        "u,psi_re,psi_im,v0,singular,residual,tail_norm\n";
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const SurfaceSample& s = r.samples[i];
    os << i / nl << ',' << i % nl << ',' << format_double(s.z.real()) << ','
       << format_double(s.z.imag()) << ',' << format_double(s.lambda0.real()) << ','
       << format_double(s.lambda0.imag());
    for (int k = 0; k < 3; ++k)
      os << ',' << format_double(s.lift(k).real()) << ',' << format_double(s.lift(k).imag());
    os << ',' << format_double(s.u) << ',' << format_double(s.psi.real()) << ','
       << format_double(s.psi.imag()) << ',' << format_double(s.v0) << ',' << (s.singular ? 1 : 0)
       << ',' << format_double(s.residual) << ',' << format_double(s.tail_norm) << '\n';
  }
  return os.str();
}

double project(const Vector3& f, int idx) {
  const Complex c = f(idx / 2);
  return idx % 2 == 0 ? c.real() : c.imag();
}

// Vertices at the first lambda; faces follow the grid connectivity and skip
// failed or singular nodes.
std::string mesh_obj(const GridDescriptor& g, const GridResult& r, std::size_t nl,
                     const std::array<int, 3>& proj) {
  const std::size_t count = g.nodes().size();
  std::vector<int> vid(count, 0);
  std::vector<bool> ok(count, false);
  std::ostringstream os;
  os << "# real 3-projection of the horizontal lift; a visualization aid, not an embedding\n";
  os << "# projection indices into (Re f1, Im f1, Re f2, Im f2, Re f3, Im f3): " << proj[0] << ' '
     << proj[1] << ' ' << proj[2] << '\n';
  const auto nodes = g.nodes();
  // Samples of failed nodes are absent, so match samples to nodes in order.
  std::vector<const SurfaceSample*> at(count, nullptr);
  {
    std::size_t k = 0;
    for (std::size_t n = 0; n < count && k < r.samples.size(); ++n) {
      if (r.samples[k].z == nodes[n]) {
        at[n] = &r.samples[k];
        k += nl;
      }
    }
  }
  int next = 1;
  for (std::size_t n = 0; n < count; ++n) {
    if (!at[n] || at[n]->singular) continue;
    ok[n] = true;
    vid[n] = next++;
    os << "v " << format_double(project(at[n]->lift, proj[0])) << ' '
       << format_double(project(at[n]->lift, proj[1])) << ' '
       << format_double(project(at[n]->lift, proj[2])) << '\n';
  }
  auto face = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (ok[a] && ok[b] && ok[c] && a != b && b != c && a != c)
      os << "f " << vid[a] << ' ' << vid[b] << ' ' << vid[c] << '\n';
  };
  const int n1 = g.n1, n2 = g.n2;
  switch (g.kind) {
    case GridDescriptor::Kind::Cartesian:
      for (int j = 0; j + 1 < n2; ++j)
        for (int i = 0; i + 1 < n1; ++i) {
          const std::size_t a = j * n1 + i, b = a + 1, c = a + n1, d = c + 1;
          face(a, b, d);
          face(a, d, c);
        }
      break;
    case GridDescriptor::Kind::Polar:
      for (int i = 0; i + 1 < n1; ++i)
        for (int j = 0; j < n2; ++j) {
          const std::size_t a = i * n2 + j, b = i * n2 + (j + 1) % n2;
          const std::size_t c = a + n2, d = b + n2;
          face(a, c, d);
          if (nodes[a] != nodes[b]) face(a, d, b);  // the r = 0 ring collapses
        }
      break;
    case GridDescriptor::Kind::Ray:
      for (int i = 0; i + 1 < n1; ++i)
        if (ok[i] && ok[i + 1]) os << "l " << vid[i] << ' ' << vid[i + 1] << '\n';
      break;
  }
  return os.str();
}

json report_json(const ResidualReport& r) {
  json j;
  j["horizontality"] = r.horizontality;
  j["conformality"] = r.conformality;
  j["unitarity"] = r.unitarity;
  j["determinant"] = r.determinant;
  j["tzitzeica"] = r.tzitzeica;
  j["codazzi"] = r.codazzi;
  j["symmetry"] = r.symmetry ? json(*r.symmetry) : json(nullptr);
  j["hopf_crosscheck"] = r.hopf_crosscheck ? json(*r.hopf_crosscheck) : json(nullptr);
  j["stencil_h"] = r.stencil_h;
  j["nodes"] = r.nodes;
  j["singular_nodes"] = r.singular_nodes;
  j["skipped_patches"] = r.skipped_patches;
  return j;
}

int finish(const RunConfig& c, std::ostream& out, json summary, int code) {
  summary["status"] = code == kOk ? "ok" : code == kThreshold ? "threshold_exceeded" : "numeric_failure";
  summary["exit_code"] = code;
  if (wants(c, "json") && c.command != Command::Closing) write_file(c, "report.json", summary.dump(2) + "\n");
  out << summary.dump(2) << '\n';
  return code;
}

int run_build(const RunConfig& c, std::ostream& out) {
  const Context ctx = load(c);
  const GridResult r = grid_sample(ctx.doc.spec, ctx.grid, ctx.lambdas, ctx.opt, false);
  const std::size_t nl = ctx.lambdas.size();
  if (wants(c, "csv")) write_file(c, "samples.csv", samples_csv(r, nl));
  if (wants(c, "obj")) write_file(c, "mesh.obj", mesh_obj(ctx.grid, r, nl, c.projection));

  json s;
  s["command"] = "build";
  s["spec"] = spec_summary(ctx);
  s["nodes"] = ctx.grid.nodes().size();
  s["samples"] = r.samples.size();
  double max_res = 0.0, max_tail = 0.0;
  int singular = 0;
  for (const auto& x : r.samples) {
    max_res = std::max(max_res, x.residual);
    max_tail = std::max(max_tail, x.tail_norm);
    singular += x.singular ? 1 : 0;
  }
  s["max_residual"] = max_res;
  s["max_tail_norm"] = max_tail;
  s["singular_samples"] = singular;
  json errs = json::array();
  for (const auto& e : r.errors)
    errs.push_back({{"node", e.index}, {"z", complex_json(e.z)}, {"kind", e.kind}, {"message", e.message}});
  s["node_errors"] = errs;
  return finish(c, out, s, r.errors.empty() ? kOk : kNumeric);
}

int run_validate(const RunConfig& c, std::ostream& out) {
  const Context ctx = load(c);
  const auto nodes = ctx.grid.nodes();
  ResidualReport total;
  bool first = true;
  for (Complex l : ctx.lambdas) {
    ResidualReport r = certify(ctx.doc.spec, nodes, l, c.stencil_h, ctx.opt);
    if (first) {
      total = r;
      first = false;
    } else {
      total.merge(r);
    }
  }
  if (ctx.doc.symmetry_T) {
    const int m = ctx.doc.spec.m;
    const Complex rot = std::polar(1.0, 2.0 * kPi / m);
    total.symmetry = symmetry_residual(ctx.doc.spec, [rot](Complex z) { return rot * z; },
                                       *ctx.doc.symmetry_T, nodes, ctx.lambdas.front(), ctx.opt);
  }
  json checks;
  bool pass = true;
  auto check = [&](const char* name, double value, double limit) {
    const bool ok = value < limit;
    checks[name] = {{"value", value}, {"limit", limit}, {"pass", ok}};
    pass = pass && ok;
  };
  check("horizontality", total.horizontality, kStructureLimit);
  check("conformality", total.conformality, kStructureLimit);
  check("codazzi", total.codazzi, kStructureLimit);
  check("tzitzeica", total.tzitzeica, kTzitzeicaLimit);
  check("unitarity", total.unitarity, kFrameLimit);
  check("determinant", total.determinant, kFrameLimit);
  if (total.hopf_crosscheck) check("hopf_crosscheck", *total.hopf_crosscheck, kHopfLimit);
  if (total.symmetry) check("symmetry", *total.symmetry, kSymmetryLimit);

  json s;
  s["command"] = "validate";
  s["spec"] = spec_summary(ctx);
  s["residuals"] = report_json(total);
  s["checks"] = checks;
  return finish(c, out, s, pass ? kOk : kThreshold);
}

int run_painleve(const RunConfig& c, std::ostream& out) {
  json s;
  s["command"] = "painleve";
  PainleveParams p;
  std::optional<PotentialSpec> spec;
  DpwOptions opt;
  opt.trunc = c.trunc.value_or(32);
  const double tol = c.tol.value_or(1e-10);
  if (!c.spec_path.empty()) {
    SpecDocument doc = parse_spec_file(c.spec_path);
    const RadialData rd = radial_data(doc.spec);
    p = rd.params;
    spec = doc.spec;
    if (!c.trunc) opt.trunc = std::max(doc.spec.trunc, 32);
    s["notes"] = doc.notes;
  } else if (c.piii) {
    p = *c.piii;
  } else {
    fail(ErrorKind::SchemaError, "--spec or --k/--n/--psi0/--ak: painleve needs parameters");
  }
  if (p.psi0_abs == 0.0) fail(ErrorKind::NotRadialPIII, "psi0 = 0 gives no Painleve reduction");
  opt.tol = tol;

  PiiiOptions po;
  po.s0 = c.s0;
  po.samples = c.samples;
  const PainleveSolution sol = solve_piii(p, c.s_max, tol, po);

  std::vector<double> h_dpw;
  if (spec) {
    // The DPW comparison needs s > 0 samples of the same grid.
    const RadialData rd = radial_data(*spec);
    std::vector<double> r, u;
    for (double si : sol.s) r.push_back(std::pow(si, 1.0 / p.l()));
    for (double ri : r) u.push_back(surface_sample(rd.spec, Complex(ri, 0.0), 1.0, opt).u);
    h_dpw = metric_to_h(r, u, p).h;
  }

  if (wants(c, "csv")) {
    std::ostringstream os;
    os << "s,h,h_dot,residual" << (spec ? ",h_dpw,gap" : "") << '\n';
    for (std::size_t i = 0; i < sol.s.size(); ++i) {
      os << format_double(sol.s[i]) << ',' << format_double(sol.h[i]) << ','
         << format_double(sol.h_dot[i]) << ',' << format_double(sol.residual[i]);
      if (spec)
        os << ',' << format_double(h_dpw[i]) << ',' << format_double(std::abs(h_dpw[i] - sol.h[i]));
      os << '\n';
    }
    write_file(c, "painleve.csv", os.str());
  }

  s["params"] = {{"k", p.k}, {"n", p.n}, {"psi0_abs", p.psi0_abs}, {"ak_abs", p.ak_abs},
                 {"l", p.l()}, {"j", p.j()}, {"c", p.c()}};
  s["s0"] = c.s0;
  s["s_max"] = c.s_max;
  s["tol"] = tol;
  s["samples"] = sol.s.size();
  s["max_residual"] = sol.max_residual;
  s["blowup_at"] = sol.blowup_at ? json(*sol.blowup_at) : json(nullptr);
  if (spec) {
    double gap = 0.0;
    for (std::size_t i = 0; i < sol.s.size(); ++i) gap = std::max(gap, std::abs(h_dpw[i] - sol.h[i]));
    s["trunc"] = opt.trunc;
    s["max_gap"] = gap;
  }
  return finish(c, out, s, sol.blowup_at ? kNumeric : kOk);
}

int run_closing(const RunConfig& c, std::ostream& out) {
  const auto& l = c.lattice;
  const Complex delta = closing_delta(l[0], l[1], l[2], c.lambda0);
  const ClosingResult r = check_closing(delta, c.lambda0);
  json s;
  s["command"] = "closing";
  s["l"] = {l[0], l[1], l[2]};
  s["lambda0"] = complex_json(c.lambda0);
  s["delta"] = complex_json(delta);
  s["c"] = complex_json(r.c);
  s["root_index"] = r.root_index;
  s["residual"] = r.residual;
  s["closed"] = r.closed;
  return finish(c, out, s, r.closed ? kOk : kThreshold);
}

int run_symmetry(const RunConfig& c, std::ostream& out) {
  const Context ctx = load(c, "polar:0.8:3:6");
  const auto nodes = ctx.grid.nodes();
  json s;
  s["command"] = "symmetry";
  s["spec"] = spec_summary(ctx);
  double residual = 0.0;
  if (ctx.doc.symmetry_T) {
    const Complex rot = std::polar(1.0, 2.0 * kPi / ctx.doc.spec.m);
    residual = symmetry_residual(ctx.doc.spec, [rot](Complex z) { return rot * z; },
                                 *ctx.doc.symmetry_T, nodes, ctx.lambdas.front(), ctx.opt);
    s["check"] = "rotational";
    s["m"] = ctx.doc.spec.m;
  } else if (ctx.doc.spec.kind == PotentialKind::RadialMonomial) {
    const std::vector<double> ts{0.4, 1.3, 2.2};
    residual = homogeneity_residual(ctx.doc.spec, nodes, ts, ctx.opt);
    s["check"] = "homogeneity";
    s["t"] = ts;
  } else {
    fail(ErrorKind::InvalidArgument, "symmetry needs a rotational or radial_monomial spec");
  }
  s["residual"] = residual;
  s["limit"] = kSymmetryLimit;
  return finish(c, out, s, residual < kSymmetryLimit ? kOk : kThreshold);
}

std::array<int, 3> parse_projection(const std::string& text) {
  static const std::vector<std::string> names{"re1", "im1", "re2", "im2", "re3", "im3"};
  std::array<int, 3> out{};
  std::stringstream ss(text);
  std::string item;
  int k = 0;
  while (std::getline(ss, item, ',')) {
    if (k == 3) fail(ErrorKind::SchemaError, "--project: expected three components");
    auto it = std::find(names.begin(), names.end(), item);
    if (it != names.end()) {
      out[k++] = static_cast<int>(it - names.begin());
    } else if (item.size() == 1 && item[0] >= '0' && item[0] <= '5') {
      out[k++] = item[0] - '0';
    } else {
      fail(ErrorKind::SchemaError, "--project: unknown component '" + item + "'");
    }
  }
  if (k != 3) fail(ErrorKind::SchemaError, "--project: expected three components");
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaError:
    case ErrorKind::InvalidArgument:
      return kSchema;
    default:
      return kNumeric;
  }
}

std::string error_json(ErrorKind kind, const std::string& message) {
  json j;
  j["status"] = "error";
  j["kind"] = to_string(kind);
  j["message"] = message;
  j["exit_code"] = exit_code(kind);
  return j.dump(2);
}

void validate_config(const RunConfig& c) {
  if (c.trunc && *c.trunc < 4) fail(ErrorKind::SchemaError, "--trunc: must be >= 4");
  if (c.tol && !(*c.tol > 0.0 && *c.tol <= 1e-4))
    fail(ErrorKind::SchemaError, "--tol: must lie in (0, 1e-4]");
  if (c.grid) {
    GridDescriptor g;
    try {
      g = parse_grid(*c.grid);
    } catch (const Error& e) {
      fail(ErrorKind::SchemaError, std::string("--grid: ") + e.what());
    }
    if (g.n1 < 1 || g.n2 < 1) fail(ErrorKind::SchemaError, "--grid: counts must be >= 1");
  }
  for (const auto& f : c.formats)
    if (f != "csv" && f != "json" && f != "obj")
      fail(ErrorKind::SchemaError, "--format: unknown format '" + f + "'");
  for (int p : c.projection)
    if (p < 0 || p > 5) fail(ErrorKind::SchemaError, "--project: index out of range");
  if (!(c.stencil_h > 0.0)) fail(ErrorKind::SchemaError, "--step: must be positive");
  if (c.samples < 2) fail(ErrorKind::SchemaError, "--samples: must be >= 2");
}

int execute(const RunConfig& c, std::ostream& out) {
  try {
    validate_config(c);
    switch (c.command) {
      case Command::Build: return run_build(c, out);
      case Command::Validate: return run_validate(c, out);
      case Command::Painleve: return run_painleve(c, out);
      case Command::Closing: return run_closing(c, out);
      case Command::Symmetry: return run_symmetry(c, out);
    }
  } catch (const Error& e) {
    out << error_json(e.kind(), e.what()) << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    out << error_json(ErrorKind::InvalidArgument, e.what()) << '\n';
    return kNumeric;
  }
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal Lagrangian surfaces in CP2 by the loop group method"};
  app.require_subcommand(1);
  RunConfig c;
  std::vector<double> lambda_angles;
  std::string project = "re1,im1,re2";
  std::vector<std::string> formats;
  std::optional<int> k, n;
  std::optional<double> psi0, ak, lambda0_angle;
  std::vector<int> lattice;

  auto common = [&](CLI::App* sub, bool spec_required) {
    auto* opt = sub->add_option("--spec", c.spec_path, "potential spec (JSON)");
    if (spec_required) opt->required();
    sub->add_option("--grid", c.grid, "polar:R:nr:nt | cartesian:E:nx:ny | ray:R:n[:angle]");
    sub->add_option("--lambda", lambda_angles, "spectral parameters as angles (radians)")
        ->delimiter(',');
    sub->add_option("--trunc", c.trunc, "Laurent truncation");
    sub->add_option("--tol", c.tol, "integration tolerance");
    sub->add_option("--out", c.out_dir, "output directory");
    sub->add_option("--format", formats, "csv,json,obj")->delimiter(',');
  };
  auto* build = app.add_subcommand("build", "sample the surface on a grid");
  common(build, true);
  build->add_option("--project", project, "three of re1,im1,re2,im2,re3,im3 for mesh.obj");
  auto* validate = app.add_subcommand("validate", "certify structure and integrability residuals");
  common(validate, true);
  validate->add_option("--step", c.stencil_h, "finite-difference step");
  auto* painleve = app.add_subcommand("painleve", "integrate the radial Painleve III profile");
  common(painleve, false);
  painleve->add_option("--k", k);
  painleve->add_option("--n", n);
  painleve->add_option("--psi0", psi0, "|psi0|");
  painleve->add_option("--ak", ak, "|a_k|");
  painleve->add_option("--s0", c.s0);
  painleve->add_option("--s-max", c.s_max);
  painleve->add_option("--samples", c.samples);
  auto* closing = app.add_subcommand("closing", "Clifford lattice closing condition");
  closing->add_option("--l", lattice, "l1,l2,l3")->delimiter(',')->expected(3);
  closing->add_option("--lambda0", lambda0_angle, "angle of lambda0 (radians)");
  auto* symmetry = app.add_subcommand("symmetry", "rotational or homogeneity symmetry residual");
  common(symmetry, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    out << error_json(ErrorKind::SchemaError, e.what()) << '\n';
    return kSchema;
  }

  try {
    if (*build) c.command = Command::Build;
    if (*validate) c.command = Command::Validate;
    if (*painleve) c.command = Command::Painleve;
    if (*closing) c.command = Command::Closing;
    if (*symmetry) c.command = Command::Symmetry;
    for (double a : lambda_angles) c.lambdas.push_back(std::polar(1.0, a));
    if (!formats.empty()) c.formats = {formats.begin(), formats.end()};
    c.projection = parse_projection(project);
    if (k || n || psi0 || ak) {
      PainleveParams p;
      p.k = k.value_or(0);
      p.n = n.value_or(0);
      p.psi0_abs = psi0.value_or(1.0);
      p.ak_abs = ak.value_or(1.0);
      if (p.k < 0 || p.n < 0) fail(ErrorKind::SchemaError, "--k/--n: must be nonnegative");
      if (!(p.ak_abs > 0.0)) fail(ErrorKind::SchemaError, "--ak: must be positive");
      if (p.psi0_abs < 0.0) fail(ErrorKind::SchemaError, "--psi0: must be nonnegative");
      c.piii = p;
    }
    if (!lattice.empty()) c.lattice = {lattice[0], lattice[1], lattice[2]};
    if (lambda0_angle) c.lambda0 = std::polar(1.0, *lambda0_angle);
  } catch (const Error& e) {
    out << error_json(e.kind(), e.what()) << '\n';
    return exit_code(e.kind());
  }
  return execute(c, out);
}

}  // namespace lagdpw::cli
