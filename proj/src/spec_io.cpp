#include "lagdpw/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lagdpw/error.hpp"

namespace lagdpw {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  fail(ErrorKind::SchemaError, path + ": " + msg);
}

void allow_only(const json& obj, const std::string& path, const std::set<std::string>& keys) {
  for (const auto& [key, _] : obj.items())
    if (!keys.count(key)) schema(path + "." + key, "unknown field");
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema(path, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema(path, "expected an integer");
  return v.get<int>();
}

// A complex number is [re, im] or a bare real.
Complex complex_value(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2) schema(path, "expected [re, im]");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

Polynomial polynomial(const json& v, const std::string& path) {
  if (!v.is_array()) schema(path, "expected an array of ascending coefficients");
  Polynomial p;
  for (std::size_t i = 0; i < v.size(); ++i)
    p.c.push_back(complex_value(v[i], path + "[" + std::to_string(i) + "]"));
  return p;
}

const json& required(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) schema(path + "." + key, "missing required field");
  return obj.at(key);
}

Complex single_coefficient(const json& obj, const std::string& key, const std::string& path) {
  const Polynomial p = polynomial(required(obj, key, path), path + "." + key);
  if (p.c.size() != 1) schema(path + "." + key, "expected exactly one coefficient");
  return p.c[0];
}

GridDescriptor grid(const json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return parse_grid(v.get<std::string>());
    } catch (const Error& e) {
      schema(path, e.what());
    }
  }
  if (!v.is_object()) schema(path, "expected a grid object or descriptor string");
  allow_only(v, path, {"kind", "extent", "counts", "angle", "center"});
  GridDescriptor g;
  const json& kind = required(v, "kind", path);
  const std::string k = kind.is_string() ? kind.get<std::string>() : "";
  if (k == "polar")
    g.kind = GridDescriptor::Kind::Polar;
  else if (k == "cartesian")
    g.kind = GridDescriptor::Kind::Cartesian;
  else if (k == "ray")
    g.kind = GridDescriptor::Kind::Ray;
  else
    schema(path + ".kind", "expected polar, cartesian or ray");
  g.extent = number(required(v, "extent", path), path + ".extent");
  if (!(g.extent > 0.0)) schema(path + ".extent", "must be positive");
  const json& counts = required(v, "counts", path);
  const std::size_t want = g.kind == GridDescriptor::Kind::Ray ? 1 : 2;
  if (!counts.is_array() || counts.size() != want)
    schema(path + ".counts", "expected " + std::to_string(want) + " counts");
  g.n1 = integer(counts[0], path + ".counts[0]");
  g.n2 = want == 2 ? integer(counts[1], path + ".counts[1]") : 1;
  if (g.n1 < 1 || g.n2 < 1) schema(path + ".counts", "counts must be >= 1");
  if (v.contains("angle")) g.angle = number(v["angle"], path + ".angle");
  if (v.contains("center")) g.center = complex_value(v["center"], path + ".center");
  return g;
}

LoopMatrix d_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) schema(path, "expected a list of {degree, matrix}");
  LoopMatrix d(0, {}, true);
  for (std::size_t t = 0; t < v.size(); ++t) {
    const std::string p = path + "[" + std::to_string(t) + "]";
    if (!v[t].is_object()) schema(p, "expected {degree, matrix}");
    allow_only(v[t], p, {"degree", "matrix"});
    const int deg = integer(required(v[t], "degree", p), p + ".degree");
    const json& m = required(v[t], "matrix", p);
    if (!m.is_array() || m.size() != 3) schema(p + ".matrix", "expected 3 rows");
    Matrix3 x;
    for (int i = 0; i < 3; ++i) {
      const std::string pr = p + ".matrix[" + std::to_string(i) + "]";
      if (!m[i].is_array() || m[i].size() != 3) schema(pr, "expected 3 entries");
      for (int j = 0; j < 3; ++j) x(i, j) = complex_value(m[i][j], pr + "[" + std::to_string(j) + "]");
    }
    d.set_coeff(deg, d.coeff(deg) + x);
  }
  return d;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json polynomial_json(const Polynomial& p) {
  json out = json::array();
  for (Complex c : p.c) out.push_back(complex_json(c));
  return out;
}

std::string note_for(const PotentialSpec& s) {
  std::ostringstream os;
  os.precision(17);
  os << "normalization applied: gauge delta " << s.gauge_delta << ", coordinate scale ("
     << s.coord_scale.real() << ", " << s.coord_scale.imag() << ")";
  return os.str();
}

}  // namespace

SpecDocument parse_spec_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema("$", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema("$", "expected an object");
  const std::string root = "$";
  const json& kind_v = required(doc, "kind", root);
  if (!kind_v.is_string()) schema("$.kind", "expected a string");
  const std::string kind = kind_v.get<std::string>();

  const std::set<std::string> common{"name", "kind", "base_point", "trunc", "grid", "lambda", "tol"};
  auto with = [&](std::initializer_list<std::string> extra) {
    std::set<std::string> keys = common;
    keys.insert(extra);
    return keys;
  };

  SpecDocument out;
  PotentialSpec& spec = out.spec;
  if (kind == "normalized") {
    allow_only(doc, root, with({"a", "b"}));
    spec = normalized_spec(polynomial(required(doc, "a", root), "$.a"),
                           doc.contains("b") ? polynomial(doc["b"], "$.b") : Polynomial{});
  } else if (kind == "radial_monomial") {
    allow_only(doc, root, with({"k", "n", "a", "b", "psi0"}));
    const int k = integer(required(doc, "k", root), "$.k");
    const int n = integer(required(doc, "n", root), "$.n");
    if (k < 0) schema("$.k", "must be nonnegative");
    if (n < 0) schema("$.n", "must be nonnegative");
    if (doc.contains("psi0")) {
      if (doc.contains("b")) schema("$.b", "give either b or psi0, not both");
      const Complex ak = single_coefficient(doc, "a", root);
      const Complex psi0 = complex_value(doc["psi0"], "$.psi0");
      // psi0 = -a_k^2 b_n fixes b_n.
      spec = radial_spec(k, n, ak, -psi0 / (ak * ak));
    } else {
      spec = radial_spec(k, n, single_coefficient(doc, "a", root),
                         single_coefficient(doc, "b", root));
    }
    if (spec.normalization_applied) out.notes.push_back(note_for(spec));
  } else if (kind == "rotational") {
    allow_only(doc, root, with({"m", "a", "b"}));
    const int m = integer(required(doc, "m", root), "$.m");
    auto rot = rotational_potential(m, polynomial(required(doc, "a", root), "$.a"),
                                    polynomial(required(doc, "b", root), "$.b"));
    spec = rot.spec;
    out.symmetry_T = rot.T;
  } else if (kind == "vacuum") {
    allow_only(doc, root, with({"a", "b"}));
    const Complex a = single_coefficient(doc, "a", root);
    const Complex b = single_coefficient(doc, "b", root);
    const Complex i(0.0, 1.0);
    VacuumNormalization v = vacuum_normalize(i * a, i * b);
    spec = v.spec;
    spec.normalization_applied = true;
    spec.gauge_delta = v.gauge_delta;
    spec.coord_scale = v.coord_scale;
    out.notes.push_back(note_for(spec));
  } else if (kind == "constant_degree_one") {
    allow_only(doc, root, with({"d"}));
    spec = constant_degree_one_spec(d_matrix(required(doc, "d", root), "$.d"));
  } else {
    schema("$.kind", "unknown kind '" + kind + "'");
  }

  if (doc.contains("name")) {
    if (!doc["name"].is_string()) schema("$.name", "expected a string");
    spec.name = doc["name"].get<std::string>();
  }
  if (doc.contains("base_point")) spec.base_point = complex_value(doc["base_point"], "$.base_point");
  if (doc.contains("trunc")) {
    spec.trunc = integer(doc["trunc"], "$.trunc");
    if (spec.trunc < 4) schema("$.trunc", "must be >= 4");
  }
  if (doc.contains("grid")) out.grid = grid(doc["grid"], "$.grid");
  if (doc.contains("lambda")) {
    const json& l = doc["lambda"];
    if (!l.is_array()) schema("$.lambda", "expected a list of [re, im]");
    for (std::size_t i = 0; i < l.size(); ++i) {
      const std::string p = "$.lambda[" + std::to_string(i) + "]";
      const Complex v = complex_value(l[i], p);
      if (std::abs(std::abs(v) - 1.0) > 1e-12) schema(p, "lambda must lie on the unit circle");
      out.lambdas.push_back(v);
    }
  }
  if (doc.contains("tol")) {
    const double t = number(doc["tol"], "$.tol");
    if (!(t > 0.0 && t <= 1e-4)) schema("$.tol", "must lie in (0, 1e-4]");
    out.tol = t;
  }
  return out;
}

SpecDocument parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::SchemaError, path + ": cannot open spec file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_json(buf.str());
}

std::string spec_to_json(const PotentialSpec& spec, int indent) {
  json doc;
  doc["name"] = spec.name;
  if (spec.kind == PotentialKind::ConstantDegreeOne) {
    doc["kind"] = "constant_degree_one";
    json d = json::array();
    for (int deg = spec.d_matrix.min_degree(); deg <= spec.d_matrix.max_degree(); ++deg) {
      json m = json::array();
      const Matrix3 x = spec.d_matrix.coeff(deg);
      for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int j = 0; j < 3; ++j) row.push_back(complex_json(x(i, j)));
        m.push_back(row);
      }
      d.push_back({{"degree", deg}, {"matrix", m}});
    }
    doc["d"] = d;
  } else {
    doc["kind"] = "normalized";
    doc["a"] = polynomial_json(spec.a);
    doc["b"] = polynomial_json(spec.b);
  }
  doc["base_point"] = complex_json(spec.base_point);
  doc["trunc"] = spec.trunc;
  return doc.dump(indent);
}

}  // namespace lagdpw
