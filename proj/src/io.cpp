#include "rkhs/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace rkhs::io {

namespace {

void expect_object(const Json& j, const std::string& what) {
  if (!j.is_object()) throw DomainError(what + ": expected a JSON object");
}

void only_fields(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  expect_object(j, what);
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) throw DomainError(what + ": unknown field '" + key + "'");
  }
}

const Json& field(const Json& j, const char* key, const std::string& what) {
  const auto it = j.find(key);
  if (it == j.end()) throw DomainError(what + ": missing field '" + key + "'");
  return *it;
}

double number(const Json& j, const char* key, const std::string& what) {
  const Json& v = field(j, key, what);
  if (!v.is_number()) throw DomainError(what + ": field '" + key + "' must be a number");
  return v.get<double>();
}

long integer(const Json& j, const char* key, const std::string& what) {
  const Json& v = field(j, key, what);
  if (!v.is_number_integer()) throw DomainError(what + ": field '" + key + "' must be an integer");
  return v.get<long>();
}

std::string text(const Json& j, const char* key, const std::string& what) {
  const Json& v = field(j, key, what);
  if (!v.is_string()) throw DomainError(what + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

Space space_from_json(const Json& j) {
  only_fields(j, {"kind", "dim"}, "space");
  const std::string kind = text(j, "kind", "space");
  const long dim = integer(j, "dim", "space");
  if (dim < 1 || dim > 1'000'000) throw DomainError("space: dim must be >= 1");
  if (kind == "euclidean") return Space::euclidean(static_cast<int>(dim));
  if (kind == "torus") return Space::torus(static_cast<int>(dim));
  throw DomainError("space: kind must be 'euclidean' or 'torus'");
}

Json space_to_json(const Space& s) {
  Json j;
  j["kind"] = s.is_torus() ? "torus" : "euclidean";
  j["dim"] = s.dim();
  return j;
}

Point point_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw DomainError(what + ": point must be an array");
  Point p;
  for (const Json& v : j) {
    if (!v.is_number()) throw DomainError(what + ": point coordinates must be numbers");
    p.push_back(v.get<double>());
  }
  return p;
}

EnergyMethod parse_method(const std::string& s) {
  for (EnergyMethod m : {EnergyMethod::SpatialExact, EnergyMethod::SpectralQuadrature,
                         EnergyMethod::SpectralSeries, EnergyMethod::FeatureTruncation}) {
    if (to_string(m) == s) return m;
  }
  throw DomainError("unknown energy method '" + s + "'");
}

void dump_to(std::ostringstream& os, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ',';
        first = false;
        os << pad << Json(key).dump() << sep;
        dump_to(os, value, indent, depth + 1);
      }
      os << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Short numeric arrays (points) stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_number(); });
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) os << (flat ? ", " : ",");
        if (!flat) os << pad;
        dump_to(os, j[i], indent, depth + 1);
      }
      if (!flat) os << close;
      os << ']';
      return;
    }
    case Json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Keep it a JSON float so readers see the same type back.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string dump(const Json& j, int indent) {
  std::ostringstream os;
  dump_to(os, j, indent, 0);
  return os.str();
}

// -- Measures --------------------------------------------------------------

Measure measure_from_json(const Json& j) {
  expect_object(j, "measure");
  const Space space = space_from_json(field(j, "space", "measure"));
  if (j.contains("density")) {
    only_fields(j, {"space", "density"}, "measure");
    const Json& d = j["density"];
    const std::string family = text(d, "family", "density");
    if (family == "torus_cosine") {
      only_fields(d, {"family", "alpha", "n0"}, "density");
      if (!(space == Space::torus(1))) throw DomainError("torus_cosine density lives on T^1");
      const long n0 = integer(d, "n0", "density");
      if (n0 < 1 || n0 > 1'000'000'000) throw DomainError("density: n0 must be a positive integer");
      return DensityMeasure::torus_cosine(number(d, "alpha", "density"), static_cast<int>(n0));
    }
    if (family == "modulated_sincsq") {
      only_fields(d, {"family", "alpha", "omega0"}, "density");
      if (!(space == Space::euclidean(1))) throw DomainError("modulated_sincsq density lives on R^1");
      return DensityMeasure::modulated_sincsq(number(d, "alpha", "density"),
                                              number(d, "omega0", "density"));
    }
    throw DomainError("density: unknown family '" + family + "'");
  }
  only_fields(j, {"space", "atoms"}, "measure");
  const Json& arr = field(j, "atoms", "measure");
  if (!arr.is_array()) throw DomainError("measure: atoms must be an array");
  std::vector<Atom> atoms;
  for (const Json& a : arr) {
    only_fields(a, {"x", "w"}, "atom");
    atoms.push_back({point_from_json(field(a, "x", "atom"), "atom"), number(a, "w", "atom")});
    space.check_point(atoms.back().x);
  }
  return DiscreteSignedMeasure::construct(space, std::move(atoms));
}

Json to_json(const DiscreteSignedMeasure& m) {
  Json j;
  j["space"] = space_to_json(m.space());
  j["atoms"] = Json::array();
  for (const Atom& a : m.atoms()) {
    Json atom;
    atom["x"] = a.x;
    atom["w"] = a.w;
    j["atoms"].push_back(atom);
  }
  return j;
}

Json to_json(const Measure& m) {
  if (const auto* d = std::get_if<DiscreteSignedMeasure>(&m)) return to_json(*d);
  const auto& dm = std::get<DensityMeasure>(m);
  Json j;
  j["space"] = space_to_json(dm.space());
  Json d;
  if (const auto* tc = std::get_if<TorusCosine>(&dm.family())) {
    d["family"] = "torus_cosine";
    d["alpha"] = tc->alpha;
    d["n0"] = tc->n0;
  } else {
    const auto& ms = std::get<ModulatedSincSq>(dm.family());
    d["family"] = "modulated_sincsq";
    d["alpha"] = ms.alpha;
    d["omega0"] = ms.omega0;
  }
  j["density"] = d;
  return j;
}

// -- Kernels ---------------------------------------------------------------

Kernel kernel_from_json(const Json& j) {
  only_fields(j, {"family", "space", "params"}, "kernel");
  const std::string name = text(j, "family", "kernel");
  const Space space = space_from_json(field(j, "space", "kernel"));
  const Json params = j.contains("params") ? j["params"] : Json::object();
  const std::string what = "kernel params (" + name + ")";
  auto no_params = [&]() { only_fields(params, {}, what); };

  KernelFamily fam;
  if (name == "gaussian_ti") {
    only_fields(params, {"sigma"}, what);
    fam = family::GaussianTI{number(params, "sigma", what)};
  } else if (name == "laplacian_ti") {
    only_fields(params, {"sigma"}, what);
    fam = family::LaplacianTI{number(params, "sigma", what)};
  } else if (name == "b1_spline") {
    no_params();
    fam = family::B1Spline{};
  } else if (name == "sinc") {
    only_fields(params, {"sigma"}, what);
    fam = family::Sinc{number(params, "sigma", what)};
  } else if (name == "sincsq") {
    no_params();
    fam = family::SincSq{};
  } else if (name == "poisson_torus") {
    only_fields(params, {"sigma"}, what);
    fam = family::PoissonTorus{number(params, "sigma", what)};
  } else if (name == "expcos_torus") {
    only_fields(params, {"alpha"}, what);
    fam = family::ExpCosTorus{number(params, "alpha", what)};
  } else if (name == "quadpoly_torus") {
    no_params();
    fam = family::QuadPolyTorus{};
  } else if (name == "dirichlet" || name == "fejer") {
    only_fields(params, {"l"}, what);
    const long l = integer(params, "l", what);
    if (l < 1 || l > 1'000'000) throw DomainError(what + ": l must be a positive integer");
    if (name == "dirichlet") {
      fam = family::Dirichlet{static_cast<int>(l)};
    } else {
      fam = family::Fejer{static_cast<int>(l)};
    }
  } else if (name == "radial_gaussian") {
    only_fields(params, {"sigma"}, what);
    fam = family::RadialGaussian{number(params, "sigma", what)};
  } else if (name == "inverse_multiquadric") {
    only_fields(params, {"beta", "c"}, what);
    fam = family::InverseMultiquadric{number(params, "beta", what), number(params, "c", what)};
  } else if (name == "radial_atoms") {
    only_fields(params, {"atoms"}, what);
    const Json& arr = field(params, "atoms", what);
    if (!arr.is_array()) throw DomainError(what + ": atoms must be an array");
    family::RadialAtoms ra;
    for (const Json& a : arr) {
      only_fields(a, {"t", "mass"}, what);
      ra.atoms.emplace_back(number(a, "t", what), number(a, "mass", what));
    }
    fam = ra;
  } else if (name == "taylor_exp") {
    no_params();
    fam = family::TaylorExp{};
  } else if (name == "taylor_binomial") {
    only_fields(params, {"beta"}, what);
    fam = family::TaylorBinomial{number(params, "beta", what)};
  } else if (name == "constant") {
    only_fields(params, {"c"}, what);
    fam = family::Constant{number(params, "c", what)};
  } else {
    throw DomainError("kernel: unknown family '" + name + "'");
  }
  return Kernel(std::move(fam), space);
}

Json to_json(const Kernel& k) {
  Json params = Json::object();
  std::visit(Overloaded{
                 [&](const family::GaussianTI& f) { params["sigma"] = f.sigma; },
                 [&](const family::LaplacianTI& f) { params["sigma"] = f.sigma; },
                 [&](const family::Sinc& f) { params["sigma"] = f.sigma; },
                 [&](const family::PoissonTorus& f) { params["sigma"] = f.sigma; },
                 [&](const family::ExpCosTorus& f) { params["alpha"] = f.alpha; },
                 [&](const family::Dirichlet& f) { params["l"] = f.l; },
                 [&](const family::Fejer& f) { params["l"] = f.l; },
                 [&](const family::RadialGaussian& f) { params["sigma"] = f.sigma; },
                 [&](const family::InverseMultiquadric& f) {
                   params["beta"] = f.beta;
                   params["c"] = f.c;
                 },
                 [&](const family::RadialAtoms& f) {
                   params["atoms"] = Json::array();
                   for (const auto& [t, m] : f.atoms) {
                     Json a;
                     a["t"] = t;
                     a["mass"] = m;
                     params["atoms"].push_back(a);
                   }
                 },
                 [&](const family::TaylorBinomial& f) { params["beta"] = f.beta; },
                 [&](const family::Constant& f) { params["c"] = f.c; },
                 [](const auto&) {},
             },
             k.family());
  Json j;
  j["family"] = k.family_name();
  j["space"] = space_to_json(k.space());
  j["params"] = params;
  return j;
}

// -- Certificates ----------------------------------------------------------

std::string to_string(KernelClass c) {
  switch (c) {
    case KernelClass::TranslationInvariant: return "A1";
    case KernelClass::Torus: return "A2";
    case KernelClass::Radial: return "A3";
    case KernelClass::Taylor: return "A4";
  }
  return "?";
}

KernelClass parse_kernel_class(const std::string& s) {
  for (KernelClass c : {KernelClass::TranslationInvariant, KernelClass::Torus,
                        KernelClass::Radial, KernelClass::Taylor}) {
    if (to_string(c) == s) return c;
  }
  throw DomainError("unknown kernel class '" + s + "'");
}

Json to_json(const Certificate& c) {
  Json j;
  j["kernel"] = c.kernel;
  j["kernel_class"] = to_string(c.kernel_class);
  j["compact"] = c.compact_space;
  j["property"] = to_string(c.property);
  j["verdict"] = to_string(c.verdict);
  j["rule"] = c.rule_id;
  j["citation"] = c.citation;
  if (c.witness_ref) j["witness"] = *c.witness_ref;
  j["details"] = Json::object();
  for (const auto& [k, v] : c.details) j["details"][k] = v;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  const std::string what = "certificate";
  only_fields(j, {"kernel", "kernel_class", "compact", "property", "verdict", "rule", "citation",
                  "witness", "details"},
              what);
  Certificate c;
  c.kernel = text(j, "kernel", what);
  c.kernel_class = parse_kernel_class(text(j, "kernel_class", what));
  const Json& compact = field(j, "compact", what);
  if (!compact.is_boolean()) throw DomainError(what + ": compact must be a boolean");
  c.compact_space = compact.get<bool>();
  c.property = parse_property(text(j, "property", what));
  c.verdict = parse_verdict(text(j, "verdict", what));
  c.rule_id = text(j, "rule", what);
  c.citation = text(j, "citation", what);
  if (j.contains("witness")) c.witness_ref = text(j, "witness", what);
  if (j.contains("details")) {
    expect_object(j["details"], what + " details");
    for (const auto& [k, v] : j["details"].items()) {
      if (!v.is_number()) throw DomainError(what + ": detail '" + k + "' must be a number");
      c.details[k] = v.get<double>();
    }
  }
  return c;
}

// -- Witnesses -------------------------------------------------------------

Json to_json(const EnergyResult& e) {
  Json j;
  j["value"] = e.value;
  j["method"] = to_string(e.method);
  j["error_bound"] = e.error_bound;
  return j;
}

Json to_json(const Witness& w) {
  Json j;
  j["measure"] = to_json(w.measure);
  j["refutes"] = to_string(w.refutes);
  j["energy"] = w.energy.value;
  j["bound"] = w.energy.error_bound;
  j["method"] = to_string(w.energy.method);
  j["norm"] = w.norm;
  return j;
}

Witness witness_from_json(const Json& j) {
  const std::string what = "witness";
  only_fields(j, {"measure", "refutes", "energy", "bound", "method", "norm"}, what);
  Witness w{measure_from_json(field(j, "measure", what)),
            parse_property(text(j, "refutes", what)),
            {number(j, "energy", what), parse_method(text(j, "method", what)),
             number(j, "bound", what)},
            number(j, "norm", what)};
  return w;
}

// -- Files -----------------------------------------------------------------

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << dump(j) << '\n';
}

}  // namespace rkhs::io
