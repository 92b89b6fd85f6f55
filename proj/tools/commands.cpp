#include "commands.hpp"

#include "rkhs/certify.hpp"
#include "rkhs/embedding.hpp"
#include "rkhs/io.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/measures.hpp"
#include "rkhs/weaktopo.hpp"
#include "rkhs/witness.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rkhs::cli {

namespace {

using io::Json;

std::vector<double> parse_list(const std::string& csv, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "'" + item + "' is not a number");
    }
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty list");
  return out;
}

Kernel load_kernel(const std::string& path) { return io::kernel_from_json(io::read_json_file(path)); }
Measure load_measure(const std::string& path) { return io::measure_from_json(io::read_json_file(path)); }

DiscreteSignedMeasure load_discrete(const std::string& path) {
  Measure m = load_measure(path);
  auto* d = std::get_if<DiscreteSignedMeasure>(&m);
  if (d == nullptr) throw DomainError("'" + path + "' must hold a discrete measure");
  return *d;
}

void emit(std::ostream& out, const Json& j, const std::string& path) {
  if (path.empty()) {
    out << io::dump(j) << '\n';
  } else {
    io::write_json_file(path, j);
  }
}

Point unit_point(const Space& s, double t) {
  Point p(static_cast<std::size_t>(s.dim()), 0.0);
  p[0] = t;
  return p;
}

// Point set on which a finite spectrum forces a singular Gram matrix.
std::vector<Point> default_null_points(const Kernel& k) {
  std::vector<Point> pts;
  if (const auto* d = std::get_if<family::Dirichlet>(&k.family())) {
    for (int j = 0; j < 2 * d->l + 2; ++j) pts.push_back({kTwoPi * j / (2 * d->l + 2)});
  } else if (const auto* f = std::get_if<family::Fejer>(&k.family())) {
    for (int j = 0; j < 2 * f->l + 2; ++j) pts.push_back({kTwoPi * j / (2 * f->l + 2)});
  } else {
    pts = {unit_point(k.space(), 0.0), unit_point(k.space(), 1.0)};
  }
  return pts;
}

std::optional<Witness> default_witness(const Kernel& k, Property p, std::optional<int> grid) {
  const bool finite_torus = std::holds_alternative<family::Dirichlet>(k.family()) ||
                            std::holds_alternative<family::Fejer>(k.family());
  const bool constant = std::holds_alternative<family::Constant>(k.family());
  if (p == Property::StrictlyPD || p == Property::CondStrictlyPD) {
    if (!finite_torus && !constant) return std::nullopt;
    const auto pts = default_null_points(k);
    return gram_null_witness(k, pts, p == Property::CondStrictlyPD);
  }
  if (finite_torus) {
    Witness w = torus_zero_energy_witness(k, grid);
    w.refutes = p;
    return w;
  }
  if (constant) {
    auto mu = DiscreteSignedMeasure::construct(
        k.space(), {{unit_point(k.space(), 0.0), 1.0}, {unit_point(k.space(), 1.0), -1.0}});
    return Witness{mu, p, energy_spatial(k, mu), mu.total_variation()};
  }
  const auto s = k.spectral();
  if (s && k.space() == Space::euclidean(1)) {
    const auto* e = std::get_if<EuclideanSpectrum>(&*s);
    if (e && e->support == EuclideanSpectrum::Support::Box) {
      Witness w = bandlimited_zero_energy_witness(k);
      w.refutes = p;
      return w;
    }
  }
  return std::nullopt;
}

Json spectrum_json(const Kernel& k, const std::string& omega_csv, std::optional<long> n) {
  Json j;
  j["kernel"] = k.label();
  j["class"] = io::to_string(k.kernel_class());
  if (k.kernel_class() == KernelClass::Taylor) {
    const auto t = *k.taylor();
    j["radius"] = t.radius;
    j["coefficients"] = Json::array();
    for (int i = 0; i <= 10; ++i) j["coefficients"].push_back(t.coeff(i));
    return j;
  }
  const SpectralMeasure s = *k.spectral();
  if (const auto* e = std::get_if<EuclideanSpectrum>(&s)) {
    const bool full = e->support == EuclideanSpectrum::Support::FullSpace;
    j["support"] = full ? "full_space" : "box";
    if (!full) j["half_width"] = e->half_width;
    j["interior_nonempty"] = e->interior_nonempty;
    if (!omega_csv.empty()) {
      const auto w = parse_list(omega_csv, "--omega");
      if (static_cast<int>(w.size()) != e->dim) throw DomainError("--omega has the wrong dimension");
      j["omega"] = w;
      j["density"] = e->density(w);
      j["psi_hat"] = e->psi_hat(w);
    }
  } else if (const auto* t = std::get_if<TorusSpectrum>(&s)) {
    const bool all = t->support == TorusSpectrum::Support::AllIntegers;
    j["support"] = all ? "all_integers" : "finite_set";
    if (!all) j["frequencies"] = t->finite_support;
    if (n) {
      j["n"] = *n;
      j["coefficient"] = t->coeff(*n);
    } else {
      j["coefficients"] = Json::array();
      for (long i = 0; i <= 5; ++i) j["coefficients"].push_back(t->coeff(i));
    }
  } else {
    const auto& r = std::get<RadialMixing>(s);
    j["atoms"] = Json::array();
    for (const auto& [t, m] : r.atoms) {
      Json a;
      a["t"] = t;
      a["mass"] = m;
      j["atoms"].push_back(a);
    }
    if (r.gamma) {
      j["gamma_density"]["shape"] = r.gamma->shape;
      j["gamma_density"]["rate"] = r.gamma->rate;
    }
    j["supp_is_only_zero"] = r.supp_is_only_zero;
    j["total_mass"] = r.total_mass();
  }
  return j;
}

std::vector<std::string> kernel_files(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto& p = entry.path();
    if (p.extension() == ".json" && p.filename() != "schema.json") files.push_back(p.string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"RKHS embeddings of signed measures: energies, MMD, certificates and witnesses",
               "rkhs-cli"};
  app.require_subcommand(1, 1);

  std::string kernel_path, measure_path, p_path, q_path, property, method = "both", out_path;
  std::string x_csv, y_csv, omega_csv, n_csv, samples_csv, kind, kernel_dir;
  long seed = 0;
  int grid = 0;
  int degree = 30;
  bool negative_control = false;

  auto* kernel_eval = app.add_subcommand("kernel-eval", "Evaluate k(x, y)");
  kernel_eval->add_option("--kernel", kernel_path, "Kernel JSON")->required();
  kernel_eval->add_option("--x", x_csv, "Point x, comma separated")->required();
  kernel_eval->add_option("--y", y_csv, "Point y, comma separated")->required();

  auto* kernel_spectrum = app.add_subcommand("kernel-spectrum", "Describe the spectral measure");
  kernel_spectrum->add_option("--kernel", kernel_path, "Kernel JSON")->required();
  kernel_spectrum->add_option("--omega", omega_csv, "Frequency at which to report the density");
  kernel_spectrum->add_option("--n", n_csv, "Torus frequency at which to report A(n)");

  auto* measure_ft = app.add_subcommand("measure-ft", "Fourier transform of a measure");
  measure_ft->add_option("--measure", measure_path, "Measure JSON")->required();
  measure_ft->add_option("--omega", omega_csv, "Frequency (Euclidean)");
  measure_ft->add_option("--n", n_csv, "Integer frequency (torus)");

  auto* energy = app.add_subcommand("energy", "Energy of a measure under a kernel");
  energy->add_option("--kernel", kernel_path, "Kernel JSON")->required();
  energy->add_option("--measure", measure_path, "Measure JSON")->required();
  energy->add_option("--method", method, "spatial|spectral|both")
      ->check(CLI::IsMember({"spatial", "spectral", "both"}));
  energy->add_option("--degree", degree, "Feature degree for Taylor kernels")
      ->check(CLI::Range(0, 200));

  auto* mmd_cmd = app.add_subcommand("mmd", "MMD between two probability measures");
  mmd_cmd->add_option("--kernel", kernel_path, "Kernel JSON")->required();
  mmd_cmd->add_option("--p", p_path, "Measure JSON for P")->required();
  mmd_cmd->add_option("--q", q_path, "Measure JSON for Q")->required();

  auto* certify_cmd = app.add_subcommand("certify", "Certify a kernel property");
  certify_cmd->add_option("--kernel", kernel_path, "Kernel JSON")->required();
  certify_cmd->add_option("--property", property, "Property name, e.g. c0-universal")->required();
  certify_cmd->add_option("--out", out_path, "Where to write a refuting witness");
  certify_cmd->add_option("--grid", grid, "Grid size for torus witnesses")->check(CLI::Range(1, 1'000'000));

  auto* witness_cmd = app.add_subcommand("witness", "Construct a zero-energy witness");
  witness_cmd->add_option("--kernel", kernel_path, "Kernel JSON")->required();
  witness_cmd->add_option("--kind", kind, "torus|bandlimited|gram|pair")
      ->check(CLI::IsMember({"torus", "bandlimited", "gram", "pair"}));
  witness_cmd->add_option("--grid", grid, "Grid size m")->check(CLI::Range(1, 1'000'000));
  witness_cmd->add_option("--n", n_csv, "Frequency n0 for torus witnesses");
  witness_cmd->add_option("--measure", measure_path,
                          "Points for gram (atoms of this measure) or the measure for pair");
  witness_cmd->add_option("--out", out_path, "Output path");

  auto* experiment = app.add_subcommand("experiment-converge", "Weak-convergence experiment");
  experiment->add_option("--kernel", kernel_path, "Kernel JSON")->required();
  experiment->add_option("--kind", kind, "shrink|moving|empirical")
      ->required()
      ->check(CLI::IsMember({"shrink", "moving", "empirical"}));
  experiment->add_option("--samples", samples_csv, "Scales, offsets or sample sizes");
  experiment->add_option("--measure", measure_path, "Target measure for empirical runs");
  experiment->add_option("--seed", seed, "Seed for empirical runs")->check(CLI::NonNegativeNumber);
  experiment->add_flag("--negative-control", negative_control,
                       "Allow kernels that are not certified characteristic");
  experiment->add_option("--out", out_path, "CSV output path");

  auto* audit = app.add_subcommand("audit", "Check certificates against the implication graph");
  audit->add_option("--kernel", kernel_path, "Kernel JSON");
  audit->add_option("--kernel-dir", kernel_dir, "Directory of kernel JSON files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (kernel_eval->parsed()) {
      const Kernel k = load_kernel(kernel_path);
      const auto x = parse_list(x_csv, "--x");
      const auto y = parse_list(y_csv, "--y");
      Json j;
      j["kernel"] = k.label();
      j["value"] = k.eval(x, y);
      emit(out, j, "");
    } else if (kernel_spectrum->parsed()) {
      const Kernel k = load_kernel(kernel_path);
      std::optional<long> n;
      if (!n_csv.empty()) n = std::lround(parse_list(n_csv, "--n").at(0));
      emit(out, spectrum_json(k, omega_csv, n), "");
    } else if (measure_ft->parsed()) {
      const Measure m = load_measure(measure_path);
      Json j;
      if (const auto* d = std::get_if<DensityMeasure>(&m)) {
        if (d->space().is_torus()) {
          const long n = std::lround(parse_list(n_csv.empty() ? "0" : n_csv, "--n").at(0));
          const std::vector<long> nv{n};
          const auto c = torus_coefficient(m, nv);
          j["re"] = c.real();
          j["im"] = c.imag();
        } else {
          if (omega_csv.empty()) throw CLI::ValidationError("--omega", "required for this measure");
          j["re"] = density_ft(*d, parse_list(omega_csv, "--omega").at(0));
          j["im"] = 0.0;
        }
      } else {
        const auto& disc = std::get<DiscreteSignedMeasure>(m);
        std::complex<double> c;
        if (disc.space().is_torus()) {
          if (n_csv.empty()) throw CLI::ValidationError("--n", "required on the torus");
          std::vector<long> nv;
          for (double v : parse_list(n_csv, "--n")) nv.push_back(std::lround(v));
          c = torus_coefficient(m, nv);
        } else {
          if (omega_csv.empty()) throw CLI::ValidationError("--omega", "required on R^d");
          c = fourier_transform(disc, parse_list(omega_csv, "--omega"));
        }
        j["re"] = c.real();
        j["im"] = c.imag();
      }
      emit(out, j, "");
    } else if (energy->parsed()) {
      const Kernel k = load_kernel(kernel_path);
      const Measure m = load_measure(measure_path);
      Json j;
      j["kernel"] = k.label();
      std::optional<EnergyResult> spatial, spectral;
      if (method != "spectral") {
        if (!std::holds_alternative<DiscreteSignedMeasure>(m)) {
          throw DomainError("spatial energy needs a discrete measure; use --method spectral");
        }
        spatial = energy_spatial(k, std::get<DiscreteSignedMeasure>(m));
        j["spatial"] = spatial->value;
      }
      if (method != "spatial") {
        if (k.kernel_class() == KernelClass::Taylor) {
          const auto* d = std::get_if<DiscreteSignedMeasure>(&m);
          if (d == nullptr) throw DomainError("feature energy needs a discrete measure");
          spectral = energy_features(k, *d, degree);
        } else {
          spectral = energy_spectral(k, m);
        }
        j["spectral"] = spectral->value;
        j["spectral_method"] = to_string(spectral->method);
      }
      j["bounds"] = Json::object();
      if (spatial) j["bounds"]["spatial"] = spatial->error_bound;
      if (spectral) j["bounds"]["spectral"] = spectral->error_bound;
      if (spatial && spectral) {
        j["agree"] = std::abs(spatial->value - spectral->value) <=
                     spatial->error_bound + spectral->error_bound;
      }
      emit(out, j, "");
    } else if (mmd_cmd->parsed()) {
      const Kernel k = load_kernel(kernel_path);
      Json j;
      j["kernel"] = k.label();
      j["mmd"] = mmd(k, load_discrete(p_path), load_discrete(q_path));
      emit(out, j, "");
    } else if (certify_cmd->parsed()) {
      const Kernel k = load_kernel(kernel_path);
      const Property prop = parse_property(property);
      Certificate c = certify(k, prop);
      if (c.verdict == Verdict::Fails) {
        const auto w = default_witness(k, prop, grid > 0 ? std::optional<int>(grid) : std::nullopt);
        if (w) {
          const std::string path =
              out_path.empty() ? k.family_name() + "_" + to_string(prop) + "_witness.json" : out_path;
          io::write_json_file(path, io::to_json(*w));
          c.witness_ref = path;
        }
      }
      emit(out, io::to_json(c), "");
    } else if (witness_cmd->parsed()) {
      const Kernel k = load_kernel(kernel_path);
      if (kind.empty()) {
        if (k.kernel_class() == KernelClass::Torus) {
          kind = "torus";
        } else if (k.kernel_class() == KernelClass::TranslationInvariant) {
          kind = "bandlimited";
        } else {
          kind = "gram";
        }
      }
      const std::optional<int> m = grid > 0 ? std::optional<int>(grid) : std::nullopt;
      std::optional<int> n0;
      if (!n_csv.empty()) n0 = static_cast<int>(std::lround(parse_list(n_csv, "--n").at(0)));
      if (kind == "torus") {
        emit(out, io::to_json(torus_zero_energy_witness(k, m, n0)), out_path);
      } else if (kind == "bandlimited") {
        emit(out, io::to_json(bandlimited_zero_energy_witness(k)), out_path);
      } else if (kind == "gram") {
        std::vector<Point> pts;
        if (!measure_path.empty()) {
          for (const Atom& a : load_discrete(measure_path).atoms()) pts.push_back(a.x);
        } else {
          pts = default_null_points(k);
        }
        emit(out, io::to_json(gram_null_witness(k, pts)), out_path);
      } else {
        DiscreteSignedMeasure mu = DiscreteSignedMeasure::zero(k.space());
        if (!measure_path.empty()) {
          mu = load_discrete(measure_path);
        } else {
          const auto w = default_witness(k, Property::Characteristic, m);
          if (!w || !std::holds_alternative<DiscreteSignedMeasure>(w->measure)) {
            throw DomainError("no discrete zero-energy witness available for " + k.label() +
                              "; pass --measure");
          }
          mu = std::get<DiscreteSignedMeasure>(w->measure);
        }
        const IndistinguishablePair pair = indistinguishable_pair(k, mu);
        Json j;
        j["kernel"] = k.label();
        j["p"] = io::to_json(pair.p);
        j["q"] = io::to_json(pair.q);
        j["mmd"] = pair.mmd;
        emit(out, j, out_path);
      }
    } else if (experiment->parsed()) {
      const Kernel k = load_kernel(kernel_path);
      std::optional<ConvergenceSpec> spec;
      const Point center(static_cast<std::size_t>(k.space().dim()), 0.0);
      auto halvings = [](int count) {
        std::vector<double> v;
        for (int i = 1; i <= count; ++i) v.push_back(std::ldexp(1.0, -i));
        return v;
      };
      if (kind == "empirical") {
        if (measure_path.empty()) throw CLI::ValidationError("--measure", "empirical runs need a target");
        std::vector<int> sizes = {10, 100, 1000, 10000};
        if (!samples_csv.empty()) {
          sizes.clear();
          for (double v : parse_list(samples_csv, "--samples")) {
            if (v != std::floor(v) || v < 1 || v > 1e9) {
              throw CLI::ValidationError("--samples", "sample sizes must be positive integers");
            }
            sizes.push_back(static_cast<int>(v));
          }
        }
        spec = ConvergenceSpec::empirical(load_discrete(measure_path), static_cast<std::uint64_t>(seed),
                                          sizes);
      } else {
        const auto params = samples_csv.empty() ? halvings(kind == "shrink" ? 6 : 10)
                                                : parse_list(samples_csv, "--samples");
        spec = kind == "shrink" ? ConvergenceSpec::shrink_to_dirac(k.space(), center, params)
                                : ConvergenceSpec::moving_atom(k.space(), center, params);
      }
      const ExperimentReport report = run_convergence(k, *spec, negative_control);
      if (out_path.empty()) {
        write_report_csv(out, report);
      } else {
        std::ofstream f(out_path);
        if (!f) throw DomainError("cannot write '" + out_path + "'");
        write_report_csv(f, report);
      }
      if (report.rows.size() >= 3) {
        err << "comonotonicity: " << to_string(comonotonicity_check(report)) << '\n';
      }
    } else if (audit->parsed()) {
      std::vector<std::string> files;
      if (!kernel_dir.empty()) files = kernel_files(kernel_dir);
      if (!kernel_path.empty()) files.push_back(kernel_path);
      if (files.empty()) throw CLI::ValidationError("audit", "pass --kernel or --kernel-dir");
      Json j;
      j["kernels"] = Json::array();
      std::size_t total = 0;
      for (const std::string& f : files) {
        const Kernel k = load_kernel(f);
        const auto certs = certify_all(k);
        const auto violations = audit_implications(certs);
        total += violations.size();
        Json entry;
        entry["file"] = f;
        entry["kernel"] = k.label();
        entry["verdicts"] = Json::object();
        for (const Certificate& c : certs) entry["verdicts"][to_string(c.property)] = to_string(c.verdict);
        entry["violations"] = Json::array();
        for (const Violation& v : violations) entry["violations"].push_back(v.message);
        j["kernels"].push_back(entry);
      }
      j["violation_count"] = total;
      emit(out, j, "");
      return total == 0 ? kOk : kDomainError;
    }
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kDomainError;
  }
  return kOk;
}

}  // namespace rkhs::cli
