#include "rkhs/embedding.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>

namespace rkhs {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;

const DiscreteSignedMeasure& require_discrete(const Measure& m, const char* what) {
  const auto* d = std::get_if<DiscreteSignedMeasure>(&m);
  if (d == nullptr) {
    throw DomainError(std::string(what) + ": density measures are not supported here");
  }
  return *d;
}

double max_diagonal(const Kernel& k, const DiscreteSignedMeasure& mu) {
  double s = 0.0;
  for (const Atom& a : mu.atoms()) s = std::max(s, std::abs(k.eval(a.x, a.x)));
  return s;
}

// Integrates f over [0, R], split at the given kinks and at powers of two so
// that features near the origin are not missed on long intervals.
numerics::QuadratureResult integrate_from_zero(const std::function<double(double)>& f, double R,
                                               const std::vector<double>& kinks,
                                               const numerics::QuadratureConfig& cfg) {
  std::vector<double> cuts = {0.0, R};
  for (double k : kinks) {
    if (k > 0.0 && k < R) cuts.push_back(k);
  }
  for (double p = 1.0; p < R; p *= 2.0) cuts.push_back(p);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  numerics::QuadratureResult total;
  numerics::QuadratureConfig panel_cfg = cfg;
  panel_cfg.abs_tol = cfg.abs_tol / static_cast<double>(cuts.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto r = numerics::integrate_1d(f, cuts[i], cuts[i + 1], panel_cfg);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  return total;
}

// Error of a product of approximations a_k with per-factor errors e_k.
double product_error(std::span<const double> values, std::span<const double> errors) {
  double hi = 1.0;
  double mid = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    hi *= std::abs(values[i]) + errors[i];
    mid *= std::abs(values[i]);
  }
  return hi - mid;
}

// Product spectrum, discrete measure: B = sum_ij w_i w_j prod_a c(x_ia - x_ja)
// where c(delta) = int cos(w delta) dLambda_1(w).
EnergyResult spectral_product_discrete(const EuclideanSpectrum& spec,
                                       const DiscreteSignedMeasure& mu,
                                       const SpectralConfig& cfg) {
  const auto atoms = mu.atoms();
  const int d = mu.space().dim();
  const double tv = mu.total_variation();
  const double factor_target = cfg.tail_target / (d * std::max(1.0, tv * tv));

  std::map<double, LagIntegral> cache;
  auto lag = [&](double delta) -> const LagIntegral& {
    const double key = std::abs(delta);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, spectral_lag_integral(spec, key, factor_target, cfg)).first;
    }
    return it->second;
  };

  numerics::CompensatedSum value;
  double error = 0.0;
  double magnitude = 0.0;
  std::vector<double> vals(d);
  std::vector<double> errs(d);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i; j < atoms.size(); ++j) {
      double prod = 1.0;
      for (int a = 0; a < d; ++a) {
        const LagIntegral& c = lag(atoms[i].x[a] - atoms[j].x[a]);
        vals[a] = c.value;
        errs[a] = c.error_bound;
        prod *= c.value;
      }
      const double mult = (i == j ? 1.0 : 2.0) * atoms[i].w * atoms[j].w;
      value.add(mult * prod);
      error += std::abs(mult) * product_error(vals, errs);
      magnitude += std::abs(mult * prod);
    }
  }
  return {value.value(), EnergyMethod::SpectralQuadrature,
          error + 8.0 * kUnitRoundoff * magnitude};
}

// Discrete measure on T: (2pi)^2 sum_n A(n) |A_mu(n)|^2.
EnergyResult spectral_series_discrete(const TorusSpectrum& spec, const DiscreteSignedMeasure& mu,
                                      const SpectralConfig& cfg) {
  const auto atoms = mu.atoms();
  const double tv = mu.total_variation();
  const double two_pi_sq = kTwoPi * kTwoPi;

  // Phases e^{-i n x_j}, advanced by rotation and reseeded periodically.
  std::vector<std::complex<double>> step(atoms.size());
  std::vector<std::complex<double>> phase(atoms.size(), 1.0);
  for (std::size_t j = 0; j < atoms.size(); ++j) step[j] = std::polar(1.0, -atoms[j].x[0]);
  long current = 0;
  auto coefficient_sq = [&](long n) {
    if (n == current + 1 && n % 256 != 0) {
      for (std::size_t j = 0; j < atoms.size(); ++j) phase[j] *= step[j];
    } else {
      for (std::size_t j = 0; j < atoms.size(); ++j) {
        phase[j] = std::polar(1.0, -static_cast<double>(n) * atoms[j].x[0]);
      }
    }
    current = n;
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < atoms.size(); ++j) s += atoms[j].w * phase[j];
    return std::norm(s) / two_pi_sq;  // |A_mu(n)|^2
  };

  const double mass = mu.total_mass();
  const double zero_term = two_pi_sq * spec.coeff(0) * (mass * mass) / two_pi_sq;

  double series = 0.0;
  double tail = 0.0;
  double magnitude = std::abs(zero_term);
  // Phase error of e^{-inx_j}: n x_j rounds to ~2 pi n u, rotation adds a few
  // ulps per step between reseeds, and the atom sum adds one ulp per atom.
  // Each term moves by at most 4 A(n) TV^2 times that angle error.
  double drift = 0.0;
  const double per_step = (1024.0 + 2.0 * static_cast<double>(atoms.size())) * kUnitRoundoff;
  auto term = [&](long n) {
    const double a = spec.coeff(n);
    drift += 4.0 * tv * tv * a * (kTwoPi * static_cast<double>(n) * kUnitRoundoff + per_step);
    return 2.0 * two_pi_sq * a * coefficient_sq(n);
  };
  if (spec.support == TorusSpectrum::Support::FiniteSet) {
    for (long n : spec.finite_support) {
      if (n <= 0) continue;
      const double t = term(n);
      series += t;
      magnitude += std::abs(t);
    }
  } else {
    auto tail_bound = [&](long N) { return tv * tv * spec.tail(N); };
    const double tol = std::max(cfg.tail_target, tail_bound(cfg.max_series_terms));
    const auto r = numerics::sum_series(term, tail_bound, tol, cfg.max_series_terms);
    series = r.value;
    tail = r.tail_bound;
    magnitude += std::abs(r.value);
  }
  tail += drift;
  return {zero_term + series, EnergyMethod::SpectralSeries,
          tail + 8.0 * kUnitRoundoff * magnitude};
}

// Gaussian component exp(-t ||x-y||^2): product spectrum with
// per-axis N(0, 2t).
EuclideanSpectrum gaussian_component(double t, int dim) {
  Kernel g(family::GaussianTI{1.0 / std::sqrt(2.0 * t)}, Space::euclidean(dim));
  return std::get<EuclideanSpectrum>(*g.spectral());
}

EnergyResult spectral_radial_discrete(const RadialMixing& mix, const DiscreteSignedMeasure& mu,
                                      const SpectralConfig& cfg) {
  const int d = mu.space().dim();
  const double mass = mu.total_mass();
  const double tv = mu.total_variation();

  // Energy of one Gaussian component of unit mass; t = 0 is the constant
  // kernel, whose spectral measure is the Dirac mass at the origin.
  auto component = [&](double t, const SpectralConfig& c) -> EnergyResult {
    if (t == 0.0) return {mass * mass, EnergyMethod::SpectralQuadrature, 0.0};
    return spectral_product_discrete(gaussian_component(t, d), mu, c);
  };

  numerics::CompensatedSum value;
  double error = 0.0;
  for (const auto& [t, m] : mix.atoms) {
    const EnergyResult e = component(t, cfg);
    value.add(m * e.value);
    error += m * e.error_bound;
  }

  if (mix.gamma) {
    const double shape = mix.gamma->shape;
    const double rate = mix.gamma->rate;
    const double total = std::pow(rate, -shape);
    // Truncate t at T where the dropped mixing mass times TV^2 is negligible.
    const double tail_target = cfg.tail_target / std::max(1.0, tv * tv);
    double T = 1.0 / rate;
    while (total * boost::math::gamma_q(shape, rate * T) > tail_target) T *= 1.5;
    const double dropped = tv * tv * total * boost::math::gamma_q(shape, rate * T);

    // t = s^{1/shape} removes the t^{shape-1} singularity:
    // t^{shape-1} dt / Gamma(shape) = ds / (shape Gamma(shape)).
    const double norm = 1.0 / (shape * std::tgamma(shape));
    SpectralConfig inner_cfg = cfg;
    inner_cfg.tail_target = cfg.tail_target / std::max(1.0, total);
    double worst_inner = 0.0;
    auto integrand = [&](double s) {
      const double t = std::pow(s, 1.0 / shape);
      const EnergyResult e = component(t, inner_cfg);
      worst_inner = std::max(worst_inner, e.error_bound);
      return norm * std::exp(-rate * t) * e.value;
    };
    numerics::QuadratureConfig outer = cfg.quadrature;
    outer.abs_tol = std::max(cfg.tail_target, 1e-13);
    outer.rel_tol = 1e-11;
    const auto r = integrate_from_zero(integrand, std::pow(T, shape), {}, outer);
    value.add(r.value);
    error += r.error_estimate + dropped + worst_inner * total;
  }
  return {value.value(), EnergyMethod::SpectralQuadrature, error};
}

// ModulatedSincSq against a product spectrum in d = 1: the transform is
// supported on two compact bands, so the integral is over a finite set.
EnergyResult spectral_density_bands(const EuclideanSpectrum& spec, const DensityMeasure& mu,
                                    const SpectralConfig& cfg) {
  const auto bands = mu.spectral_bands();
  const auto& f = std::get<ModulatedSincSq>(mu.family());
  auto integrand = [&](double w) {
    const double m = density_ft(mu, w);
    return m * m * spec.factor_density(w);
  };
  std::vector<double> cuts;
  for (const auto& [lo, hi] : bands) {
    cuts.push_back(lo);
    cuts.push_back(hi);
  }
  cuts.push_back(f.omega0);
  cuts.push_back(-f.omega0);
  cuts.push_back(0.0);
  for (double k : spec.kinks) cuts.push_back(k);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  numerics::CompensatedSum value;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const bool in_band = std::any_of(bands.begin(), bands.end(), [&](const auto& b) {
      return mid > b.first && mid < b.second;
    });
    if (!in_band) continue;
    const auto r = numerics::integrate_1d(integrand, cuts[i], cuts[i + 1], cfg.quadrature);
    value.add(r.value);
    error += r.error_estimate;
  }
  return {value.value(), EnergyMethod::SpectralQuadrature, error};
}

}  // namespace

std::string to_string(EnergyMethod m) {
  switch (m) {
    case EnergyMethod::SpatialExact: return "spatial_exact";
    case EnergyMethod::SpectralQuadrature: return "spectral_quadrature";
    case EnergyMethod::SpectralSeries: return "spectral_series";
    case EnergyMethod::FeatureTruncation: return "feature_truncation";
  }
  return "unknown";
}

LagIntegral spectral_lag_integral(const EuclideanSpectrum& spec, double delta, double tail_target,
                                  const SpectralConfig& cfg) {
  delta = std::abs(delta);
  // Lag 0 is the total mass of lambda, known in closed form; quadrature of a
  // slowly decaying density out to the tail target would dominate the cost.
  if (delta == 0.0) return {spec.factor_mass, 0.0};
  double R = 0.0;
  double tail = 0.0;
  if (spec.support == EuclideanSpectrum::Support::Box) {
    R = spec.half_width;
  } else {
    const double cap = delta > 0.0
                           ? std::min(cfg.max_radius, cfg.max_oscillations * kTwoPi / delta)
                           : cfg.max_radius;
    R = std::min(1.0, cap);
    while (spec.factor_tail(R, delta) > tail_target && R < cap) R = std::min(2.0 * R, cap);
    tail = spec.factor_tail(R, delta);
  }
  auto integrand = [&](double w) { return std::cos(w * delta) * spec.factor_density(w); };
  numerics::QuadratureConfig qc = cfg.quadrature;
  qc.abs_tol = std::max(0.25 * tail_target, cfg.quadrature.abs_tol);
  const auto r = integrate_from_zero(integrand, R, spec.kinks, qc);
  return {2.0 * r.value, 2.0 * r.error_estimate + tail};
}

double inner(const Kernel& k, const DiscreteSignedMeasure& mu, const DiscreteSignedMeasure& nu) {
  require_same_space(k.space(), mu.space(), "inner");
  require_same_space(k.space(), nu.space(), "inner");
  numerics::CompensatedSum s;
  for (const Atom& a : mu.atoms()) {
    for (const Atom& b : nu.atoms()) s.add(a.w * b.w * k.eval(a.x, b.x));
  }
  return s.value();
}

double inner(const Kernel& k, const Measure& mu, const Measure& nu) {
  return inner(k, require_discrete(mu, "inner"), require_discrete(nu, "inner"));
}

double embed_eval(const Kernel& k, const DiscreteSignedMeasure& mu, std::span<const double> x) {
  require_same_space(k.space(), mu.space(), "embed_eval");
  numerics::CompensatedSum s;
  for (const Atom& a : mu.atoms()) s.add(a.w * k.eval(x, a.x));
  return s.value();
}

EnergyResult energy_spatial(const Kernel& k, const DiscreteSignedMeasure& mu) {
  const double value = inner(k, mu, mu);
  const double tv = mu.total_variation();
  // Compensated summation leaves a few ulps of the absolute term sum, which is
  // at most TV^2 sup_support k(x, x) by Cauchy-Schwarz.
  return {value, EnergyMethod::SpatialExact, 16.0 * kUnitRoundoff * tv * tv * max_diagonal(k, mu)};
}

EnergyResult energy_spectral(const Kernel& k, const Measure& mu, const SpectralConfig& cfg) {
  require_same_space(k.space(), space_of(mu), "energy_spectral");
  const auto spectrum = k.spectral();
  if (!spectrum) {
    throw DomainError("energy_spectral: " + k.family_name() + " has no spectral representation");
  }
  const auto* disc = std::get_if<DiscreteSignedMeasure>(&mu);
  const auto* dens = std::get_if<DensityMeasure>(&mu);

  if (const auto* e = std::get_if<EuclideanSpectrum>(&*spectrum)) {
    if (disc) {
      if (disc->is_zero()) return {0.0, EnergyMethod::SpectralQuadrature, 0.0};
      return spectral_product_discrete(*e, *disc, cfg);
    }
    if (std::holds_alternative<ModulatedSincSq>(dens->family())) {
      return spectral_density_bands(*e, *dens, cfg);
    }
  } else if (const auto* t = std::get_if<TorusSpectrum>(&*spectrum)) {
    if (disc) {
      if (disc->is_zero()) return {0.0, EnergyMethod::SpectralSeries, 0.0};
      return spectral_series_discrete(*t, *disc, cfg);
    }
    if (const auto* c = std::get_if<TorusCosine>(&dens->family())) {
      // A_mu = alpha at n = +-n0 and zero elsewhere.
      const double value = kTwoPi * kTwoPi * 2.0 * t->coeff(c->n0) * c->alpha * c->alpha;
      return {value, EnergyMethod::SpectralSeries, 0.0};
    }
  } else if (const auto* r = std::get_if<RadialMixing>(&*spectrum)) {
    if (disc) {
      if (disc->is_zero()) return {0.0, EnergyMethod::SpectralQuadrature, 0.0};
      return spectral_radial_discrete(*r, *disc, cfg);
    }
  }
  throw DomainError("energy_spectral: unsupported kernel/measure combination for " +
                    k.family_name());
}

EnergyResult energy_features(const Kernel& k, const DiscreteSignedMeasure& mu, int degree) {
  require_same_space(k.space(), mu.space(), "energy_features");
  const auto coeffs = k.taylor();
  if (!coeffs) throw DomainError("energy_features: kernel is not a Taylor kernel");
  if (mu.is_zero()) return {0.0, EnergyMethod::FeatureTruncation, 0.0};

  std::vector<double> sums;
  double rho = 0.0;
  for (const Atom& a : mu.atoms()) {
    const auto phi = taylor_features(k, a.x, degree);
    if (sums.empty()) sums.assign(phi.size(), 0.0);
    for (std::size_t i = 0; i < phi.size(); ++i) sums[i] += a.w * phi[i].value;
    double sq = 0.0;
    for (double v : a.x) sq += v * v;
    rho = std::max(rho, sq);
  }
  numerics::CompensatedSum value;
  for (double s : sums) value.add(s * s);
  const double tv = mu.total_variation();
  const double truncation = tv * tv * coeffs->tail(degree, rho);
  const double roundoff =
      16.0 * kUnitRoundoff * static_cast<double>(sums.size()) * tv * tv * max_diagonal(k, mu);
  return {value.value(), EnergyMethod::FeatureTruncation, truncation + roundoff};
}

double mmd(const Kernel& k, const DiscreteSignedMeasure& p, const DiscreteSignedMeasure& q) {
  if (!p.is_probability() || !q.is_probability()) {
    throw DomainError("mmd: inputs must be probability measures");
  }
  const DiscreteSignedMeasure diff = p - q;
  const EnergyResult e = energy_spatial(k, diff);
  const double tv = diff.total_variation();
  const double threshold = 1e-10 * std::max(1.0, tv * tv * max_diagonal(k, diff));
  if (e.value < -threshold) {
    throw std::logic_error("mmd: energy " + std::to_string(e.value) +
                           " is negative beyond round-off");
  }
  return std::sqrt(std::max(0.0, e.value));
}

double mmd_witness_gap(const Kernel& k, const DiscreteSignedMeasure& p,
                       const DiscreteSignedMeasure& q, const DiscreteSignedMeasure& f_measure) {
  const double norm_sq = energy_spatial(k, f_measure).value;
  if (!(norm_sq > 0.0)) throw DomainError("mmd_witness_gap: candidate has zero RKHS norm");
  return std::abs(inner(k, f_measure, p) - inner(k, f_measure, q)) / std::sqrt(norm_sq);
}

}  // namespace rkhs
