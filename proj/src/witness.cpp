#include "rkhs/witness.hpp"

#include <cmath>

namespace rkhs {

Witness torus_zero_energy_witness(const Kernel& k, std::optional<int> grid_size,
                                  std::optional<int> n0, double alpha) {
  const auto spectrum = k.spectral();
  const auto* t = spectrum ? std::get_if<TorusSpectrum>(&*spectrum) : nullptr;
  if (t == nullptr) throw DomainError("torus_zero_energy_witness: " + k.label() + " is not a torus kernel");
  if (t->support != TorusSpectrum::Support::FiniteSet) {
    throw DomainError("torus_zero_energy_witness: " + k.label() +
                      " has no zero coefficient (full spectral support)");
  }
  if (alpha == 0.0 || !std::isfinite(alpha)) {
    throw DomainError("torus_zero_energy_witness: alpha must be nonzero");
  }
  const long l = t->finite_support.back();
  const int freq = n0.value_or(static_cast<int>(l) + 1);
  if (freq < 1) throw DomainError("torus_zero_energy_witness: n0 must be positive");
  if (t->coeff(freq) != 0.0) {
    throw DomainError("torus_zero_energy_witness: A_psi(" + std::to_string(freq) + ") != 0");
  }
  const int m = grid_size.value_or(freq + static_cast<int>(l) + 1);
  // Grid coefficients live on n = +-n0 mod m; they avoid -l..l iff m >= n0 + l + 1.
  if (m < freq + l + 1) {
    throw DomainError("torus_zero_energy_witness: grid size " + std::to_string(m) +
                      " aliases into the spectrum; need m >= " + std::to_string(freq + l + 1));
  }

  std::vector<Atom> atoms;
  atoms.reserve(m);
  const double h = kTwoPi / m;
  for (int j = 0; j < m; ++j) {
    const double x = h * j;
    atoms.push_back({{x}, h * 2.0 * alpha * std::cos(freq * x)});
  }
  auto mu = DiscreteSignedMeasure::construct(k.space(), std::move(atoms));
  Witness w{mu, Property::CUniversal, energy_spatial(k, mu), mu.total_variation()};
  return w;
}

Witness bandlimited_zero_energy_witness(const Kernel& k) {
  if (!(k.space() == Space::euclidean(1))) {
    throw DomainError("bandlimited_zero_energy_witness: needs a kernel on R");
  }
  const auto spectrum = k.spectral();
  const auto* e = spectrum ? std::get_if<EuclideanSpectrum>(&*spectrum) : nullptr;
  if (e == nullptr || e->support != EuclideanSpectrum::Support::Box) {
    throw DomainError("bandlimited_zero_energy_witness: " + k.label() + " is not band-limited");
  }
  const double omega0 = e->half_width + kSincSqHalfWidth + 1.0;
  const auto mu = DensityMeasure::modulated_sincsq(1.0, omega0);
  SpectralConfig cfg;
  cfg.tail_target = 1e-12;
  return {mu, Property::C0Universal, energy_spectral(k, mu, cfg), mu.norm_lower_bound()};
}

Witness gram_null_witness(const Kernel& k, std::span<const Point> points, bool zero_sum) {
  const NumericProbe pr = zero_sum ? check_cond_strict_pd_numeric(k, points)
                                   : check_strict_pd_numeric(k, points);
  if (!pr.fails_on_set) {
    throw DomainError("gram_null_witness: Gram matrix has no numerical null vector (min eigenvalue " +
                      std::to_string(pr.min_eigenvalue) + ")");
  }
  std::vector<Atom> atoms;
  for (std::size_t j = 0; j < points.size(); ++j) {
    atoms.push_back({points[j], pr.null_vector(static_cast<Eigen::Index>(j))});
  }
  auto mu = DiscreteSignedMeasure::construct(k.space(), std::move(atoms));
  if (mu.is_zero()) throw std::logic_error("gram_null_witness: null vector collapsed to zero");
  const EnergyResult e = energy_spatial(k, mu);
  if (e.value > 1e-9 * pr.trace) {
    throw std::logic_error("gram_null_witness: null vector energy exceeds 1e-9 trace");
  }
  return {mu, zero_sum ? Property::CondStrictlyPD : Property::StrictlyPD, e, mu.total_variation()};
}

IndistinguishablePair indistinguishable_pair(const Kernel& k, const DiscreteSignedMeasure& mu) {
  if (std::abs(mu.total_mass()) > DiscreteSignedMeasure::kMassTolerance) {
    throw DomainError("indistinguishable_pair: measure has nonzero total mass");
  }
  const EnergyResult e = energy_spatial(k, mu);
  if (e.value > kZeroEnergyTolerance) {
    throw DomainError("indistinguishable_pair: measure has positive energy " +
                      std::to_string(e.value));
  }
  ProbabilityPair pq = normalize_to_pq(mu);
  const double gap = mmd(k, pq.p, pq.q);
  return {std::move(pq.p), std::move(pq.q), gap};
}

}  // namespace rkhs
