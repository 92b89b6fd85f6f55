#include "rkhs/measures.hpp"

#include "rkhs/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace rkhs {

Space::Space(SpaceKind kind, int dim) : kind_(kind), dim_(dim) {
  if (dim < 1) throw DomainError("space dimension must be >= 1");
}

void Space::check_point(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dim_) {
    throw DomainError("point has dimension " + std::to_string(p.size()) +
                      ", expected " + std::to_string(dim_));
  }
  for (double v : p) {
    if (!std::isfinite(v)) throw DomainError("point has a non-finite coordinate");
  }
}

std::vector<double> Space::canonical(std::span<const double> p) const {
  check_point(p);
  std::vector<double> out(p.begin(), p.end());
  if (kind_ == SpaceKind::Torus) {
    for (double& v : out) {
      v -= kTwoPi * std::floor(v / kTwoPi);
      if (v >= kTwoPi - DiscreteSignedMeasure::kMergeTolerance || v < 0.0) v = 0.0;
    }
  }
  return out;
}

double Space::distance_max(std::span<const double> a, std::span<const double> b) const {
  double worst = 0.0;
  for (int j = 0; j < dim_; ++j) {
    double d = std::abs(a[j] - b[j]);
    if (kind_ == SpaceKind::Torus) {
      d = std::fmod(d, kTwoPi);
      d = std::min(d, kTwoPi - d);
    }
    worst = std::max(worst, d);
  }
  return worst;
}

std::string Space::to_string() const {
  return (kind_ == SpaceKind::Torus ? "T^" : "R^") + std::to_string(dim_);
}

void require_same_space(const Space& a, const Space& b, const char* what) {
  if (!(a == b)) {
    throw DomainError(std::string(what) + ": space mismatch (" + a.to_string() +
                      " vs " + b.to_string() + ")");
  }
}

// -- DiscreteSignedMeasure -------------------------------------------------

DiscreteSignedMeasure DiscreteSignedMeasure::construct(const Space& space,
                                                       std::vector<Atom> raw) {
  for (Atom& a : raw) {
    if (!std::isfinite(a.w)) throw DomainError("atom weight is not finite");
    a.x = space.canonical(a.x);
  }
  std::sort(raw.begin(), raw.end(),
            [](const Atom& a, const Atom& b) { return a.x < b.x; });

  std::vector<Atom> merged;
  merged.reserve(raw.size());
  for (Atom& a : raw) {
    // Candidates for merging share the leading coordinate up to tolerance.
    bool absorbed = false;
    for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
      if (a.x[0] - it->x[0] >= kMergeTolerance) break;
      if (space.distance_max(a.x, it->x) < kMergeTolerance) {
        it->w += a.w;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(std::move(a));
  }
  std::erase_if(merged, [](const Atom& a) { return a.w == 0.0; });
  return DiscreteSignedMeasure(space, std::move(merged));
}

double DiscreteSignedMeasure::total_variation() const {
  numerics::CompensatedSum s;
  for (const Atom& a : atoms_) s.add(std::abs(a.w));
  return s.value();
}

double DiscreteSignedMeasure::total_mass() const {
  numerics::CompensatedSum s;
  for (const Atom& a : atoms_) s.add(a.w);
  return s.value();
}

bool DiscreteSignedMeasure::is_probability() const {
  if (atoms_.empty()) return false;
  for (const Atom& a : atoms_) {
    if (!(a.w > 0.0)) return false;
  }
  return std::abs(total_mass() - 1.0) <= kMassTolerance;
}

DiscreteSignedMeasure DiscreteSignedMeasure::operator+(
    const DiscreteSignedMeasure& other) const {
  require_same_space(space_, other.space_, "measure sum");
  std::vector<Atom> all(atoms_.begin(), atoms_.end());
  all.insert(all.end(), other.atoms_.begin(), other.atoms_.end());
  return construct(space_, std::move(all));
}

DiscreteSignedMeasure DiscreteSignedMeasure::operator-(
    const DiscreteSignedMeasure& other) const {
  return *this + other.scaled(-1.0);
}

DiscreteSignedMeasure DiscreteSignedMeasure::scaled(double factor) const {
  if (!std::isfinite(factor)) throw DomainError("scale factor is not finite");
  std::vector<Atom> out(atoms_.begin(), atoms_.end());
  for (Atom& a : out) a.w *= factor;
  return construct(space_, std::move(out));
}

bool DiscreteSignedMeasure::operator==(const DiscreteSignedMeasure& other) const {
  if (!(space_ == other.space_) || atoms_.size() != other.atoms_.size()) return false;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].x != other.atoms_[i].x || atoms_[i].w != other.atoms_[i].w) return false;
  }
  return true;
}

JordanDecomposition jordan_decompose(const DiscreteSignedMeasure& mu) {
  std::vector<Atom> plus;
  std::vector<Atom> minus;
  for (const Atom& a : mu.atoms()) {
    if (a.w > 0.0) {
      plus.push_back(a);
    } else {
      minus.push_back({a.x, -a.w});
    }
  }
  return {DiscreteSignedMeasure::construct(mu.space(), std::move(plus)),
          DiscreteSignedMeasure::construct(mu.space(), std::move(minus))};
}

ProbabilityPair normalize_to_pq(const DiscreteSignedMeasure& mu) {
  if (mu.is_zero()) throw DomainError("normalize_to_pq: zero measure");
  if (std::abs(mu.total_mass()) > DiscreteSignedMeasure::kMassTolerance) {
    throw DomainError("normalize_to_pq: measure has nonzero total mass");
  }
  JordanDecomposition jd = jordan_decompose(mu);
  const double alpha = jd.positive.total_mass();
  return {jd.positive.scaled(1.0 / alpha), jd.negative.scaled(1.0 / alpha), alpha};
}

std::complex<double> fourier_transform(const DiscreteSignedMeasure& mu,
                                       std::span<const double> omega) {
  if (mu.space().is_torus()) {
    throw DomainError("fourier_transform: use torus_coefficient on the torus");
  }
  if (static_cast<int>(omega.size()) != mu.space().dim()) {
    throw DomainError("fourier_transform: frequency has wrong dimension");
  }
  numerics::CompensatedSum re;
  numerics::CompensatedSum im;
  for (const Atom& a : mu.atoms()) {
    double phase = 0.0;
    for (std::size_t j = 0; j < omega.size(); ++j) phase += omega[j] * a.x[j];
    re.add(a.w * std::cos(phase));
    im.add(-a.w * std::sin(phase));
  }
  return {re.value(), im.value()};
}

// -- DensityMeasure --------------------------------------------------------

DensityMeasure DensityMeasure::torus_cosine(double alpha, int n0) {
  if (alpha == 0.0 || !std::isfinite(alpha)) throw DomainError("torus_cosine: alpha must be nonzero");
  if (n0 < 1) throw DomainError("torus_cosine: n0 must be a positive integer");
  return DensityMeasure(TorusCosine{alpha, n0}, Space::torus(1));
}

DensityMeasure DensityMeasure::modulated_sincsq(double alpha, double omega0) {
  if (alpha == 0.0 || !std::isfinite(alpha)) {
    throw DomainError("modulated_sincsq: alpha must be nonzero");
  }
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw DomainError("modulated_sincsq: omega0 must be positive");
  }
  return DensityMeasure(ModulatedSincSq{alpha, omega0}, Space::euclidean(1));
}

namespace {

double sinc_squared(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 45.0;
  }
  const double s = std::sin(x) / x;
  return s * s;
}

}  // namespace

double DensityMeasure::density(double x) const {
  return std::visit(
      [x](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, TorusCosine>) {
          return 2.0 * f.alpha * std::cos(f.n0 * x);
        } else {
          return 2.0 * f.alpha * std::cos(f.omega0 * x) * sinc_squared(x);
        }
      },
      family_);
}

double DensityMeasure::norm_lower_bound() const {
  return std::visit(
      [](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, TorusCosine>) {
          // int_0^{2pi} |cos(n0 x)| dx = 4, exactly.
          return 8.0 * std::abs(f.alpha);
        } else {
          // |mu_hat(omega0)| <= ||mu||, and the main band peaks at pi |alpha|.
          return std::abs(f.alpha) * kPi;
        }
      },
      family_);
}

std::vector<std::pair<double, double>> DensityMeasure::spectral_bands() const {
  const auto* f = std::get_if<ModulatedSincSq>(&family_);
  if (f == nullptr) throw DomainError("spectral_bands: only for modulated sinc-squared densities");
  const double w = kSincSqHalfWidth;
  return {{-f->omega0 - w, -f->omega0 + w}, {f->omega0 - w, f->omega0 + w}};
}

const Space& space_of(const Measure& m) {
  return std::visit([](const auto& v) -> const Space& { return v.space(); }, m);
}

double sincsq_transform(double omega) {
  return kPi * std::max(0.0, 1.0 - std::abs(omega) / kSincSqHalfWidth);
}

double density_ft(const DensityMeasure& mu, double omega) {
  const auto* f = std::get_if<ModulatedSincSq>(&mu.family());
  if (f == nullptr) throw DomainError("density_ft: only for modulated sinc-squared densities");
  return f->alpha * (sincsq_transform(omega - f->omega0) + sincsq_transform(omega + f->omega0));
}

std::complex<double> torus_coefficient(const Measure& mu, std::span<const long> n) {
  const Space& space = space_of(mu);
  if (!space.is_torus()) throw DomainError("torus_coefficient: measure is not on the torus");
  if (static_cast<int>(n.size()) != space.dim()) {
    throw DomainError("torus_coefficient: frequency has wrong dimension");
  }
  if (const auto* dm = std::get_if<DensityMeasure>(&mu)) {
    const auto& f = std::get<TorusCosine>(dm->family());
    return std::abs(n[0]) == f.n0 ? f.alpha : 0.0;
  }
  const auto& disc = std::get<DiscreteSignedMeasure>(mu);
  numerics::CompensatedSum re;
  numerics::CompensatedSum im;
  for (const Atom& a : disc.atoms()) {
    double phase = 0.0;
    for (std::size_t j = 0; j < n.size(); ++j) phase += static_cast<double>(n[j]) * a.x[j];
    re.add(a.w * std::cos(phase));
    im.add(-a.w * std::sin(phase));
  }
  const double scale = std::pow(kTwoPi, -space.dim());
  return {scale * re.value(), scale * im.value()};
}

}  // namespace rkhs
