#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rkhs {

/// Raised for inputs that violate a documented precondition.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Half-width of the spectrum of x -> sin^2(x)/x^2. Its transform is the
/// triangle pi * (1 - |w| / 2)_+, so the support is [-2, 2].
inline constexpr double kSincSqHalfWidth = 2.0;

enum class SpaceKind { Euclidean, Torus };

class Space {
 public:
  static Space euclidean(int dim) { return Space(SpaceKind::Euclidean, dim); }
  static Space torus(int dim) { return Space(SpaceKind::Torus, dim); }

  SpaceKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_torus() const { return kind_ == SpaceKind::Torus; }

  bool operator==(const Space&) const = default;

  /// Throws DomainError if p has the wrong length or non-finite entries.
  void check_point(std::span<const double> p) const;
  /// Reduces torus coordinates to [0, 2pi); identity on Euclidean space.
  std::vector<double> canonical(std::span<const double> p) const;
  /// Max-norm distance, measured around the circle on the torus.
  double distance_max(std::span<const double> a, std::span<const double> b) const;

  std::string to_string() const;

 private:
  Space(SpaceKind kind, int dim);
  SpaceKind kind_;
  int dim_;
};

/// Throws DomainError unless both spaces are equal.
void require_same_space(const Space& a, const Space& b, const char* what);

using Point = std::vector<double>;

struct Atom {
  Point x;
  double w = 0.0;
};

/// Finite signed measure with finitely many atoms. Atoms are stored sorted,
/// pairwise distinct (max-norm distance >= kMergeTolerance) and nonzero.
class DiscreteSignedMeasure {
 public:
  static constexpr double kMergeTolerance = 1e-12;
  static constexpr double kMassTolerance = 1e-12;

  /// Canonicalizes torus points, merges duplicates and drops zero weights.
  static DiscreteSignedMeasure construct(const Space& space, std::vector<Atom> raw);
  static DiscreteSignedMeasure zero(const Space& space) { return {space, {}}; }
  static DiscreteSignedMeasure dirac(const Space& space, Point x, double w = 1.0) {
    return construct(space, {{std::move(x), w}});
  }

  const Space& space() const { return space_; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool is_zero() const { return atoms_.empty(); }

  double total_variation() const;
  double total_mass() const;
  /// All weights positive and total mass 1 within kMassTolerance.
  bool is_probability() const;

  DiscreteSignedMeasure operator-(const DiscreteSignedMeasure& other) const;
  DiscreteSignedMeasure operator+(const DiscreteSignedMeasure& other) const;
  DiscreteSignedMeasure scaled(double factor) const;

  /// Exact atom-for-atom equality (same points, same weights).
  bool operator==(const DiscreteSignedMeasure& other) const;

 private:
  DiscreteSignedMeasure(Space space, std::vector<Atom> atoms)
      : space_(space), atoms_(std::move(atoms)) {}
  Space space_;
  std::vector<Atom> atoms_;
};

struct JordanDecomposition {
  DiscreteSignedMeasure positive;
  DiscreteSignedMeasure negative;
};

JordanDecomposition jordan_decompose(const DiscreteSignedMeasure& mu);

struct ProbabilityPair {
  DiscreteSignedMeasure p;
  DiscreteSignedMeasure q;
  /// Mass of the positive part; mu = alpha * (p - q).
  double alpha = 0.0;
};

/// Splits a nonzero, zero-mass measure into two distinct probability measures.
ProbabilityPair normalize_to_pq(const DiscreteSignedMeasure& mu);

/// sum_j w_j exp(-i omega . x_j) for a measure on R^d.
std::complex<double> fourier_transform(const DiscreteSignedMeasure& mu,
                                       std::span<const double> omega);

// -- Density measures ------------------------------------------------------

/// 2 alpha cos(n0 x) dx on [0, 2pi).
struct TorusCosine {
  double alpha = 1.0;
  int n0 = 1;
};

/// 2 alpha cos(omega0 x) sin^2(x)/x^2 dx on R.
struct ModulatedSincSq {
  double alpha = 1.0;
  double omega0 = 1.0;
};

class DensityMeasure {
 public:
  using Family = std::variant<TorusCosine, ModulatedSincSq>;

  static DensityMeasure torus_cosine(double alpha, int n0);
  static DensityMeasure modulated_sincsq(double alpha, double omega0);

  const Family& family() const { return family_; }
  const Space& space() const { return space_; }

  double density(double x) const;
  /// Certified lower bound on the total variation (positive for every
  /// admissible parameter set).
  double norm_lower_bound() const;
  /// Frequency bands [lo, hi] outside which the transform vanishes. Only for
  /// ModulatedSincSq.
  std::vector<std::pair<double, double>> spectral_bands() const;

 private:
  DensityMeasure(Family family, Space space) : family_(family), space_(space) {}
  Family family_;
  Space space_;
};

using Measure = std::variant<DiscreteSignedMeasure, DensityMeasure>;

const Space& space_of(const Measure& m);

/// Torus Fourier coefficient (2pi)^{-d} int exp(-i n . x) dmu(x).
std::complex<double> torus_coefficient(const Measure& mu, std::span<const long> n);

/// int exp(-i omega x) dmu(x) for a ModulatedSincSq density. Real because
/// the density is even.
double density_ft(const DensityMeasure& mu, double omega);

/// Transform of sin^2(x)/x^2 under the measure convention: pi (1 - |w|/2)_+.
double sincsq_transform(double omega);

}  // namespace rkhs
