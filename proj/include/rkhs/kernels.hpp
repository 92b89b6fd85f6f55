#pragma once

#include "rkhs/measures.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rkhs {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

/// Parameter structs for the closed kernel zoo. Each maps to one entry of
/// KernelFamily and one JSON "family" tag.
namespace family {

/// exp(-||x-y||^2 / (2 sigma^2)) on R^d.
struct GaussianTI {
  double sigma = 1.0;
};
/// exp(-sigma ||x-y||_1) on R^d.
struct LaplacianTI {
  double sigma = 1.0;
};
/// prod_j (1 - |x_j - y_j|)_+ on R^d.
struct B1Spline {};
/// prod_j sin(sigma u_j) / u_j on R^d.
struct Sinc {
  double sigma = 1.0;
};
/// prod_j sin^2(u_j) / u_j^2 on R^d.
struct SincSq {};
/// (1 - s^2) / (s^2 - 2 s cos u + 1) on T.
struct PoissonTorus {
  double sigma = 0.5;
};
/// exp(a cos u) cos(a sin u) on T.
struct ExpCosTorus {
  double alpha = 1.0;
};
/// (pi - u mod 2pi)^2 on T.
struct QuadPolyTorus {};
/// sin((2l+1)u/2) / sin(u/2) on T.
struct Dirichlet {
  int l = 1;
};
/// sin^2((l+1)u/2) / ((l+1) sin^2(u/2)) on T.
struct Fejer {
  int l = 1;
};
/// exp(-sigma ||x-y||^2) on R^d (rate parameterization).
struct RadialGaussian {
  double sigma = 1.0;
};
/// (c^2 + ||x-y||^2)^(-beta) on R^d.
struct InverseMultiquadric {
  double beta = 1.0;
  double c = 1.0;
};
/// sum_i mass_i exp(-t_i ||x-y||^2) on R^d.
struct RadialAtoms {
  std::vector<std::pair<double, double>> atoms;  // (t_i, mass_i)
};
/// exp(x . y) on R^d.
struct TaylorExp {};
/// (1 - x . y)^(-beta) on the open unit ball.
struct TaylorBinomial {
  double beta = 1.0;
};
/// Constant c on R^d.
struct Constant {
  double c = 1.0;
};

}  // namespace family

using KernelFamily =
    std::variant<family::GaussianTI, family::LaplacianTI, family::B1Spline, family::Sinc,
                 family::SincSq, family::PoissonTorus, family::ExpCosTorus,
                 family::QuadPolyTorus, family::Dirichlet, family::Fejer,
                 family::RadialGaussian, family::InverseMultiquadric, family::RadialAtoms,
                 family::TaylorExp, family::TaylorBinomial, family::Constant>;

/// A1: translation invariant on R^d; A2: translation invariant on T^d;
/// A3: Gaussian scale mixture on R^d; A4: Taylor dot-product kernel.
enum class KernelClass { TranslationInvariant, Torus, Radial, Taylor };

// -- Spectral descriptors --------------------------------------------------

/// Spectral measure of a translation-invariant kernel on R^d. Every zoo kernel
/// of this class is a product over axes, so Lambda = prod_j lambda(w_j) dw.
struct EuclideanSpectrum {
  enum class Support { FullSpace, Box };

  int dim = 1;
  Support support = Support::FullSpace;
  /// For Box support: [-half_width, half_width]^d.
  double half_width = 0.0;
  bool interior_nonempty = true;
  /// Total mass of lambda, i.e. the one-axis psi(0).
  double factor_mass = 1.0;
  /// Per-axis density lambda (symmetric, nonnegative).
  std::function<double(double)> factor_density;
  /// Points where factor_density is not smooth.
  std::vector<double> kinks;
  /// Bound on |int_{|w|>R} cos(w delta) lambda(w) dw|.
  std::function<double(double R, double delta)> factor_tail;

  /// Density of Lambda w.r.t. Lebesgue measure.
  double density(std::span<const double> omega) const;
  /// Fourier transform of psi, (2pi)^{d/2} times the density.
  double psi_hat(std::span<const double> omega) const;
};

/// Fourier-series coefficients A(n) of a kernel on T (A(-n) = A(n)).
struct TorusSpectrum {
  enum class Support { AllIntegers, FiniteSet };

  Support support = Support::AllIntegers;
  /// Sorted frequency list when support is FiniteSet.
  std::vector<long> finite_support;
  std::function<double(long)> coeff;
  /// sum_{|n| > N} A(n).
  std::function<double(long N)> tail;
  /// A(n) non-increasing in |n| for |n| >= 1, which enables the
  /// Abel-summation bound in pointwise_tail.
  bool monotone = true;

  /// Bound on |sum_{|n|>N} A(n) e^{i n t}|.
  double pointwise_tail(long N, double t) const;
};

/// Mixing measure nu of k(x,y) = int exp(-t ||x-y||^2) dnu(t).
struct RadialMixing {
  /// Point masses (t, mass).
  std::vector<std::pair<double, double>> atoms;
  /// Absolutely continuous part t^{shape-1} exp(-rate t) / Gamma(shape).
  struct GammaDensity {
    double shape = 1.0;
    double rate = 1.0;
  };
  std::optional<GammaDensity> gamma;
  bool supp_is_only_zero = false;

  double total_mass() const;
};

using SpectralMeasure = std::variant<EuclideanSpectrum, TorusSpectrum, RadialMixing>;

/// Power-series coefficients of f in k(x, y) = f(x . y).
struct TaylorCoefficients {
  std::function<double(int)> coeff;
  /// Radius of convergence in t = x . y (infinity for exp).
  double radius = 0.0;
  /// Bound on sum_{n > degree} a_n rho^n for 0 <= rho < radius.
  std::function<double(int degree, double rho)> tail;
};

struct TaylorFeature {
  std::vector<int> multi_index;
  double value = 0.0;
};

// -- Kernel descriptor -----------------------------------------------------

class Kernel {
 public:
  /// Validates parameters and family/space compatibility.
  Kernel(KernelFamily family, Space space);

  const KernelFamily& family() const { return family_; }
  const Space& space() const { return space_; }
  KernelClass kernel_class() const;
  /// JSON family tag, e.g. "gaussian_ti".
  std::string family_name() const;
  /// Family tag plus parameters, for logs and certificates.
  std::string label() const;

  double eval(std::span<const double> x, std::span<const double> y) const;
  /// sup_x k(x, x); infinity for unbounded Taylor kernels.
  double sup_diagonal() const;

  /// A1 only: psi vanishes at infinity / psi is Lebesgue integrable.
  bool psi_vanishes_at_infinity() const;
  bool psi_integrable() const;

  /// Empty for Taylor kernels.
  std::optional<SpectralMeasure> spectral() const;
  /// Present only for Taylor kernels.
  std::optional<TaylorCoefficients> taylor() const;

 private:
  KernelFamily family_;
  Space space_;
};

/// G[i][j] = k(p_i, p_j).
Eigen::MatrixXd gram(const Kernel& k, std::span<const Point> points);

/// Feature vector phi_alpha(x) = sqrt(a_|alpha| c_alpha) x^alpha for all
/// |alpha| <= degree, in graded order.
std::vector<TaylorFeature> taylor_features(const Kernel& k, std::span<const double> x,
                                           int degree);

/// Name <-> family tag for every zoo family.
const std::vector<std::string>& zoo_family_names();

}  // namespace rkhs
