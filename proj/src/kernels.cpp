#include "rkhs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace rkhs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sinc_sigma(double u, double sigma) {
  if (std::abs(sigma * u) < 1e-4) {
    const double s2 = sigma * sigma * u * u;
    return sigma * (1.0 - s2 / 6.0 + s2 * s2 / 120.0);
  }
  return std::sin(sigma * u) / u;
}

double sinc_squared(double u) {
  const double s = sinc_sigma(u, 1.0);
  return s * s;
}

// Lag reduced to [-pi, pi]; small differences stay exact, which the
// sin(u/2) denominators need.
double wrap(double u) { return std::remainder(u, kTwoPi); }

double squared_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - y[j]) * (x[j] - y[j]);
  return s;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * y[j];
  return s;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

// Tail of int_R^inf cos(a w) / w^2 dw, bounded via the second mean value
// theorem when a != 0.
double inverse_square_oscillatory_tail(double R, double a) {
  if (a == 0.0) return 1.0 / R;
  return std::min(1.0 / R, 2.0 / (R * R * std::abs(a)));
}

double binomial_coeff(double beta, int n) {
  return std::exp(std::lgamma(beta + n) - std::lgamma(beta) - std::lgamma(n + 1.0));
}

// sum_{n > degree} a_n rho^n given sup_{n > degree} a_{n+1}/a_n <= ratio_cap.
double geometric_tail(double a_next, double rho, int degree, double ratio_cap) {
  const double q = rho * ratio_cap;
  if (rho == 0.0) return 0.0;
  if (q >= 1.0) return kInf;
  return a_next * std::pow(rho, degree + 1) / (1.0 - q);
}

}  // namespace

// -- Spectral helpers ------------------------------------------------------

double EuclideanSpectrum::density(std::span<const double> omega) const {
  double p = 1.0;
  for (double w : omega) p *= factor_density(w);
  return p;
}

double EuclideanSpectrum::psi_hat(std::span<const double> omega) const {
  return std::pow(kTwoPi, 0.5 * static_cast<double>(omega.size())) * density(omega);
}

double TorusSpectrum::pointwise_tail(long N, double t) const {
  const double absolute = tail(N);
  if (!monotone) return absolute;
  const double s = std::abs(std::sin(0.5 * t));
  if (s == 0.0) return absolute;
  return std::min(absolute, 2.0 * coeff(N + 1) / s);
}

double RadialMixing::total_mass() const {
  double m = 0.0;
  for (const auto& [t, mass] : atoms) m += mass;
  if (gamma) m += std::pow(gamma->rate, -gamma->shape);
  return m;
}

// -- Kernel ----------------------------------------------------------------

Kernel::Kernel(KernelFamily family, Space space) : family_(std::move(family)), space_(space) {
  const bool torus = space_.is_torus();
  auto euclidean_only = [&](const char* name) {
    require(!torus, std::string(name) + " kernel requires Euclidean space");
  };
  auto torus_only = [&](const char* name) {
    require(torus && space_.dim() == 1, std::string(name) + " kernel requires the 1-torus");
  };
  std::visit(
      Overloaded{
          [&](const family::GaussianTI& f) {
            euclidean_only("gaussian_ti");
            require(f.sigma > 0.0, "gaussian_ti: sigma must be positive");
          },
          [&](const family::LaplacianTI& f) {
            euclidean_only("laplacian_ti");
            require(f.sigma > 0.0, "laplacian_ti: sigma must be positive");
          },
          [&](const family::B1Spline&) { euclidean_only("b1_spline"); },
          [&](const family::Sinc& f) {
            euclidean_only("sinc");
            require(f.sigma > 0.0, "sinc: sigma must be positive");
          },
          [&](const family::SincSq&) { euclidean_only("sincsq"); },
          [&](const family::PoissonTorus& f) {
            torus_only("poisson_torus");
            require(f.sigma > 0.0 && f.sigma < 1.0, "poisson_torus: sigma must lie in (0, 1)");
          },
          [&](const family::ExpCosTorus& f) {
            torus_only("expcos_torus");
            require(f.alpha > 0.0 && f.alpha <= 1.0, "expcos_torus: alpha must lie in (0, 1]");
          },
          [&](const family::QuadPolyTorus&) { torus_only("quadpoly_torus"); },
          [&](const family::Dirichlet& f) {
            torus_only("dirichlet");
            require(f.l >= 1, "dirichlet: l must be >= 1");
          },
          [&](const family::Fejer& f) {
            torus_only("fejer");
            require(f.l >= 1, "fejer: l must be >= 1");
          },
          [&](const family::RadialGaussian& f) {
            euclidean_only("radial_gaussian");
            require(f.sigma > 0.0, "radial_gaussian: sigma must be positive");
          },
          [&](const family::InverseMultiquadric& f) {
            euclidean_only("inverse_multiquadric");
            require(f.beta > 0.0 && f.c > 0.0, "inverse_multiquadric: beta and c must be positive");
          },
          [&](const family::RadialAtoms& f) {
            euclidean_only("radial_atoms");
            require(!f.atoms.empty(), "radial_atoms: need at least one atom");
            for (const auto& [t, m] : f.atoms) {
              require(t >= 0.0 && std::isfinite(t), "radial_atoms: t must be >= 0");
              require(m > 0.0 && std::isfinite(m), "radial_atoms: mass must be positive");
            }
          },
          [&](const family::TaylorExp&) { euclidean_only("taylor_exp"); },
          [&](const family::TaylorBinomial& f) {
            euclidean_only("taylor_binomial");
            require(f.beta > 0.0, "taylor_binomial: beta must be positive");
          },
          [&](const family::Constant& f) {
            euclidean_only("constant");
            require(f.c >= 0.0 && std::isfinite(f.c), "constant: c must be >= 0");
          },
      },
      family_);
}

KernelClass Kernel::kernel_class() const {
  return std::visit(
      Overloaded{
          [](const family::GaussianTI&) { return KernelClass::TranslationInvariant; },
          [](const family::LaplacianTI&) { return KernelClass::TranslationInvariant; },
          [](const family::B1Spline&) { return KernelClass::TranslationInvariant; },
          [](const family::Sinc&) { return KernelClass::TranslationInvariant; },
          [](const family::SincSq&) { return KernelClass::TranslationInvariant; },
          [](const family::PoissonTorus&) { return KernelClass::Torus; },
          [](const family::ExpCosTorus&) { return KernelClass::Torus; },
          [](const family::QuadPolyTorus&) { return KernelClass::Torus; },
          [](const family::Dirichlet&) { return KernelClass::Torus; },
          [](const family::Fejer&) { return KernelClass::Torus; },
          [](const family::TaylorExp&) { return KernelClass::Taylor; },
          [](const family::TaylorBinomial&) { return KernelClass::Taylor; },
          [](const auto&) { return KernelClass::Radial; },
      },
      family_);
}

const std::vector<std::string>& zoo_family_names() {
  static const std::vector<std::string> names = {
      "gaussian_ti",     "laplacian_ti",   "b1_spline",       "sinc",
      "sincsq",          "poisson_torus",  "expcos_torus",    "quadpoly_torus",
      "dirichlet",       "fejer",          "radial_gaussian", "inverse_multiquadric",
      "radial_atoms",    "taylor_exp",     "taylor_binomial", "constant"};
  return names;
}

std::string Kernel::family_name() const { return zoo_family_names()[family_.index()]; }

std::string Kernel::label() const {
  std::ostringstream os;
  os << family_name() << "(";
  std::visit(Overloaded{
                 [&](const family::GaussianTI& f) { os << "sigma=" << f.sigma; },
                 [&](const family::LaplacianTI& f) { os << "sigma=" << f.sigma; },
                 [&](const family::Sinc& f) { os << "sigma=" << f.sigma; },
                 [&](const family::PoissonTorus& f) { os << "sigma=" << f.sigma; },
                 [&](const family::ExpCosTorus& f) { os << "alpha=" << f.alpha; },
                 [&](const family::Dirichlet& f) { os << "l=" << f.l; },
                 [&](const family::Fejer& f) { os << "l=" << f.l; },
                 [&](const family::RadialGaussian& f) { os << "sigma=" << f.sigma; },
                 [&](const family::InverseMultiquadric& f) {
                   os << "beta=" << f.beta << ",c=" << f.c;
                 },
                 [&](const family::RadialAtoms& f) { os << f.atoms.size() << " atoms"; },
                 [&](const family::TaylorBinomial& f) { os << "beta=" << f.beta; },
                 [&](const family::Constant& f) { os << "c=" << f.c; },
                 [](const auto&) {},
             },
             family_);
  os << ")@" << space_.to_string();
  return os.str();
}

double Kernel::eval(std::span<const double> x, std::span<const double> y) const {
  space_.check_point(x);
  space_.check_point(y);
  auto per_axis = [&](auto&& fn) {
    double p = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) p *= fn(x[j] - y[j]);
    return p;
  };
  const double u = space_.is_torus() ? wrap(x[0] - y[0]) : 0.0;

  return std::visit(
      Overloaded{
          [&](const family::GaussianTI& f) {
            return std::exp(-squared_distance(x, y) / (2.0 * f.sigma * f.sigma));
          },
          [&](const family::LaplacianTI& f) {
            double l1 = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) l1 += std::abs(x[j] - y[j]);
            return std::exp(-f.sigma * l1);
          },
          [&](const family::B1Spline&) {
            return per_axis([](double d) { return std::max(0.0, 1.0 - std::abs(d)); });
          },
          [&](const family::Sinc& f) {
            return per_axis([&](double d) { return sinc_sigma(d, f.sigma); });
          },
          [&](const family::SincSq&) { return per_axis(sinc_squared); },
          [&](const family::PoissonTorus& f) {
            const double s = f.sigma;
            return (1.0 - s * s) / (s * s - 2.0 * s * std::cos(u) + 1.0);
          },
          [&](const family::ExpCosTorus& f) {
            return std::exp(f.alpha * std::cos(u)) * std::cos(f.alpha * std::sin(u));
          },
          [&](const family::QuadPolyTorus&) { return (kPi - std::abs(u)) * (kPi - std::abs(u)); },
          [&](const family::Dirichlet& f) {
            const double s = std::sin(0.5 * u);
            if (std::abs(s) > 1e-6) return std::sin((2 * f.l + 1) * 0.5 * u) / s;
            double sum = 1.0;
            for (int n = 1; n <= f.l; ++n) sum += 2.0 * std::cos(n * u);
            return sum;
          },
          [&](const family::Fejer& f) {
            const double s = std::sin(0.5 * u);
            const double lp1 = f.l + 1.0;
            if (std::abs(s) > 1e-6) {
              const double num = std::sin(lp1 * 0.5 * u);
              return num * num / (lp1 * s * s);
            }
            double sum = 1.0;
            for (int n = 1; n <= f.l; ++n) sum += 2.0 * (1.0 - n / lp1) * std::cos(n * u);
            return sum;
          },
          [&](const family::RadialGaussian& f) {
            return std::exp(-f.sigma * squared_distance(x, y));
          },
          [&](const family::InverseMultiquadric& f) {
            return std::pow(f.c * f.c + squared_distance(x, y), -f.beta);
          },
          [&](const family::RadialAtoms& f) {
            const double r2 = squared_distance(x, y);
            double s = 0.0;
            for (const auto& [t, m] : f.atoms) s += m * std::exp(-t * r2);
            return s;
          },
          [&](const family::TaylorExp&) { return std::exp(dot(x, y)); },
          [&](const family::TaylorBinomial& f) {
            require(dot(x, x) < 1.0 && dot(y, y) < 1.0,
                    "taylor_binomial: points must lie in the open unit ball");
            return std::pow(1.0 - dot(x, y), -f.beta);
          },
          [&](const family::Constant& f) { return f.c; },
      },
      family_);
}

double Kernel::sup_diagonal() const {
  const double d = space_.dim();
  return std::visit(
      Overloaded{
          [&](const family::Sinc& f) { return std::pow(f.sigma, d); },
          [](const family::PoissonTorus& f) { return (1.0 + f.sigma) / (1.0 - f.sigma); },
          [](const family::ExpCosTorus& f) { return std::exp(f.alpha); },
          [](const family::QuadPolyTorus&) { return kPi * kPi; },
          [](const family::Dirichlet& f) { return 2.0 * f.l + 1.0; },
          [](const family::Fejer& f) { return f.l + 1.0; },
          [](const family::InverseMultiquadric& f) { return std::pow(f.c, -2.0 * f.beta); },
          [](const family::RadialAtoms& f) {
            double s = 0.0;
            for (const auto& [t, m] : f.atoms) s += m;
            return s;
          },
          [](const family::TaylorExp&) { return kInf; },
          [](const family::TaylorBinomial&) { return kInf; },
          [](const family::Constant& f) { return f.c; },
          [](const auto&) { return 1.0; },
      },
      family_);
}

bool Kernel::psi_vanishes_at_infinity() const {
  return kernel_class() == KernelClass::TranslationInvariant;
}

bool Kernel::psi_integrable() const {
  return kernel_class() == KernelClass::TranslationInvariant &&
         !std::holds_alternative<family::Sinc>(family_);
}

std::optional<SpectralMeasure> Kernel::spectral() const {
  const int dim = space_.dim();
  const double inv_sqrt_2pi = 1.0 / std::sqrt(kTwoPi);
  using Opt = std::optional<SpectralMeasure>;

  return std::visit(
      Overloaded{
          [&](const family::GaussianTI& f) -> Opt {
            const double s = f.sigma;
            EuclideanSpectrum e;
            e.dim = dim;
            e.factor_mass = 1.0;
            e.factor_density = [s, inv_sqrt_2pi](double w) {
              return s * inv_sqrt_2pi * std::exp(-0.5 * s * s * w * w);
            };
            e.factor_tail = [s](double R, double) { return std::erfc(s * R / std::sqrt(2.0)); };
            return e;
          },
          [&](const family::LaplacianTI& f) -> Opt {
            const double s = f.sigma;
            EuclideanSpectrum e;
            e.dim = dim;
            e.factor_mass = 1.0;
            auto lam = [s](double w) { return s / (kPi * (s * s + w * w)); };
            e.factor_density = lam;
            e.factor_tail = [s, lam](double R, double delta) {
              const double mass = (2.0 / kPi) * std::atan(s / R);
              if (delta == 0.0) return mass;
              return std::min(mass, 4.0 * lam(R) / std::abs(delta));
            };
            return e;
          },
          [&](const family::B1Spline&) -> Opt {
            EuclideanSpectrum e;
            e.dim = dim;
            e.factor_mass = 1.0;
            e.factor_density = [](double w) {
              if (std::abs(w) < 1e-4) return (0.5 - w * w / 24.0) / kPi;
              return (1.0 - std::cos(w)) / (kPi * w * w);
            };
            e.factor_tail = [](double R, double delta) {
              const double mass = 4.0 / (kPi * R);
              const double osc = (2.0 / kPi) * (inverse_square_oscillatory_tail(R, delta) +
                                                0.5 * inverse_square_oscillatory_tail(R, delta + 1.0) +
                                                0.5 * inverse_square_oscillatory_tail(R, delta - 1.0));
              return std::min(mass, osc);
            };
            return e;
          },
          [&](const family::Sinc& f) -> Opt {
            const double s = f.sigma;
            EuclideanSpectrum e;
            e.dim = dim;
            e.factor_mass = s;
            e.support = EuclideanSpectrum::Support::Box;
            e.half_width = s;
            e.factor_density = [s](double w) { return std::abs(w) <= s ? 0.5 : 0.0; };
            e.kinks = {-s, s};
            e.factor_tail = [s](double R, double) { return R >= s ? 0.0 : s - R; };
            return e;
          },
          [&](const family::SincSq&) -> Opt {
            const double w0 = kSincSqHalfWidth;
            EuclideanSpectrum e;
            e.dim = dim;
            e.factor_mass = 1.0;
            e.support = EuclideanSpectrum::Support::Box;
            e.half_width = w0;
            // Unit total mass: the triangle pi (1 - |w|/2)_+ over 2 pi.
            e.factor_density = [w0](double w) {
              return std::max(0.0, 1.0 - std::abs(w) / w0) / w0;
            };
            e.kinks = {-w0, 0.0, w0};
            e.factor_tail = [w0](double R, double) {
              if (R >= w0) return 0.0;
              const double r = 1.0 - R / w0;
              return r * r;
            };
            return e;
          },
          [&](const family::PoissonTorus& f) -> Opt {
            const double s = f.sigma;
            TorusSpectrum t;
            t.coeff = [s](long n) { return std::pow(s, static_cast<double>(std::labs(n))); };
            t.tail = [s](long N) {
              return 2.0 * std::pow(s, static_cast<double>(N + 1)) / (1.0 - s);
            };
            return t;
          },
          [&](const family::ExpCosTorus& f) -> Opt {
            const double a = f.alpha;
            TorusSpectrum t;
            t.coeff = [a](long n) {
              if (n == 0) return 1.0;
              const double m = static_cast<double>(std::labs(n));
              return std::exp(m * std::log(a) - std::lgamma(m + 1.0)) / 2.0;
            };
            // sum_{n>N} a^n / n! <= a^{N+1}/(N+1)! / (1 - a/(N+2)).
            t.tail = [a](long N) {
              const double m = static_cast<double>(N + 1);
              const double lead = std::exp(m * std::log(a) - std::lgamma(m + 1.0));
              return lead / (1.0 - a / (m + 1.0));
            };
            return t;
          },
          [&](const family::QuadPolyTorus&) -> Opt {
            TorusSpectrum t;
            t.coeff = [](long n) {
              if (n == 0) return kPi * kPi / 3.0;
              const double m = static_cast<double>(n);
              return 2.0 / (m * m);
            };
            t.tail = [](long N) { return N < 1 ? kInf : 4.0 / static_cast<double>(N); };
            return t;
          },
          [&](const family::Dirichlet& f) -> Opt {
            const long l = f.l;
            TorusSpectrum t;
            t.support = TorusSpectrum::Support::FiniteSet;
            for (long n = -l; n <= l; ++n) t.finite_support.push_back(n);
            t.coeff = [l](long n) { return std::labs(n) <= l ? 1.0 : 0.0; };
            t.tail = [l](long N) { return N >= l ? 0.0 : 2.0 * static_cast<double>(l - N); };
            return t;
          },
          [&](const family::Fejer& f) -> Opt {
            const long l = f.l;
            TorusSpectrum t;
            t.support = TorusSpectrum::Support::FiniteSet;
            for (long n = -l; n <= l; ++n) t.finite_support.push_back(n);
            t.coeff = [l](long n) {
              const long m = std::labs(n);
              return m <= l ? 1.0 - static_cast<double>(m) / static_cast<double>(l + 1) : 0.0;
            };
            t.tail = [l](long N) {
              double s = 0.0;
              for (long n = N + 1; n <= l; ++n) {
                s += 2.0 * (1.0 - static_cast<double>(n) / static_cast<double>(l + 1));
              }
              return s;
            };
            return t;
          },
          [&](const family::RadialGaussian& f) -> Opt {
            RadialMixing r;
            r.atoms = {{f.sigma, 1.0}};
            return r;
          },
          [&](const family::InverseMultiquadric& f) -> Opt {
            RadialMixing r;
            r.gamma = RadialMixing::GammaDensity{f.beta, f.c * f.c};
            return r;
          },
          [&](const family::RadialAtoms& f) -> Opt {
            RadialMixing r;
            r.atoms = f.atoms;
            r.supp_is_only_zero = std::all_of(f.atoms.begin(), f.atoms.end(),
                                              [](const auto& a) { return a.first == 0.0; });
            return r;
          },
          [&](const family::Constant& f) -> Opt {
            RadialMixing r;
            if (f.c > 0.0) r.atoms = {{0.0, f.c}};
            r.supp_is_only_zero = true;
            return r;
          },
          [](const family::TaylorExp&) -> Opt { return std::nullopt; },
          [](const family::TaylorBinomial&) -> Opt { return std::nullopt; },
      },
      family_);
}

std::optional<TaylorCoefficients> Kernel::taylor() const {
  if (const auto* f = std::get_if<family::TaylorBinomial>(&family_)) {
    const double beta = f->beta;
    TaylorCoefficients t;
    t.coeff = [beta](int n) { return binomial_coeff(beta, n); };
    t.radius = 1.0;
    t.tail = [beta](int degree, double rho) {
      const double cap = std::max(1.0, (beta + degree + 1.0) / (degree + 2.0));
      return geometric_tail(binomial_coeff(beta, degree + 1), rho, degree, cap);
    };
    return t;
  }
  if (std::holds_alternative<family::TaylorExp>(family_)) {
    TaylorCoefficients t;
    t.coeff = [](int n) { return std::exp(-std::lgamma(n + 1.0)); };
    t.radius = kInf;
    t.tail = [](int degree, double rho) {
      return geometric_tail(std::exp(-std::lgamma(degree + 2.0)), rho, degree,
                            1.0 / (degree + 2.0));
    };
    return t;
  }
  return std::nullopt;
}

Eigen::MatrixXd gram(const Kernel& k, std::span<const Point> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      g(i, j) = k.eval(points[i], points[j]);
      g(j, i) = g(i, j);
    }
  }
  return g;
}

std::vector<TaylorFeature> taylor_features(const Kernel& k, std::span<const double> x,
                                           int degree) {
  const auto coeffs = k.taylor();
  if (!coeffs) throw DomainError("taylor_features: kernel is not a Taylor kernel");
  if (degree < 0) throw DomainError("taylor_features: degree must be >= 0");
  k.space().check_point(x);
  if (!(dot(x, x) < coeffs->radius)) {
    throw DomainError("taylor_features: point lies outside the domain radius");
  }

  const int d = static_cast<int>(x.size());
  std::vector<TaylorFeature> out;
  std::vector<int> alpha(d, 0);
  // Enumerate all multi-indices of each total degree n, recursively by axis.
  std::function<void(int, int, double, double)> emit = [&](int axis, int remaining,
                                                           double monomial, double log_fact) {
    if (axis == d - 1) {
      alpha[axis] = remaining;
      const double mono = monomial * std::pow(x[axis], remaining);
      const double lf = log_fact + std::lgamma(remaining + 1.0);
      const int n = std::accumulate(alpha.begin(), alpha.end(), 0);
      // a_n c_alpha = a_n n! / prod alpha_j!
      const double weight = coeffs->coeff(n) * std::exp(std::lgamma(n + 1.0) - lf);
      out.push_back({alpha, std::sqrt(weight) * mono});
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      alpha[axis] = a;
      emit(axis + 1, remaining - a, monomial * std::pow(x[axis], a),
           log_fact + std::lgamma(a + 1.0));
    }
  };
  for (int n = 0; n <= degree; ++n) emit(0, n, 1.0, 0.0);
  return out;
}

}  // namespace rkhs
