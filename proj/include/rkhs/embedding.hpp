#pragma once

#include "rkhs/kernels.hpp"
#include "rkhs/measures.hpp"
#include "rkhs/numerics.hpp"

#include <span>
#include <string>

namespace rkhs {

enum class EnergyMethod { SpatialExact, SpectralQuadrature, SpectralSeries, FeatureTruncation };

std::string to_string(EnergyMethod m);

/// B = int int k dmu dmu together with a bound on its numerical error.
struct EnergyResult {
  double value = 0.0;
  EnergyMethod method = EnergyMethod::SpatialExact;
  double error_bound = 0.0;
};

/// Knobs for the spectral energy routes. Truncation is chosen so that the
/// certified tail contribution stays under tail_target where that is
/// affordable; otherwise the truncation caps apply and the reported
/// error_bound grows accordingly.
struct SpectralConfig {
  double tail_target = numerics::kDefaultTolerances.abs;
  /// Cap on the number of cosine periods resolved per lag integral.
  double max_oscillations = 200.0;
  double max_radius = 1e9;
  long max_series_terms = 200'000;
  numerics::QuadratureConfig quadrature{1e-14, 1e-13, 20'000};
};

/// <Phi mu, Phi nu>_H = sum_i sum_j w_i v_j k(x_i, y_j).
double inner(const Kernel& k, const DiscreteSignedMeasure& mu, const DiscreteSignedMeasure& nu);
/// Same, rejecting density measures explicitly.
double inner(const Kernel& k, const Measure& mu, const Measure& nu);

/// (Phi mu)(x) = sum_j w_j k(x, x_j).
double embed_eval(const Kernel& k, const DiscreteSignedMeasure& mu, std::span<const double> x);

EnergyResult energy_spatial(const Kernel& k, const DiscreteSignedMeasure& mu);

/// Energy through the kernel's spectral representation: quadrature of
/// |mu_hat|^2 against Lambda (A1), the Fourier series (A2), or a sum of
/// Gaussian components of the mixing measure (A3).
EnergyResult energy_spectral(const Kernel& k, const Measure& mu, const SpectralConfig& cfg = {});

/// Energy from the truncated Taylor feature expansion.
EnergyResult energy_features(const Kernel& k, const DiscreteSignedMeasure& mu, int degree);

/// gamma_k(P, Q) = ||Phi P - Phi Q||_H for probability measures.
double mmd(const Kernel& k, const DiscreteSignedMeasure& p, const DiscreteSignedMeasure& q);

/// |int f dP - int f dQ| / ||f||_H for f = Phi(f_measure).
double mmd_witness_gap(const Kernel& k, const DiscreteSignedMeasure& p,
                       const DiscreteSignedMeasure& q, const DiscreteSignedMeasure& f_measure);

/// int cos(w delta) dLambda_1(w) for one axis of a product spectrum, with a
/// bound on truncation plus quadrature error. Exposed for consistency tests.
struct LagIntegral {
  double value = 0.0;
  double error_bound = 0.0;
};
LagIntegral spectral_lag_integral(const EuclideanSpectrum& spectrum, double delta,
                                  double tail_target, const SpectralConfig& cfg = {});

}  // namespace rkhs
