#include "fixtures.hpp"
#include "support.hpp"

#include "rkhs/embedding.hpp"
#include "rkhs/witness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace rkhs;

namespace {
const Space R1 = Space::euclidean(1);
const Space T1 = Space::torus(1);
const Kernel gauss(family::GaussianTI{1.0}, R1);
const Kernel poisson(family::PoissonTorus{0.5}, T1);

DiscreteSignedMeasure pair(const Space& s, double a, double b) {
  return DiscreteSignedMeasure::construct(s, {{{a}, 1.0}, {{b}, -1.0}});
}
}  // namespace

TEST(Inner, DiracDifferenceAgainstDirac) {
  const double v = inner(gauss, pair(R1, 0, 1), DiscreteSignedMeasure::dirac(R1, {0.0}));
  EXPECT_TRUE(support::close_rel(v, fixtures::inner_gauss_diff_dirac, 1e-10));
}

TEST(Inner, RejectsDensityAndMismatch) {
  const Measure d = DensityMeasure::torus_cosine(1.0, 3);
  const Measure a = DiscreteSignedMeasure::dirac(T1, {0.0});
  EXPECT_THROW(inner(poisson, d, a), DomainError);
  EXPECT_THROW(inner(gauss, pair(T1, 0, 1), pair(T1, 0, 1)), DomainError);
}

TEST(EmbedEval, TwoAtomAverage) {
  const auto mu = DiscreteSignedMeasure::construct(R1, {{{0.0}, 0.5}, {{2.0}, 0.5}});
  const double x[] = {1.0};
  EXPECT_TRUE(support::close_rel(embed_eval(gauss, mu, x), fixtures::embed_eval_gauss_half_0_2_at_1, 1e-10));
}

TEST(Energy, PoissonDiracPairBothRoutes) {
  const auto mu = pair(T1, 0, kPi);
  const auto s = energy_spatial(poisson, mu);
  EXPECT_TRUE(support::close_rel(s.value, fixtures::energy_poisson_dirac_pair_spatial, 1e-10));
  const auto f = energy_spectral(poisson, Measure(mu));
  EXPECT_EQ(f.method, EnergyMethod::SpectralSeries);
  EXPECT_NEAR(f.value, fixtures::energy_poisson_dirac_pair_series, 1e-10);
  EXPECT_NEAR(f.value, 16.0 / 3, 1e-10);
  EXPECT_LE(std::abs(f.value - s.value), f.error_bound + s.error_bound);
}

TEST(Energy, GaussianDiracPair) {
  const auto mu = pair(R1, 0, 1);
  EXPECT_TRUE(support::close_rel(energy_spatial(gauss, mu).value, fixtures::energy_gauss_dirac_diff, 1e-10));
  const auto f = energy_spectral(gauss, Measure(mu));
  EXPECT_EQ(f.method, EnergyMethod::SpectralQuadrature);
  EXPECT_NEAR(f.value, fixtures::energy_gauss_dirac_diff, f.error_bound + 1e-15);
}

TEST(Energy, TaylorFeaturesMatchSpatial) {
  const Kernel k(family::TaylorExp{}, R1);
  const auto mu = pair(R1, 0.5, -0.5);
  const auto s = energy_spatial(k, mu);
  const auto f = energy_features(k, mu, 12);
  EXPECT_TRUE(support::close_rel(s.value, fixtures::energy_spatial_exp_pair, 1e-10));
  EXPECT_TRUE(support::close_rel(f.value, fixtures::energy_features_exp_deg12, 1e-10));
  EXPECT_NEAR(f.value, s.value, 1e-8);
  EXPECT_LE(std::abs(f.value - s.value), f.error_bound + s.error_bound);
  EXPECT_THROW(energy_features(gauss, mu, 3), DomainError);
  EXPECT_THROW(energy_spectral(k, Measure(mu)), DomainError);
}

TEST(Energy, GridWitnessVanishes) {
  const Kernel d(family::Dirichlet{2}, T1);
  const auto w = torus_zero_energy_witness(d, 8, 3);
  const auto& mu = std::get<DiscreteSignedMeasure>(w.measure);
  EXPECT_NEAR(energy_spatial(d, mu).value, fixtures::dirichlet2_grid_witness_energy, 1e-12);
  EXPECT_NEAR(energy_spectral(d, w.measure).value, 0.0, 1e-12);
}

TEST(Energy, DensityMeasures) {
  // only A(+-3) survive: (2 pi)^2 * 2 * sigma^3
  const auto e = energy_spectral(poisson, Measure(DensityMeasure::torus_cosine(1.0, 3)));
  EXPECT_NEAR(e.value, 4 * kPi * kPi * 2 * 0.125, 1e-12);
  const Kernel sinc(family::Sinc{1.0}, R1);
  const auto b = energy_spectral(sinc, Measure(DensityMeasure::modulated_sincsq(1.0, 4.0)));
  EXPECT_LE(b.value, 1e-8);
  // overlapping bands carry energy
  const auto c = energy_spectral(sinc, Measure(DensityMeasure::modulated_sincsq(1.0, 1.0)));
  EXPECT_GT(c.value, 1e-3);
}

TEST(Energy, ZeroMeasure) {
  const auto z = DiscreteSignedMeasure::zero(R1);
  EXPECT_EQ(energy_spatial(gauss, z).value, 0.0);
  EXPECT_EQ(energy_spectral(gauss, Measure(z)).value, 0.0);
}

TEST(Mmd, WitnessGapIsALowerBound) {
  const auto p = DiscreteSignedMeasure::dirac(R1, {0.0}), q = DiscreteSignedMeasure::dirac(R1, {1.0});
  const double gap = mmd_witness_gap(gauss, p, q, p);
  EXPECT_TRUE(support::close_rel(gap, fixtures::witness_gap_gauss, 1e-10));
  EXPECT_LE(gap, mmd(gauss, p, q));
  EXPECT_THROW(mmd_witness_gap(gauss, p, q, DiscreteSignedMeasure::zero(R1)), DomainError);
}

TEST(Mmd, RequiresProbabilities) {
  EXPECT_THROW(mmd(gauss, pair(R1, 0, 1), DiscreteSignedMeasure::dirac(R1, {0.0})), DomainError);
  EXPECT_THROW(mmd(gauss, DiscreteSignedMeasure::dirac(R1, {0.0}, 2.0), DiscreteSignedMeasure::dirac(R1, {0.0})),
               DomainError);
}

// -- properties ------------------------------------------------------------

TEST(EmbeddingProperties, EnergyIsQuadraticAndNonnegative) {
  std::mt19937_64 rng(31);
  for (const auto& name : support::zoo_names()) {
    const Kernel k = support::zoo_kernel(name);
    const bool taylor = k.kernel_class() == KernelClass::Taylor;
    for (int i = 0; i < 10; ++i) {
      const auto mu = support::random_signed(rng, k.space(), 1 + i, taylor ? -0.5 : 0.0, taylor ? 0.5 : 6.0);
      const auto e = energy_spatial(k, mu);
      EXPECT_GE(e.value, -1e-10 * std::max(1.0, e.value)) << name;
      const auto e3 = energy_spatial(k, mu.scaled(-3.0));
      EXPECT_NEAR(e3.value, 9 * e.value, 1e-12 * std::max(1.0, 9 * e.value)) << name;
    }
  }
}

TEST(EmbeddingProperties, MmdSquaredIsDifferenceEnergy) {
  std::mt19937_64 rng(32);
  const Kernel k = support::zoo_kernel("laplacian_ti", 2);
  for (int i = 0; i < 20; ++i) {
    const auto p = support::random_probability(rng, k.space(), 5, -2, 2);
    const auto q = support::random_probability(rng, k.space(), 7, -2, 2);
    const double m = mmd(k, p, q);
    EXPECT_NEAR(m * m, energy_spatial(k, p - q).value, 1e-12);
    const double cross = inner(k, p, p) + inner(k, q, q) - 2 * inner(k, p, q);
    EXPECT_NEAR(m * m, cross, 1e-12);
  }
}

TEST(EmbeddingProperties, EmbedEvalIsInnerWithDirac) {
  std::mt19937_64 rng(33);
  const Kernel k = support::zoo_kernel("radial_atoms", 3);
  for (int i = 0; i < 20; ++i) {
    const auto mu = support::random_signed(rng, k.space(), 6, -2, 2);
    const Point x = support::random_point(rng, 3, -2, 2);
    EXPECT_NEAR(embed_eval(k, mu, x), inner(k, mu, DiscreteSignedMeasure::dirac(k.space(), x)), 1e-14);
  }
}

TEST(EmbeddingProperties, SpectralMatchesSpatialSmallSample) {
  // the full 50-measure sweep lives in the acceptance binary
  std::mt19937_64 rng(34);
  for (auto name : {"gaussian_ti", "sinc", "sincsq", "poisson_torus", "expcos_torus", "dirichlet",
                    "fejer", "radial_gaussian", "radial_atoms", "constant"}) {
    for (int i = 0; i < 5; ++i) {
      const bool torus = support::zoo_kernel(name).space().is_torus();
      const int d = torus ? 1 : 1 + i % 3;
      const Kernel k = support::zoo_kernel(name, d);
      const auto mu = support::random_signed(rng, k.space(), 1 + 3 * i, torus ? 0 : -3, torus ? kTwoPi : 3);
      const auto a = energy_spatial(k, mu);
      const auto b = energy_spectral(k, Measure(mu));
      EXPECT_LE(std::abs(a.value - b.value), a.error_bound + b.error_bound) << name;
    }
  }
}
