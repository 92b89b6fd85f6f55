#include "fixtures.hpp"
#include "support.hpp"

#include "rkhs/witness.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace rkhs;

namespace {
const Space T1 = Space::torus(1);
const Space R1 = Space::euclidean(1);
}  // namespace

TEST(TorusWitness, DirichletGrid) {
  const Kernel k(family::Dirichlet{2}, T1);
  const auto w = torus_zero_energy_witness(k, 8, 3);
  const auto& mu = std::get<DiscreteSignedMeasure>(w.measure);
  EXPECT_EQ(mu.size(), 8u);
  EXPECT_GT(w.norm, 0.0);
  EXPECT_LE(std::abs(mu.total_mass()), 1e-12);
  EXPECT_NEAR(w.energy.value, fixtures::dirichlet2_grid_witness_energy, 1e-12);
  EXPECT_EQ(w.refutes, Property::CUniversal);
  // coefficients live exactly on the aliases of +-3 mod 8
  for (long n = -12; n <= 12; ++n) {
    const long f[] = {n};
    const bool in = std::find(fixtures::dirichlet2_grid_support.begin(),
                              fixtures::dirichlet2_grid_support.end(), n) !=
                    fixtures::dirichlet2_grid_support.end();
    const double a = std::abs(torus_coefficient(w.measure, f));
    if (in) {
      EXPECT_GT(a, 0.5) << n;
    } else {
      EXPECT_LE(a, 1e-14) << n;
    }
  }
}

TEST(TorusWitness, FejerGrid) {
  const Kernel k(family::Fejer{1}, T1);
  const auto w = torus_zero_energy_witness(k, 6, 2);
  EXPECT_NEAR(w.energy.value, fixtures::fejer1_grid_witness_energy, 1e-12);
}

TEST(TorusWitness, Defaults) {
  const Kernel k(family::Dirichlet{2}, T1);
  const auto w = torus_zero_energy_witness(k);
  EXPECT_EQ(std::get<DiscreteSignedMeasure>(w.measure).size(), 6u);  // n0 = 3, m = 6
  EXPECT_LE(w.energy.value, 1e-12);
}

TEST(TorusWitness, Errors) {
  const Kernel d(family::Dirichlet{2}, T1);
  EXPECT_THROW(torus_zero_energy_witness(d, 5, 3), DomainError);      // grid too coarse
  EXPECT_THROW(torus_zero_energy_witness(d, 8, 1), DomainError);      // A(1) != 0
  EXPECT_THROW(torus_zero_energy_witness(d, 8, 3, 0.0), DomainError);
  EXPECT_THROW(torus_zero_energy_witness(support::zoo_kernel("poisson_torus")), DomainError);
  EXPECT_THROW(torus_zero_energy_witness(support::zoo_kernel("gaussian_ti")), DomainError);
}

TEST(BandlimitedWitness, SincAndSincSq) {
  for (auto name : {"sinc", "sincsq"}) {
    const auto w = bandlimited_zero_energy_witness(support::zoo_kernel(name));
    EXPECT_LE(w.energy.value, 1e-8) << name;
    EXPECT_GT(w.norm, 0.0);
    EXPECT_EQ(w.refutes, Property::C0Universal);
  }
  EXPECT_THROW(bandlimited_zero_energy_witness(support::zoo_kernel("gaussian_ti")), DomainError);
  EXPECT_THROW(bandlimited_zero_energy_witness(support::zoo_kernel("sinc", 2)), DomainError);
}

TEST(GramWitness, DirichletEquispaced) {
  const Kernel k(family::Dirichlet{1}, T1);
  std::vector<Point> pts;
  for (int i = 0; i < 4; ++i) pts.push_back({i * kTwoPi / 4});
  const auto w = gram_null_witness(k, pts);
  const auto& mu = std::get<DiscreteSignedMeasure>(w.measure);
  EXPECT_FALSE(mu.is_zero());
  const double trace = 4 * 3.0;
  EXPECT_LE(w.energy.value, 1e-9 * trace);
  EXPECT_EQ(w.refutes, Property::StrictlyPD);
}

TEST(GramWitness, GaussianHasNone) {
  const Kernel k(family::GaussianTI{1.0}, R1);
  const std::vector<Point> pts = {{0.0}, {1.0}, {2.5}};
  EXPECT_THROW(gram_null_witness(k, pts), DomainError);
}

TEST(GramWitness, ZeroSumVariantForConstant) {
  const Kernel k(family::Constant{1.0}, R1);
  const std::vector<Point> pts = {{0.0}, {1.0}};
  const auto w = gram_null_witness(k, pts, true);
  EXPECT_LE(std::abs(std::get<DiscreteSignedMeasure>(w.measure).total_mass()), 1e-12);
  EXPECT_EQ(w.refutes, Property::CondStrictlyPD);
}

TEST(Indistinguishable, DirichletGridPair) {
  const Kernel k(family::Dirichlet{2}, T1);
  const auto mu = std::get<DiscreteSignedMeasure>(torus_zero_energy_witness(k, 8, 3).measure);
  const auto pair = indistinguishable_pair(k, mu);
  EXPECT_FALSE(pair.p == pair.q);
  EXPECT_TRUE(pair.p.is_probability());
  EXPECT_TRUE(pair.q.is_probability());
  EXPECT_LE(pair.mmd, 1e-10);
  EXPECT_LE(mmd(k, pair.p, pair.q), 1e-10);
}

TEST(Indistinguishable, GaussianRefuses) {
  const Kernel k(family::GaussianTI{1.0}, R1);
  const auto mu = DiscreteSignedMeasure::construct(R1, {{{0.0}, 1.0}, {{1.0}, -1.0}});
  EXPECT_THROW(indistinguishable_pair(k, mu), DomainError);
  EXPECT_THROW(indistinguishable_pair(k, DiscreteSignedMeasure::dirac(R1, {0.0})), DomainError);
}

// Random admissible grids and frequencies all give zero-energy witnesses.
TEST(WitnessProperties, TorusGridsVanish) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const int l = 1 + static_cast<int>(rng() % 4);
    const Kernel k = trial % 2 ? Kernel(family::Dirichlet{l}, T1) : Kernel(family::Fejer{l}, T1);
    const int n0 = l + 1 + static_cast<int>(rng() % 3);
    const int m = n0 + l + 1 + static_cast<int>(rng() % 5);
    const auto w = torus_zero_energy_witness(k, m, n0, 0.5 + (rng() % 100) / 50.0);
    EXPECT_LE(std::abs(w.energy.value), 1e-12 * std::max(1.0, w.norm * w.norm)) << k.label();
    const auto& mu = std::get<DiscreteSignedMeasure>(w.measure);
    EXPECT_LE(energy_spatial(k, mu).value, 1e-12 * std::max(1.0, w.norm * w.norm));
  }
}
