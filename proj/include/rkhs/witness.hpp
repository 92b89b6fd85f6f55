#pragma once

#include "rkhs/certify.hpp"
#include "rkhs/embedding.hpp"

#include <optional>
#include <span>

namespace rkhs {

/// A nonzero measure whose energy under a kernel vanishes, refuting
/// `refutes` for that kernel.
struct Witness {
  Measure measure;
  Property refutes = Property::CUniversal;
  EnergyResult energy;
  /// Total variation for discrete measures, a lower bound for densities.
  double norm = 0.0;
};

/// Grid discretization of 2 alpha cos(n0 x) dx with m atoms. n0 defaults to
/// the smallest positive frequency outside the kernel's finite spectrum, and
/// m to n0 + l + 1.
Witness torus_zero_energy_witness(const Kernel& k, std::optional<int> grid_size = std::nullopt,
                                  std::optional<int> n0 = std::nullopt, double alpha = 1.0);

/// Modulated sinc-squared density whose spectral bands miss the support box
/// of a band-limited kernel on R.
Witness bandlimited_zero_energy_witness(const Kernel& k);

/// sum_j v_j delta_{x_j} with v the numerical null vector of the Gram
/// matrix, or of its zero-sum restriction when zero_sum is set.
Witness gram_null_witness(const Kernel& k, std::span<const Point> points, bool zero_sum = false);

struct IndistinguishablePair {
  DiscreteSignedMeasure p;
  DiscreteSignedMeasure q;
  double mmd = 0.0;
};

inline constexpr double kZeroEnergyTolerance = 1e-9;

/// Splits a zero-mass, zero-energy measure into P != Q with equal
/// embeddings.
IndistinguishablePair indistinguishable_pair(const Kernel& k, const DiscreteSignedMeasure& mu);

}  // namespace rkhs
