#pragma once

#include "rkhs/io.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/measures.hpp"

#include <random>
#include <string>
#include <vector>

namespace support {

// Loads zoo/<name>.json, optionally overriding the dimension.
inline rkhs::Kernel zoo_kernel(const std::string& name, int dim = 0) {
  auto j = rkhs::io::read_json_file(std::string(RKHS_ZOO_DIR) + "/" + name + ".json");
  if (dim > 0) j["space"]["dim"] = dim;
  return rkhs::io::kernel_from_json(j);
}

inline std::vector<std::string> zoo_names() {
  return {"gaussian_ti",   "laplacian_ti",   "b1_spline",      "sinc",
          "sincsq",        "poisson_torus",  "expcos_torus",   "quadpoly_torus",
          "dirichlet",     "fejer",          "radial_gaussian", "inverse_multiquadric",
          "radial_atoms",  "constant",       "taylor_exp",     "taylor_binomial"};
}

inline rkhs::Point random_point(std::mt19937_64& rng, int dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  rkhs::Point p(static_cast<std::size_t>(dim));
  for (double& v : p) v = u(rng);
  return p;
}

inline rkhs::DiscreteSignedMeasure random_signed(std::mt19937_64& rng, const rkhs::Space& s,
                                                 int atoms, double lo, double hi) {
  std::uniform_real_distribution<double> w(-1.0, 1.0);
  std::vector<rkhs::Atom> raw;
  for (int i = 0; i < atoms; ++i) raw.push_back({random_point(rng, s.dim(), lo, hi), w(rng)});
  return rkhs::DiscreteSignedMeasure::construct(s, raw);
}

inline rkhs::DiscreteSignedMeasure random_probability(std::mt19937_64& rng, const rkhs::Space& s,
                                                      int atoms, double lo, double hi) {
  std::uniform_real_distribution<double> w(0.05, 1.0);
  std::vector<rkhs::Atom> raw;
  double total = 0.0;
  for (int i = 0; i < atoms; ++i) {
    raw.push_back({random_point(rng, s.dim(), lo, hi), w(rng)});
    total += raw.back().w;
  }
  for (auto& a : raw) a.w /= total;
  return rkhs::DiscreteSignedMeasure::construct(s, raw);
}

// Relative closeness; the tiny floor only matters for exact zeros.
inline bool close_rel(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::abs(want) + 1e-15;
}

}  // namespace support
