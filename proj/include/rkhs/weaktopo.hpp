#pragma once

#include "rkhs/certify.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/measures.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace rkhs {

inline constexpr std::size_t kMaxLpAtoms = 500;

/// Dudley metric sup { int f d(P - Q) : ||f||_inf + Lip(f) <= 1 } for
/// discrete probability measures on R^d, solved as a linear program.
double bounded_lipschitz(const DiscreteSignedMeasure& p, const DiscreteSignedMeasure& q);

/// Closed form for P = delta_0, Q = delta_t.
inline double bounded_lipschitz_two_diracs(double t) { return 2.0 * t / (t + 2.0); }

/// i.i.d. samples from the target by inverse-CDF, one measure per size.
struct EmpiricalFromTarget {
  std::uint64_t seed = 0;
  std::vector<int> sample_sizes;
};
/// 1/2 delta_{c - eps e1} + 1/2 delta_{c + eps e1} against delta_c.
struct ShrinkToDirac {
  Point center;
  std::vector<double> scales;
};
/// delta_{c + t e1} against delta_c.
struct MovingAtom {
  Point center;
  std::vector<double> offsets;
};

struct ConvergenceSpec {
  std::variant<EmpiricalFromTarget, ShrinkToDirac, MovingAtom> kind;
  DiscreteSignedMeasure target;

  static ConvergenceSpec empirical(DiscreteSignedMeasure target, std::uint64_t seed,
                                   std::vector<int> sample_sizes);
  static ConvergenceSpec shrink_to_dirac(const Space& space, Point center,
                                         std::vector<double> scales);
  static ConvergenceSpec moving_atom(const Space& space, Point center,
                                     std::vector<double> offsets);

  std::string kind_name() const;
  std::size_t length() const;
  /// Monotone parameter lists, probability target, Euclidean space.
  void validate() const;
  /// The n-th measure of the sequence and its index parameter.
  std::pair<double, DiscreteSignedMeasure> element(std::size_t n) const;
};

struct ReportRow {
  double param = 0.0;
  double gamma_k = 0.0;
  double bounded_lipschitz = 0.0;
};

struct ExperimentReport {
  std::string kernel;
  std::string spec_kind;
  std::vector<ReportRow> rows;
};

/// The kernel must be certified characteristic unless the run is flagged as
/// a negative control.
ExperimentReport run_convergence(const Kernel& k, const ConvergenceSpec& spec,
                                 bool negative_control = false);

/// Holds when gamma_k and the bounded-Lipschitz column are concordant over
/// the last half of the rows (positive Kendall score) and both end below
/// where they started.
Verdict comonotonicity_check(const ExperimentReport& report);

/// Header `param,gamma_k,bounded_lipschitz`, 17 significant digits.
void write_report_csv(std::ostream& out, const ExperimentReport& report);
ExperimentReport read_report_csv(std::istream& in);

}  // namespace rkhs
