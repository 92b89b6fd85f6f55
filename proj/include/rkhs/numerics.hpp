#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rkhs::numerics {

/// Shared tolerance defaults. Call sites take these through configuration
/// structs instead of spelling out literals.
struct Tolerances {
  double abs = 1e-10;
  double rel = 1e-8;
};

inline constexpr Tolerances kDefaultTolerances{};

struct QuadratureConfig {
  double abs_tol = kDefaultTolerances.abs;
  double rel_tol = kDefaultTolerances.rel;
  int max_subdivisions = 4000;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (G10/K21) integration of f over [a, b].
///
/// The interval with the largest local error is bisected until the summed
/// error estimate drops below max(abs_tol, rel_tol * |value|) or the
/// subdivision budget is spent. In the latter case `converged` is false and
/// the best estimate is still returned.
QuadratureResult integrate_1d(const std::function<double(double)>& f, double a,
                              double b, const QuadratureConfig& cfg = {});

/// Iterated adaptive quadrature over a box of dimension 1..3.
QuadratureResult integrate_box(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> lower, std::span<const double> upper,
    const QuadratureConfig& cfg = {});

struct SeriesResult {
  double value = 0.0;
  long terms_used = 0;
  double tail_bound = 0.0;
};

/// Sums term(1) + ... + term(N) for the smallest N >= 1 with
/// tail_bound(N) <= tol. tail_bound must be non-increasing in N.
SeriesResult sum_series(const std::function<double(long)>& term,
                        const std::function<double(long)>& tail_bound,
                        double tol, long max_terms = 50'000'000);

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
};

/// Smallest eigenvalue of a symmetric matrix with a unit-norm eigenvector.
EigenPair min_eig_sym(const Eigen::MatrixXd& g);

/// Smallest eigenvalue of g restricted to the orthogonal complement of the
/// all-ones vector; the returned vector lives in that complement.
EigenPair min_eig_sym_zero_sum(const Eigen::MatrixXd& g);

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// -- Linear programming ----------------------------------------------------

/// maximize c^T x subject to A_ineq x <= b_ineq, A_eq x = b_eq and x_j >= 0
/// unless free_vars[j] is set.
struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd a_ineq;
  Eigen::VectorXd b_ineq;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  std::vector<bool> free_vars;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  double optimum = 0.0;
  Eigen::VectorXd solution;
  /// Largest constraint violation of `solution`, measured after the solve.
  double max_violation = 0.0;
};

LpResult solve_lp(const LinearProgram& lp);

/// Largest violation of the constraints of lp at x (bounds included).
double lp_violation(const LinearProgram& lp, const Eigen::VectorXd& x);

}  // namespace rkhs::numerics
