// Dense two-phase tableau simplex. Sized for the small programs built by the
// bounded-Lipschitz metric (a few hundred rows), not for general use.

#include "rkhs/numerics.hpp"

#include <cmath>
#include <limits>

namespace rkhs::numerics {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;
constexpr int kDegenerateBeforeBland = 64;

class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols)
      : t_(Eigen::MatrixXd::Zero(rows, cols + 1)), basis_(rows, -1), cols_(cols) {}

  double& at(Eigen::Index r, Eigen::Index c) { return t_(r, c); }
  double& rhs(Eigen::Index r) { return t_(r, cols_); }
  double rhs(Eigen::Index r) const { return t_(r, cols_); }
  Eigen::Index rows() const { return t_.rows(); }
  Eigen::Index cols() const { return cols_; }
  std::vector<Eigen::Index>& basis() { return basis_; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double factor = t_(i, c);
      if (factor != 0.0) t_.row(i) -= factor * t_.row(r);
    }
    basis_[r] = c;
  }

  // Maximizes cost^T x over columns flagged in `allowed`. Returns false when
  // the program is unbounded in that direction.
  bool maximize(const Eigen::VectorXd& cost, const std::vector<bool>& allowed) {
    int degenerate_run = 0;
    const int iteration_cap = 50 * static_cast<int>(t_.rows() + cols_) + 1000;
    for (int iter = 0; iter < iteration_cap; ++iter) {
      // Reduced costs c_j - c_B^T column_j.
      Eigen::VectorXd cb(t_.rows());
      for (Eigen::Index i = 0; i < t_.rows(); ++i) cb(i) = cost(basis_[i]);
      const Eigen::RowVectorXd reduced =
          cost.transpose() - cb.transpose() * t_.leftCols(cols_);

      const bool bland = degenerate_run >= kDegenerateBeforeBland;
      Eigen::Index entering = -1;
      double best = kCostTol;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (!allowed[j] || reduced(j) <= kCostTol) continue;
        if (bland) {
          entering = j;
          break;
        }
        if (reduced(j) > best) {
          best = reduced(j);
          entering = j;
        }
      }
      if (entering < 0) return true;

      Eigen::Index leaving = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < t_.rows(); ++i) {
        const double a = t_(i, entering);
        if (a <= kPivotTol) continue;
        const double r = std::max(0.0, rhs(i)) / a;
        if (r < ratio - 1e-14 ||
            (std::abs(r - ratio) <= 1e-14 && leaving >= 0 && basis_[i] < basis_[leaving])) {
          ratio = r;
          leaving = i;
        }
      }
      if (leaving < 0) return false;
      degenerate_run = ratio <= 1e-14 ? degenerate_run + 1 : 0;
      pivot(leaving, entering);
    }
    throw std::runtime_error("solve_lp: iteration cap reached");
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
  Eigen::Index cols_;
};

}  // namespace

double lp_violation(const LinearProgram& lp, const Eigen::VectorXd& x) {
  double worst = 0.0;
  if (lp.a_ineq.rows() > 0) {
    worst = std::max(worst, (lp.a_ineq * x - lp.b_ineq).maxCoeff());
  }
  if (lp.a_eq.rows() > 0) {
    worst = std::max(worst, (lp.a_eq * x - lp.b_eq).cwiseAbs().maxCoeff());
  }
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const bool is_free = j < static_cast<Eigen::Index>(lp.free_vars.size()) && lp.free_vars[j];
    if (!is_free) worst = std::max(worst, -x(j));
  }
  return worst;
}

LpResult solve_lp(const LinearProgram& lp) {
  const Eigen::Index n = lp.objective.size();
  const Eigen::Index m_ineq = lp.a_ineq.rows();
  const Eigen::Index m_eq = lp.a_eq.rows();
  if ((m_ineq > 0 && lp.a_ineq.cols() != n) || lp.b_ineq.size() != m_ineq ||
      (m_eq > 0 && lp.a_eq.cols() != n) || lp.b_eq.size() != m_eq) {
    throw std::invalid_argument("solve_lp: inconsistent dimensions");
  }
  auto is_free = [&](Eigen::Index j) {
    return j < static_cast<Eigen::Index>(lp.free_vars.size()) && lp.free_vars[j];
  };

  // Column layout: [x (n) | negative parts of free vars | slacks | artificials].
  std::vector<Eigen::Index> neg_col(n, -1);
  Eigen::Index col = n;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (is_free(j)) neg_col[j] = col++;
  }
  const Eigen::Index slack0 = col;
  col += m_ineq;
  const Eigen::Index rows = m_ineq + m_eq;

  std::vector<bool> needs_artificial(rows, false);
  for (Eigen::Index i = 0; i < m_ineq; ++i) needs_artificial[i] = lp.b_ineq(i) < 0.0;
  for (Eigen::Index i = 0; i < m_eq; ++i) needs_artificial[m_ineq + i] = true;
  const Eigen::Index art0 = col;
  for (bool a : needs_artificial) col += a ? 1 : 0;
  const Eigen::Index cols = col;

  Tableau tab(rows, cols);
  Eigen::Index art = art0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const bool ineq = i < m_ineq;
    const Eigen::RowVectorXd a = ineq ? lp.a_ineq.row(i) : lp.a_eq.row(i - m_ineq);
    const double b = ineq ? lp.b_ineq(i) : lp.b_eq(i - m_ineq);
    const double sign = b < 0.0 ? -1.0 : 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      tab.at(i, j) = sign * a(j);
      if (neg_col[j] >= 0) tab.at(i, neg_col[j]) = -sign * a(j);
    }
    if (ineq) tab.at(i, slack0 + i) = sign;
    tab.rhs(i) = sign * b;
    if (needs_artificial[i]) {
      tab.at(i, art) = 1.0;
      tab.basis()[i] = art++;
    } else {
      tab.basis()[i] = slack0 + i;
    }
  }

  LpResult result;
  std::vector<bool> allowed(cols, true);

  if (art0 < cols) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols);
    phase1.tail(cols - art0).setConstant(-1.0);
    tab.maximize(phase1, allowed);
    double infeasibility = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (tab.basis()[i] >= art0) infeasibility += std::abs(tab.rhs(i));
    }
    if (infeasibility > 1e-9) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (tab.basis()[i] < art0) continue;
      for (Eigen::Index j = 0; j < art0; ++j) {
        if (std::abs(tab.at(i, j)) > kPivotTol) {
          tab.pivot(i, j);
          break;
        }
      }
    }
    for (Eigen::Index j = art0; j < cols; ++j) allowed[j] = false;
  }

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
  for (Eigen::Index j = 0; j < n; ++j) {
    cost(j) = lp.objective(j);
    if (neg_col[j] >= 0) cost(neg_col[j]) = -lp.objective(j);
  }
  if (!tab.maximize(cost, allowed)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  Eigen::VectorXd values = Eigen::VectorXd::Zero(cols);
  for (Eigen::Index i = 0; i < rows; ++i) values(tab.basis()[i]) = tab.rhs(i);
  result.solution = values.head(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (neg_col[j] >= 0) result.solution(j) -= values(neg_col[j]);
  }
  result.status = LpStatus::Optimal;
  result.optimum = lp.objective.dot(result.solution);
  result.max_violation = lp_violation(lp, result.solution);
  return result;
}

}  // namespace rkhs::numerics
