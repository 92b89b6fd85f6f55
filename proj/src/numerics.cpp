#include "rkhs/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace rkhs::numerics {

namespace {

// Kronrod 21-point abscissae on [-1, 1]; odd indices are the 10-point
// Gauss abscissae.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208616016165, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_21(const std::function<double(double)>& f, double a,
                       double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  // Round-off floor so that polynomial integrands do not report zero error.
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() *
                       std::abs(half) * (std::abs(fc) + std::abs(kronrod / half));
  return {a, b, kronrod, std::max(std::abs(kronrod - gauss), floor)};
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw std::invalid_argument("max_subdivisions must be >= 1");
  }
}

QuadratureResult integrate_1d(const std::function<double(double)>& f, double a,
                              double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("integrate_1d: limits must be finite");
  }
  if (a == b) return {0.0, 0.0, true, 0};
  if (a > b) {
    QuadratureResult r = integrate_1d(f, b, a, cfg);
    r.value = -r.value;
    return r;
  }

  std::priority_queue<Panel> panels;
  panels.push(gauss_kronrod_21(f, a, b));
  double total = panels.top().value;
  double error = panels.top().error;
  int evaluations = 21;
  int subdivisions = 0;

  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

  while (error > target() && subdivisions < cfg.max_subdivisions) {
    Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // interval exhausted
    panels.pop();
    Panel left = gauss_kronrod_21(f, worst.a, mid);
    Panel right = gauss_kronrod_21(f, mid, worst.b);
    evaluations += 42;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum to shed drift from the incremental updates.
  CompensatedSum value;
  CompensatedSum err;
  while (!panels.empty()) {
    value.add(panels.top().value);
    err.add(panels.top().error);
    panels.pop();
  }
  QuadratureResult result;
  result.value = value.value();
  result.error_estimate = err.value();
  result.evaluations = evaluations;
  result.converged =
      result.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(result.value));
  return result;
}

QuadratureResult integrate_box(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> lower, std::span<const double> upper,
    const QuadratureConfig& cfg) {
  const std::size_t dim = lower.size();
  if (dim == 0 || dim > 3 || upper.size() != dim) {
    throw std::invalid_argument("integrate_box: dimension must be 1, 2 or 3");
  }
  std::vector<double> point(dim);
  bool converged = true;
  int evaluations = 0;

  // Inner integrals get a tighter budget so the outer estimate dominates.
  std::function<QuadratureResult(std::size_t, const QuadratureConfig&)> level =
      [&](std::size_t axis, const QuadratureConfig& c) -> QuadratureResult {
    double worst_inner = 0.0;
    auto integrand = [&](double t) {
      point[axis] = t;
      if (axis + 1 == dim) {
        ++evaluations;
        return f(point);
      }
      QuadratureConfig inner = c;
      inner.abs_tol = c.abs_tol * 0.1 / std::max(1.0, upper[axis] - lower[axis]);
      inner.rel_tol = c.rel_tol * 0.1;
      QuadratureResult r = level(axis + 1, inner);
      converged = converged && r.converged;
      worst_inner = std::max(worst_inner, r.error_estimate);
      return r.value;
    };
    QuadratureResult r = integrate_1d(integrand, lower[axis], upper[axis], c);
    converged = converged && r.converged;
    r.error_estimate += worst_inner * (upper[axis] - lower[axis]);
    return r;
  };

  QuadratureResult result = level(0, cfg);
  result.converged = converged;
  result.evaluations = evaluations;
  return result;
}

SeriesResult sum_series(const std::function<double(long)>& term,
                        const std::function<double(long)>& tail_bound,
                        double tol, long max_terms) {
  if (!(tol > 0.0)) throw std::invalid_argument("sum_series: tol must be positive");

  // Exponential search then bisection for the first N with tail(N) <= tol.
  long hi = 1;
  while (tail_bound(hi) > tol) {
    if (hi >= max_terms) {
      throw std::runtime_error("sum_series: tail bound does not reach " +
                               std::to_string(tol) + " within " +
                               std::to_string(max_terms) + " terms");
    }
    hi = std::min(hi * 2, max_terms);
  }
  long lo = hi / 2;  // tail(lo) > tol whenever lo >= 1
  while (lo >= 1 && hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (tail_bound(mid) <= tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  CompensatedSum sum;
  for (long n = 1; n <= hi; ++n) sum.add(term(n));
  return {sum.value(), hi, tail_bound(hi)};
}

namespace {

void require_symmetric(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("matrix is not square");
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("matrix is not symmetric");
  }
}

}  // namespace

EigenPair min_eig_sym(const Eigen::MatrixXd& g) {
  require_symmetric(g);
  if (g.rows() == 0) throw std::invalid_argument("empty matrix");
  const Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver failed");
  }
  EigenPair out;
  out.vector = solver.eigenvectors().col(0).normalized();
  out.value = out.vector.dot(sym * out.vector);
  return out;
}

EigenPair min_eig_sym_zero_sum(const Eigen::MatrixXd& g) {
  require_symmetric(g);
  const Eigen::Index n = g.rows();
  if (n < 2) throw std::invalid_argument("zero-sum restriction needs n >= 2");
  // Columns 1..n-1 of the Householder Q of the ones vector span its complement.
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd basis = q.rightCols(n - 1);
  const Eigen::MatrixXd projected = basis.transpose() * (0.5 * (g + g.transpose())) * basis;
  EigenPair inner = min_eig_sym(0.5 * (projected + projected.transpose()));
  EigenPair out;
  out.vector = (basis * inner.vector).normalized();
  out.value = out.vector.dot(g * out.vector);
  return out;
}

}  // namespace rkhs::numerics
