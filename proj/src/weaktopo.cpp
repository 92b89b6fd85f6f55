#include "rkhs/weaktopo.hpp"

#include "rkhs/embedding.hpp"
#include "rkhs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <random>
#include <sstream>

namespace rkhs {

namespace {

double euclid(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

struct Pair {
  int i;
  int j;
};

constexpr double kLpFeasibility = 1e-10;

}  // namespace

double bounded_lipschitz(const DiscreteSignedMeasure& p, const DiscreteSignedMeasure& q) {
  require_same_space(p.space(), q.space(), "bounded_lipschitz");
  if (p.space().is_torus()) throw DomainError("bounded_lipschitz: Euclidean space only");
  if (!p.is_probability() || !q.is_probability()) {
    throw DomainError("bounded_lipschitz: inputs must be probability measures");
  }
  if (p.size() + q.size() > kMaxLpAtoms) {
    throw DomainError("bounded_lipschitz: more than " + std::to_string(kMaxLpAtoms) + " atoms");
  }
  // Points where P and Q agree do not change the optimum: any feasible f on
  // the remaining points extends to them (McShane extension, clipped at s).
  const DiscreteSignedMeasure diff = p - q;
  const auto atoms = diff.atoms();
  const int n = static_cast<int>(atoms.size());
  if (n == 0) return 0.0;

  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) dist[i][j] = dist[j][i] = euclid(atoms[i].x, atoms[j].x);
  }

  // Variables: f_0..f_{n-1} (free), s, L.
  const int nv = n + 2;
  const int s_col = n;
  const int l_col = n + 1;

  // Start from nearest-neighbour Lipschitz rows and add violated pairs until
  // the solution satisfies all of them.
  std::vector<Pair> active;
  for (int i = 0; i < n && n > 1; ++i) {
    int best = -1;
    for (int j = 0; j < n; ++j) {
      if (j != i && (best < 0 || dist[i][j] < dist[i][best])) best = j;
    }
    active.push_back({i, best});
    active.push_back({best, i});
  }

  numerics::LinearProgram lp;
  lp.objective = Eigen::VectorXd::Zero(nv);
  for (int i = 0; i < n; ++i) lp.objective(i) = atoms[i].w;
  lp.a_eq = Eigen::MatrixXd::Zero(1, nv);
  lp.a_eq(0, s_col) = 1.0;
  lp.a_eq(0, l_col) = 1.0;
  lp.b_eq = Eigen::VectorXd::Ones(1);
  lp.free_vars.assign(nv, false);
  for (int i = 0; i < n; ++i) lp.free_vars[i] = true;

  for (int round = 0; round < 10 * n + 10; ++round) {
    std::sort(active.begin(), active.end(),
              [](const Pair& a, const Pair& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    active.erase(std::unique(active.begin(), active.end(),
                             [](const Pair& a, const Pair& b) { return a.i == b.i && a.j == b.j; }),
                 active.end());
    const int rows = 2 * n + static_cast<int>(active.size());
    lp.a_ineq = Eigen::MatrixXd::Zero(rows, nv);
    lp.b_ineq = Eigen::VectorXd::Zero(rows);
    for (int i = 0; i < n; ++i) {
      lp.a_ineq(2 * i, i) = 1.0;
      lp.a_ineq(2 * i, s_col) = -1.0;
      lp.a_ineq(2 * i + 1, i) = -1.0;
      lp.a_ineq(2 * i + 1, s_col) = -1.0;
    }
    for (std::size_t r = 0; r < active.size(); ++r) {
      const int row = 2 * n + static_cast<int>(r);
      lp.a_ineq(row, active[r].i) = 1.0;
      lp.a_ineq(row, active[r].j) = -1.0;
      lp.a_ineq(row, l_col) = -dist[active[r].i][active[r].j];
    }
    const numerics::LpResult res = numerics::solve_lp(lp);
    if (res.status != numerics::LpStatus::Optimal) {
      throw std::logic_error("bounded_lipschitz: LP did not reach an optimum");
    }
    const Eigen::VectorXd& x = res.solution;

    std::vector<std::pair<double, Pair>> violated;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const double v = x(i) - x(j) - x(l_col) * dist[i][j];
        if (v > kLpFeasibility) violated.push_back({v, {i, j}});
      }
    }
    if (violated.empty()) {
      if (res.max_violation > 1e-9) {
        throw std::logic_error("bounded_lipschitz: LP solution infeasible");
      }
      return std::max(0.0, res.optimum);
    }
    std::sort(violated.begin(), violated.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    const std::size_t batch = std::min<std::size_t>(violated.size(), std::max(n, 8));
    for (std::size_t r = 0; r < batch; ++r) active.push_back(violated[r].second);
  }
  throw std::logic_error("bounded_lipschitz: row generation did not converge");
}

// -- ConvergenceSpec -------------------------------------------------------

ConvergenceSpec ConvergenceSpec::empirical(DiscreteSignedMeasure target, std::uint64_t seed,
                                           std::vector<int> sample_sizes) {
  ConvergenceSpec s{EmpiricalFromTarget{seed, std::move(sample_sizes)}, std::move(target)};
  s.validate();
  return s;
}

ConvergenceSpec ConvergenceSpec::shrink_to_dirac(const Space& space, Point center,
                                                 std::vector<double> scales) {
  space.check_point(center);
  auto target = DiscreteSignedMeasure::dirac(space, center);
  ConvergenceSpec s{ShrinkToDirac{std::move(center), std::move(scales)}, std::move(target)};
  s.validate();
  return s;
}

ConvergenceSpec ConvergenceSpec::moving_atom(const Space& space, Point center,
                                             std::vector<double> offsets) {
  space.check_point(center);
  auto target = DiscreteSignedMeasure::dirac(space, center);
  ConvergenceSpec s{MovingAtom{std::move(center), std::move(offsets)}, std::move(target)};
  s.validate();
  return s;
}

std::string ConvergenceSpec::kind_name() const {
  switch (kind.index()) {
    case 0: return "empirical";
    case 1: return "shrink_to_dirac";
    default: return "moving_atom";
  }
}

std::size_t ConvergenceSpec::length() const {
  return std::visit(
      [](const auto& k) -> std::size_t {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, EmpiricalFromTarget>) {
          return k.sample_sizes.size();
        } else if constexpr (std::is_same_v<K, ShrinkToDirac>) {
          return k.scales.size();
        } else {
          return k.offsets.size();
        }
      },
      kind);
}

void ConvergenceSpec::validate() const {
  if (target.space().is_torus()) throw DomainError("convergence spec: Euclidean space only");
  if (!target.is_probability()) throw DomainError("convergence spec: target is not a probability measure");
  if (length() == 0) throw DomainError("convergence spec: empty parameter list");
  std::visit(
      [](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, EmpiricalFromTarget>) {
          for (std::size_t i = 0; i < k.sample_sizes.size(); ++i) {
            if (k.sample_sizes[i] < 1) throw DomainError("convergence spec: sample sizes must be >= 1");
            if (i > 0 && k.sample_sizes[i] <= k.sample_sizes[i - 1]) {
              throw DomainError("convergence spec: sample sizes must be strictly increasing");
            }
          }
        } else {
          const auto& v = [&]() -> const std::vector<double>& {
            if constexpr (std::is_same_v<K, ShrinkToDirac>) {
              return k.scales;
            } else {
              return k.offsets;
            }
          }();
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
              throw DomainError("convergence spec: parameters must be positive and finite");
            }
            if (i > 0 && v[i] >= v[i - 1]) {
              throw DomainError("convergence spec: parameters must be strictly decreasing");
            }
          }
        }
      },
      kind);
}

std::pair<double, DiscreteSignedMeasure> ConvergenceSpec::element(std::size_t n) const {
  if (n >= length()) throw DomainError("convergence spec: index out of range");
  const Space& space = target.space();
  return std::visit(
      [&](const auto& k) -> std::pair<double, DiscreteSignedMeasure> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, EmpiricalFromTarget>) {
          // Each size gets its own stream so rows do not depend on which other
          // sizes are in the list.
          const int size = k.sample_sizes[n];
          std::mt19937_64 rng(k.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(size)));
          std::uniform_real_distribution<double> unif(0.0, 1.0);
          const auto atoms = target.atoms();
          std::vector<double> cdf(atoms.size());
          double acc = 0.0;
          for (std::size_t i = 0; i < atoms.size(); ++i) cdf[i] = acc += atoms[i].w;
          std::vector<int> counts(atoms.size(), 0);
          for (int s = 0; s < size; ++s) {
            const double u = unif(rng) * acc;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            if (it == cdf.end()) --it;
            ++counts[static_cast<std::size_t>(it - cdf.begin())];
          }
          std::vector<Atom> out;
          for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (counts[i] > 0) out.push_back({atoms[i].x, static_cast<double>(counts[i]) / size});
          }
          return {static_cast<double>(size), DiscreteSignedMeasure::construct(space, std::move(out))};
        } else if constexpr (std::is_same_v<K, ShrinkToDirac>) {
          const double eps = k.scales[n];
          Point a = k.center;
          Point b = k.center;
          a[0] -= eps;
          b[0] += eps;
          return {eps, DiscreteSignedMeasure::construct(space, {{a, 0.5}, {b, 0.5}})};
        } else {
          const double t = k.offsets[n];
          Point a = k.center;
          a[0] += t;
          return {t, DiscreteSignedMeasure::dirac(space, a)};
        }
      },
      kind);
}

ExperimentReport run_convergence(const Kernel& k, const ConvergenceSpec& spec,
                                 bool negative_control) {
  require_same_space(k.space(), spec.target.space(), "run_convergence");
  spec.validate();
  if (!negative_control && certify(k, Property::Characteristic).verdict != Verdict::Holds) {
    throw DomainError("run_convergence: " + k.label() +
                      " is not certified characteristic; run it as a negative control");
  }
  ExperimentReport report{k.label(), spec.kind_name(), {}};
  for (std::size_t i = 0; i < spec.length(); ++i) {
    auto [param, pn] = spec.element(i);
    report.rows.push_back({param, mmd(k, pn, spec.target), bounded_lipschitz(pn, spec.target)});
  }
  return report;
}

Verdict comonotonicity_check(const ExperimentReport& report) {
  const auto& rows = report.rows;
  if (rows.size() < 3) throw DomainError("comonotonicity_check: needs at least 3 rows");
  const std::size_t tail = (rows.size() + 1) / 2;
  const std::size_t start = rows.size() - tail;
  auto sgn = [](double v) { return (v > 0.0) - (v < 0.0); };
  long score = 0;
  for (std::size_t i = start; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      score += sgn(rows[j].gamma_k - rows[i].gamma_k) *
               sgn(rows[j].bounded_lipschitz - rows[i].bounded_lipschitz);
    }
  }
  const bool decreased = rows.back().gamma_k < rows.front().gamma_k &&
                         rows.back().bounded_lipschitz < rows.front().bounded_lipschitz;
  return score > 0 && decreased ? Verdict::Holds : Verdict::Fails;
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  out << "param,gamma_k,bounded_lipschitz\n";
  std::ostringstream line;
  line << std::setprecision(17);
  for (const ReportRow& r : report.rows) {
    line.str("");
    line << r.param << ',' << r.gamma_k << ',' << r.bounded_lipschitz << '\n';
    out << line.str();
  }
}

ExperimentReport read_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "param,gamma_k,bounded_lipschitz") {
    throw DomainError("report csv: bad header");
  }
  ExperimentReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c)) {
      throw DomainError("report csv: malformed row '" + line + "'");
    }
    try {
      report.rows.push_back({std::stod(a), std::stod(b), std::stod(c)});
    } catch (const std::exception&) {
      throw DomainError("report csv: malformed number in '" + line + "'");
    }
  }
  return report;
}

}  // namespace rkhs
