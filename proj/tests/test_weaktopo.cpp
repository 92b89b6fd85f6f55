#include "fixtures.hpp"
#include "support.hpp"

#include "rkhs/embedding.hpp"
#include "rkhs/weaktopo.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace rkhs;

namespace {
const Space R1 = Space::euclidean(1);
const Kernel gauss(family::GaussianTI{1.0}, R1);

DiscreteSignedMeasure from_arrays(const std::array<double, 3>& x, const std::array<double, 3>& w) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < 3; ++i) atoms.push_back({{x[i]}, w[i]});
  return DiscreteSignedMeasure::construct(R1, atoms);
}
}  // namespace

TEST(BoundedLipschitz, TwoDiracsMatchClosedForm) {
  const std::pair<double, double> cases[] = {{0.5, fixtures::bl_two_diracs_t0p5},
                                             {1.0, fixtures::bl_two_diracs_t1},
                                             {2.0, fixtures::bl_two_diracs_t2},
                                             {10.0, fixtures::bl_two_diracs_t10}};
  for (auto [t, want] : cases) {
    const double v = bounded_lipschitz(DiscreteSignedMeasure::dirac(R1, {0.0}), DiscreteSignedMeasure::dirac(R1, {t}));
    EXPECT_NEAR(v, want, 1e-8) << t;
    EXPECT_NEAR(bounded_lipschitz_two_diracs(t), want, 1e-15);
  }
}

TEST(BoundedLipschitz, ThreeAtomPairAgainstExternalSolver) {
  const auto p = from_arrays(fixtures::bl_p_points, fixtures::bl_p_weights);
  const auto q = from_arrays(fixtures::bl_q_points, fixtures::bl_q_weights);
  EXPECT_TRUE(support::close_rel(bounded_lipschitz(p, q), fixtures::bl_three_atom_pair, 1e-10));
}

TEST(BoundedLipschitz, Errors) {
  EXPECT_THROW(bounded_lipschitz(DiscreteSignedMeasure::dirac(R1, {0.0}, 2.0), DiscreteSignedMeasure::dirac(R1, {1.0})),
               DomainError);
  const Space T1 = Space::torus(1);
  EXPECT_THROW(bounded_lipschitz(DiscreteSignedMeasure::dirac(T1, {0.0}), DiscreteSignedMeasure::dirac(T1, {1.0})),
               DomainError);
}

TEST(BoundedLipschitz, MonotoneInSeparationAndBounded) {
  double last = 0;
  for (double t = 0.1; t < 40; t *= 1.7) {
    const double v = bounded_lipschitz(DiscreteSignedMeasure::dirac(R1, {0.0}), DiscreteSignedMeasure::dirac(R1, {t}));
    EXPECT_GT(v, last);
    EXPECT_LE(v, 2.0);
    last = v;
  }
}

TEST(BoundedLipschitzProperties, MetricAxioms) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const Space s = Space::euclidean(1 + trial % 2);
    const auto p = support::random_probability(rng, s, 4, -2, 2);
    const auto q = support::random_probability(rng, s, 5, -2, 2);
    const auto r = support::random_probability(rng, s, 3, -2, 2);
    const double pq = bounded_lipschitz(p, q), qp = bounded_lipschitz(q, p);
    EXPECT_NEAR(pq, qp, 1e-10);
    EXPECT_GT(pq, 0.0);
    EXPECT_NEAR(bounded_lipschitz(p, p), 0.0, 1e-12);
    EXPECT_LE(pq, bounded_lipschitz(p, r) + bounded_lipschitz(r, q) + 1e-10);
    EXPECT_LE(pq, 2.0);
  }
}

TEST(BoundedLipschitzProperties, DominatesOneLipschitzProbe) {
  // f(x) = clamp(x - c) scaled to ||f||_inf + Lip = 1 is admissible
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = support::random_probability(rng, R1, 5, -2, 2);
    const auto q = support::random_probability(rng, R1, 5, -2, 2);
    auto f = [](double x) { return 0.5 * std::clamp(x, -1.0, 1.0); };
    double gap = 0;
    for (const Atom& a : p.atoms()) gap += a.w * f(a.x[0]);
    for (const Atom& a : q.atoms()) gap -= a.w * f(a.x[0]);
    EXPECT_GE(bounded_lipschitz(p, q), std::abs(gap) - 1e-12);
  }
}

TEST(ConvergenceSpec, Validation) {
  EXPECT_THROW(ConvergenceSpec::shrink_to_dirac(R1, {0.0}, {0.5, 0.5}), DomainError);
  EXPECT_THROW(ConvergenceSpec::moving_atom(R1, {0.0}, {0.1, 0.5}), DomainError);
  EXPECT_THROW(ConvergenceSpec::shrink_to_dirac(R1, {0.0}, {}), DomainError);
  EXPECT_THROW(ConvergenceSpec::empirical(DiscreteSignedMeasure::dirac(R1, {0.0}), 1, {10, 5}), DomainError);
  EXPECT_THROW(ConvergenceSpec::empirical(DiscreteSignedMeasure::dirac(R1, {0.0}, 0.5), 1, {10}), DomainError);
  EXPECT_THROW(ConvergenceSpec::shrink_to_dirac(Space::torus(1), {0.0}, {0.5}), DomainError);
}

TEST(ConvergenceSpec, ElementsAreProbabilities) {
  const auto target = DiscreteSignedMeasure::construct(R1, {{{0.0}, 0.3}, {{1.0}, 0.7}});
  const auto specs = {ConvergenceSpec::shrink_to_dirac(Space::euclidean(2), {0.0, 1.0}, {0.5, 0.25}),
                      ConvergenceSpec::moving_atom(R1, {0.0}, {0.5, 0.25, 0.1}),
                      ConvergenceSpec::empirical(target, 9, {5, 50, 500})};
  for (const auto& s : specs) {
    for (std::size_t n = 0; n < s.length(); ++n) {
      const auto [param, mu] = s.element(n);
      EXPECT_TRUE(mu.is_probability()) << s.kind_name();
      EXPECT_EQ(mu.space(), s.target.space());
    }
    EXPECT_THROW(s.element(s.length()), DomainError);
  }
}

TEST(ConvergenceSpec, EmpiricalIsReproducible) {
  const auto target = DiscreteSignedMeasure::construct(R1, {{{0.0}, 0.3}, {{1.0}, 0.7}});
  const auto a = ConvergenceSpec::empirical(target, 17, {100}).element(0).second;
  const auto b = ConvergenceSpec::empirical(target, 17, {100}).element(0).second;
  const auto c = ConvergenceSpec::empirical(target, 18, {100}).element(0).second;
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == c);
  // support of an empirical measure stays inside the target's
  for (const Atom& at : a.atoms()) EXPECT_TRUE(at.x[0] == 0.0 || at.x[0] == 1.0);
}

TEST(Experiment, ShrinkRowsMatchDoubleSum) {
  const auto spec = ConvergenceSpec::shrink_to_dirac(R1, {0.0}, {0.5, 0.25, 0.125});
  const auto rep = run_convergence(gauss, spec);
  ASSERT_EQ(rep.rows.size(), 3u);
  const double want[] = {fixtures::shrink_gamma_row1, fixtures::shrink_gamma_row2, fixtures::shrink_gamma_row3};
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(support::close_rel(rep.rows[i].gamma_k, want[i], 1e-9)) << i;
    // f = s at +-eps, s - L eps at the center, s + L = 1: 2 eps / (2 + eps)
    const double eps = rep.rows[i].param;
    EXPECT_NEAR(rep.rows[i].bounded_lipschitz, 2 * eps / (2 + eps), 1e-8);
  }
  EXPECT_EQ(comonotonicity_check(rep), Verdict::Holds);
}

TEST(Experiment, MovingRowsMatchClosedForms) {
  const auto spec = ConvergenceSpec::moving_atom(R1, {0.0}, {1.0, 0.5, 0.25});
  const auto rep = run_convergence(gauss, spec);
  EXPECT_TRUE(support::close_rel(rep.rows[1].gamma_k, fixtures::moving_gamma_t0p5, 1e-9));
  EXPECT_TRUE(support::close_rel(rep.rows[2].gamma_k, fixtures::moving_gamma_t0p25, 1e-9));
  for (const auto& r : rep.rows) EXPECT_NEAR(r.bounded_lipschitz, bounded_lipschitz_two_diracs(r.param), 1e-8);
}

TEST(Experiment, NonCharacteristicKernelNeedsNegativeControlFlag) {
  const Kernel c(family::Constant{1.0}, R1);
  const auto spec = ConvergenceSpec::moving_atom(R1, {0.0}, {1.0, 0.5, 0.25, 0.125});
  EXPECT_THROW(run_convergence(c, spec), DomainError);
  const auto rep = run_convergence(c, spec, true);
  for (const auto& r : rep.rows) EXPECT_EQ(r.gamma_k, 0.0);
  EXPECT_EQ(comonotonicity_check(rep), Verdict::Fails);
}

TEST(Experiment, EmpiricalTrendsDown) {
  const auto target = DiscreteSignedMeasure::construct(R1, {{{-1.0}, 0.25}, {{0.0}, 0.25}, {{2.0}, 0.5}});
  const auto rep = run_convergence(gauss, ConvergenceSpec::empirical(target, 3, {10, 100, 1000, 10000}));
  EXPECT_LT(rep.rows.back().gamma_k, rep.rows.front().gamma_k);
  EXPECT_LT(rep.rows.back().bounded_lipschitz, rep.rows.front().bounded_lipschitz);
  for (const auto& r : rep.rows) {
    EXPECT_GE(r.gamma_k, 0.0);
    EXPECT_GE(r.bounded_lipschitz, 0.0);
  }
}

TEST(Experiment, CsvRoundTrip) {
  const auto rep = run_convergence(gauss, ConvergenceSpec::shrink_to_dirac(R1, {0.0}, {0.5, 0.25, 0.125, 0.0625}));
  std::stringstream ss;
  write_report_csv(ss, rep);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "param,gamma_k,bounded_lipschitz");
  const auto back = read_report_csv(ss);
  ASSERT_EQ(back.rows.size(), rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].param, rep.rows[i].param);
    EXPECT_EQ(back.rows[i].gamma_k, rep.rows[i].gamma_k);
    EXPECT_EQ(back.rows[i].bounded_lipschitz, rep.rows[i].bounded_lipschitz);
  }
  std::stringstream bad("param,gamma\n1,2\n");
  EXPECT_THROW(read_report_csv(bad), DomainError);
}

TEST(Experiment, ComonotonicityNeedsThreeRows) {
  ExperimentReport r;
  r.rows = {{1, 1, 1}, {0.5, 0.5, 0.5}};
  EXPECT_THROW(comonotonicity_check(r), DomainError);
  r.rows.push_back({0.25, 0.6, 0.2});
  r.rows.push_back({0.1, 0.7, 0.1});
  EXPECT_EQ(comonotonicity_check(r), Verdict::Fails);
}
