#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "gribov/studies.hpp"
#include "gribov/verify.hpp"

using namespace gribov;

namespace {

void expect_flags_recomputable(const StudyReport& r) {
  for (const auto& f : r.flags) EXPECT_EQ(r.recompute(f), f.value) << f.name;
}

void expect_ordered(const StudyReport& r) {
  const auto x = r.column(r.parameter);
  for (std::size_t i = 1; i < x.size(); ++i) EXPECT_GT(x[i], x[i - 1]);
}

bool flag(const StudyReport& r, const std::string& name) {
  for (const auto& f : r.flags) {
    if (f.name == name) return f.value;
  }
  ADD_FAILURE() << "no flag " << name;
  return false;
}

}  // namespace

TEST(FlagRules, PairwiseComparisons) {
  EXPECT_TRUE(evaluate_rule(FlagRule::StrictlyIncreasing, {1, 2, 3}));
  EXPECT_FALSE(evaluate_rule(FlagRule::StrictlyIncreasing, {1, 2, 2}));
  EXPECT_TRUE(evaluate_rule(FlagRule::StrictlyDecreasing, {3, 2, 1}));
  EXPECT_FALSE(evaluate_rule(FlagRule::StrictlyDecreasing, {3, 3, 1}));
  EXPECT_TRUE(evaluate_rule(FlagRule::NonIncreasing, {3, 3, 1}));
  EXPECT_TRUE(evaluate_rule(FlagRule::NonIncreasing, {1.0, 1.0 + 0.5e-12}));
  EXPECT_FALSE(evaluate_rule(FlagRule::NonIncreasing, {1.0, 1.0 + 2e-12}));
  EXPECT_TRUE(evaluate_rule(FlagRule::LastBelowFractionOfFirst, {1, 0.5, 0.2}, 0.25));
  EXPECT_FALSE(evaluate_rule(FlagRule::LastBelowFractionOfFirst, {1, 0.5, 0.3}, 0.25));
  EXPECT_TRUE(evaluate_rule(FlagRule::AllZero, {0, 0}));
  EXPECT_FALSE(evaluate_rule(FlagRule::AllPositive, {1, 0}));
  EXPECT_FALSE(evaluate_rule(FlagRule::StrictlyIncreasing, {}));
}

TEST(SweepMu, SigmaIncreasesOmegaDecreases) {
  const auto r = sweep_mu(1, 1, default_mu_grid());
  ASSERT_EQ(r.rows.size(), 4u);
  expect_ordered(r);
  expect_flags_recomputable(r);
  EXPECT_TRUE(flag(r, "monotone_sigma_increasing"));
  EXPECT_TRUE(flag(r, "monotone_omega_decreasing"));
  EXPECT_TRUE(flag(r, "kernel_non_increasing"));
  EXPECT_TRUE(r.all_flags());
  const auto om = r.column("omega"), sg = r.column("sigma");
  for (std::size_t i = 0; i < om.size(); ++i) EXPECT_EQ(sg[i], 1.0 / om[i]);
}

TEST(SweepMu, RejectsBadGrids) {
  EXPECT_THROW(sweep_mu(1, 1, {1, 0.5}), ValidationError);
  EXPECT_THROW(sweep_mu(1, 1, {1, 1}), ValidationError);
  EXPECT_THROW(sweep_mu(1, 1, {-1, 1}), ValidationError);
  EXPECT_THROW(sweep_mu(1, 1, {}), ValidationError);
}

TEST(SweepMu, NamesOffendingMu) {
  try {
    sweep_mu(1, 1, {0.5, 1.0}, {200, kDefaultTruncationEps, {1e-12, 1}});
    FAIL() << "expected failure";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("mu=0.5"), std::string::npos);
  }
}

TEST(LambdaPrimeLimit, DistancesShrinkTowardLimitOperator) {
  const auto r = lambda_prime_limit(1, 1, default_rho_prime_grid());
  expect_ordered(r);
  expect_flags_recomputable(r);
  EXPECT_TRUE(flag(r, "omega_positive"));
  EXPECT_TRUE(flag(r, "converging"));
  EXPECT_TRUE(flag(r, "final_below_quarter_of_first"));
  const auto d = r.column("omega_distance");
  EXPECT_LT(d.back(), 0.25 * d.front());
  // distance roughly halves per doubling of rho'
  EXPECT_NEAR(r.finding("loglog_slope"), 1.0, 0.2);
  EXPECT_GT(r.finding("omega0"), 0.0);
}

TEST(LambdaPrimeLimit, HsNormsApproachLimitKernelNorm) {
  const auto r = hs_limit_study(1, 1, default_rho_prime_grid());
  expect_ordered(r);
  expect_flags_recomputable(r);
  EXPECT_TRUE(flag(r, "hs_converging"));
  EXPECT_TRUE(flag(r, "omega_below_hs"));
}

TEST(LambdaPrimeLimit, OperatorConvergesInHsNorm) {
  const auto r = hs_limit_study(1, 1, default_rho_prime_grid());
  EXPECT_TRUE(flag(r, "hs_distance_decreasing"));
  const auto d = r.column("operator_hs_distance");
  EXPECT_TRUE(evaluate_rule(FlagRule::StrictlyDecreasing, d));
  EXPECT_LT(d.back(), 0.5 * d.front());
  // |‖K‖ - ‖K0‖| never exceeds ‖K - K0‖
  const auto nd = r.column("hs_distance");
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_LE(nd[i], d[i] * (1 + 1e-9));
}

TEST(KernelLimitStudy, PointwiseConvergence) {
  const auto r = kernel_limit_study(1, 1, default_rho_prime_grid(), default_sample_points());
  expect_ordered(r);
  expect_flags_recomputable(r);
  for (const auto& f : r.flags) {
    if (f.name.rfind("kernel_converging", 0) == 0 || f.name.rfind("weight_converging", 0) == 0) {
      EXPECT_TRUE(f.value) << f.name;
    }
  }
  EXPECT_TRUE(flag(r, "zero_row"));
  EXPECT_TRUE(flag(r, "kernel_non_increasing(0.5;0.7)"));
  const auto k = r.column("kernel(0.5;0.7)");
  EXPECT_LT(std::abs(k.back() - r.finding("kernel_limit(0.5;0.7)")), 0.01);
  const auto w = r.column("weight_distance(0.5)");
  EXPECT_LT(w.back(), 0.01);
}

TEST(KernelLimitStudy, RejectsPointsOutsideSmallestDomain) {
  EXPECT_THROW(kernel_limit_study(1, 1, {4, 8}, {{0.5, 4.0}}), ValidationError);
  EXPECT_THROW(kernel_limit_study(1, 1, {4, 8}, {{0.0, 1.0}}), ValidationError);
  EXPECT_THROW(kernel_limit_study(1, 1, {8, 4}, {{0.5, 1.0}}), ValidationError);
}

TEST(Analyticity, CauchyLoopResidual) {
  const auto r = analyticity_probe(1, 1);
  expect_ordered(r);
  expect_flags_recomputable(r);
  EXPECT_LT(r.finding("loop_residual"), 1e-10);
  EXPECT_LT(r.finding("cheb_tail_over_head"), 1e-8);
  EXPECT_TRUE(r.all_flags());
}

TEST(Analyticity, ConstantKernelLoopIsExactlyZero) {
  for (int k : {4, 16, 64, 66}) {
    EXPECT_EQ(cauchy_loop_residual([](std::complex<double>) { return std::complex<double>(2.5, -1.0); },
                                   {1.0, 0.0}, 0.5, k),
              0.0);
  }
}

TEST(Analyticity, LoopResidualDecaysWithPoints) {
  auto f = [](std::complex<double> mu) { return kernel_N_complex(0.5, 0.7, 1, mu, 1); };
  double prev = INFINITY;
  for (int k : {4, 8, 16}) {
    const double r = cauchy_loop_residual(f, {1.0, 0.0}, 0.5, k);
    EXPECT_LT(r, prev) << k;
    prev = r;
  }
  // a pole inside the loop is detected: 1/(mu - 1) has residue 2 pi i
  const double pole = cauchy_loop_residual([](std::complex<double> mu) { return 1.0 / (mu - 1.0); },
                                           {1.0, 0.0}, 0.5, 64);
  EXPECT_NEAR(pole, 2 * std::acos(-1.0) * 0.5, 1e-12);
}

TEST(Analyticity, ChebyshevCoefficientsOfPolynomial) {
  const int n = 16;
  std::vector<double> f(n);
  for (int j = 0; j < n; ++j) {
    const double x = std::cos(std::acos(-1.0) * (j + 0.5) / n);
    f[j] = 3 + 2 * x + (4 * x * x * x - 3 * x);  // 3 T0 + 2 T1 + T3
  }
  const auto c = chebyshev_coefficients(f);
  EXPECT_NEAR(c[0], 3, 1e-14);
  EXPECT_NEAR(c[1], 2, 1e-14);
  EXPECT_NEAR(c[3], 1, 1e-14);
  EXPECT_LT(chebyshev_tail_ratio(c), 1e-14);
}

TEST(Analyticity, RejectsLoopLeavingRegion) {
  AnalyticityOptions a;
  a.mu0 = 0.3;
  a.radius = 0.5;
  EXPECT_THROW(analyticity_probe(1, 1, a), ValidationError);
  AnalyticityOptions odd;
  odd.loop_points = 63;
  EXPECT_THROW(analyticity_probe(1, 1, odd), ValidationError);
}

TEST(Studies, Deterministic) {
  const auto a = lambda_prime_limit(1, 1, {4, 8}), b = lambda_prime_limit(1, 1, {4, 8});
  EXPECT_EQ(a.rows, b.rows);
}
