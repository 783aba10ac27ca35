#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "gribov/kernels.hpp"
#include "gribov/params.hpp"
#include "gribov/theta.hpp"
#include "gribov/verify.hpp"
#include "gribov/weights.hpp"
#include "oracles.hpp"

using namespace gribov;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const std::vector<double> kRhoPrimes{4.0, 8.0, 16.0, 32.0};

}  // namespace

TEST(DeriveParams, DirectSubstitution) {
  const auto a = derive_params(1, 2, 1);
  EXPECT_EQ(*a.rho_prime, 1.0);
  EXPECT_EQ(a.rho, 2.0);
  EXPECT_EQ(*a.delta, 2.0);
  const auto b = derive_params(1, 1, 1);
  EXPECT_EQ(*b.rho_prime, 1.0);
  EXPECT_EQ(*b.delta, 1.0);
  const auto c = derive_params(0.25, 1, 1);
  EXPECT_EQ(*c.rho_prime, 4.0);
  EXPECT_EQ(c.rho, 1.0);
  EXPECT_EQ(*c.delta, 19.0);
  EXPECT_FALSE(c.out_of_theory);
}

TEST(DeriveParams, ZeroFourCouplingLeavesRhoPrimeAbsent) {
  const auto p = derive_params(0, 1, 1);
  EXPECT_FALSE(p.rho_prime.has_value());
  EXPECT_FALSE(p.delta.has_value());
  EXPECT_FALSE(p.has_four_coupling());
  EXPECT_THROW(weight_r(0.5, p), ValidationError);
  EXPECT_THROW(kernel_T(0.5, 0.5, p, KernelFrame::NativeWeighted), ValidationError);
  EXPECT_GT(kernel_T(0.5, 0.7, p, KernelFrame::LimitWeighted), 0.0);
}

TEST(DeriveParams, RejectsInvalidCouplings) {
  EXPECT_THROW(derive_params(1, 1, 0), ValidationError);
  EXPECT_THROW(derive_params(1, 1, -1), ValidationError);
  EXPECT_THROW(derive_params(-0.1, 1, 1), ValidationError);
  EXPECT_THROW(derive_params(1, std::nan(""), 1), ValidationError);
  EXPECT_THROW(derive_params(INFINITY, 1, 1), ValidationError);
}

TEST(DeriveParams, OutOfTheoryNeedsExplicitOverride) {
  // delta = 1 * (-0.5 + 1) - 1 < 0
  EXPECT_THROW(derive_params(1, -0.5, 1), ValidationError);
  EXPECT_THROW(derive_params(1, 0.0, 1), ValidationError);
  const auto p = derive_params(1, -0.5, 1, ParamPolicy::AllowOutOfTheory);
  EXPECT_TRUE(p.out_of_theory);
  EXPECT_DOUBLE_EQ(*p.delta, -0.5);
}

TEST(WeightR, EndpointValues) {
  const auto p = derive_params(1, 1, 1);
  EXPECT_EQ(weight_r(0.0, p), 1.0);
  EXPECT_EQ(weight_r(1.0, p), 0.0);
  EXPECT_THROW(weight_r(-1e-9, p), ValidationError);
  EXPECT_THROW(weight_r(1.0 + 1e-9, p), ValidationError);
}

TEST(WeightR, MatchesExtendedPrecision) {
  const auto q = derive_params(0.1, 1, 1);    // rho' = 10, rho = 1
  const auto p = derive_params(0.1, 0.1, 1);  // rho' = 10, rho = 0.1
  EXPECT_LT(rel(weight_r(0.5, q), oracle::weight_r(0.5, 0.1, 1, 1)), 1e-12);
  for (double y : {0.01, 1.0, 3.0, 7.5, 9.9}) {
    EXPECT_LT(rel(weight_r(y, q), oracle::weight_r(y, 0.1, 1, 1)), 1e-12) << y;
    EXPECT_LT(rel(weight_r(y, p), oracle::weight_r(y, 0.1, 0.1, 1)), 1e-12) << y;
  }
}

TEST(WeightR, LogFormMatchesPrintedExpression) {
  const auto p = derive_params(0.25, 2, 1);
  for (double y : {0.1, 1.0, 2.5, 3.9}) {
    const double printed = 2 * 4.0 * y + 2 * *p.delta * std::log1p(-y / 4.0);
    EXPECT_LT(rel(log_weight_r(y, p), printed), 1e-13) << y;
    EXPECT_LT(rel(weight_r(y, p), weight_r_linear(y, p)), 1e-12) << y;
  }
}

TEST(WeightRInf, ClosedForm) {
  EXPECT_EQ(weight_r_inf(0.0, 1.0), 1.0);
  EXPECT_LT(rel(weight_r_inf(1.0, 1.0), std::exp(-3.0)), 1e-15);
  EXPECT_THROW(weight_r_inf(-0.1, 1.0), ValidationError);
}

TEST(WeightRInf, FiniteWeightApproachesLimit) {
  for (double y : {0.2, 0.5, 1.0, 2.0}) {
    double prev = INFINITY;
    for (double rp : kRhoPrimes) {
      const double d = std::abs(weight_r(y, derive_params(1 / rp, 1, 1)) - weight_r_inf(y, 1.0));
      EXPECT_LT(d, prev) << "y=" << y << " rho'=" << rp;
      prev = d;
    }
    EXPECT_LT(prev, 1e-2);
  }
}

TEST(Theta, VanishesAtZero) { EXPECT_EQ(theta(0.0, derive_params(1, 1, 1)), 0.0); }

TEST(Theta, LinearNearZero) {
  for (const auto& t : default_params_grid()) {
    const auto p = derive_params(t.lambda_prime, t.mu, t.lambda);
    const double u = 1e-6 * *p.rho_prime;
    EXPECT_LT(std::abs(theta(u, p) / u - 1.0), 1e-4);
  }
}

TEST(Theta, MatchesSimpsonOracle) {
  const auto p = derive_params(1, 1, 1);
  const double ref = oracle::simpson([](double s) { return std::exp(-s) / ((1 - s) * (1 - s)); },
                                     0.0, 0.5, 1e-12);
  EXPECT_LT(std::abs(theta(0.5, p) - ref), 1e-10);
  EXPECT_LT(rel(theta(0.5, p), ref), 1e-10);
}

TEST(Theta, MatchesSimpsonOracleForLargeRhoPrime) {
  for (double rp : {8.0, 32.0}) {
    const auto p = derive_params(1 / rp, 1, 1);
    for (double u : {0.3, 1.0, 2.0}) {
      EXPECT_LT(rel(theta(u, p), oracle::theta(u, 1 / rp, 1, 1)), 1e-10) << rp << " " << u;
    }
  }
}

TEST(Theta, SeriesBranchContinuous) {
  const auto p = derive_params(0.5, 2, 1);
  const double cut = kThetaSeriesCutoff * *p.rho_prime;
  // theta is ~ upsilon near 0, so compare theta / upsilon across the switch
  const double a = cut * (1 - 1e-9), b = cut * (1 + 1e-9);
  EXPECT_LT(rel(theta(a, p) / a, theta(b, p) / b), 1e-12);
}

TEST(Theta, StrictlyIncreasing) {
  const auto p = derive_params(0.5, 1, 1);
  double prev = 0.0;
  for (int i = 1; i < 200; ++i) {
    const double v = theta(2.0 * i / 200.0, p);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Theta, EndpointGrowthMatchesInversePower) {
  const auto changes = theta_endpoint_changes(derive_params(1, 1, 1));
  ASSERT_EQ(changes.size(), 3u);
  EXPECT_LT(changes[1], changes[0]);
  EXPECT_LT(changes[2], changes[1]);
  EXPECT_LT(changes.back(), 0.01);
}

TEST(Theta, LogVariantSurvivesLargeRhoPrime) {
  const auto p = derive_params(1.0 / 64, 1, 1);  // delta ~ 4159
  const double v = log_theta(63.9, p);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(v, 700.0);  // exp would overflow
}

TEST(Theta, RejectsUpsilonAtOrBeyondRhoPrime) {
  const auto p = derive_params(1, 1, 1);
  EXPECT_THROW(theta(1.0, p), ValidationError);
  EXPECT_THROW(theta(-0.1, p), ValidationError);
}

TEST(KernelN, ZeroRow) {
  for (const auto& t : default_params_grid()) {
    const auto p = derive_params(t.lambda_prime, t.mu, t.lambda);
    for (double y1 : {0.01, 0.5, *p.rho_prime * 0.99, *p.rho_prime}) {
      EXPECT_EQ(kernel_N(0.0, y1, p), 0.0);
      EXPECT_EQ(kernel_N_tilde(0.0, y1, p), 0.0);
      EXPECT_EQ(kernel_T(0.0, y1, p, KernelFrame::NativeWeighted), 0.0);
      EXPECT_EQ(kernel_T(0.0, y1, p, KernelFrame::LimitWeighted), 0.0);
      EXPECT_EQ(kernel_T(0.0, y1, p, KernelFrame::Plain), 0.0);
    }
  }
}

TEST(KernelN, PrintedFormsAgree) {
  for (const ParamsTriple t : {ParamsTriple{1, 1, 1}, ParamsTriple{0.5, 2, 1}, ParamsTriple{0.25, 1, 1}}) {
    EXPECT_LT(kernel_form_disagreement(derive_params(t.lambda_prime, t.mu, t.lambda), 10000), 1e-12);
  }
}

TEST(KernelN, CompositionOfIndependentFactors) {
  const auto p = derive_params(1, 1, 1);
  const double th = oracle::theta(0.25, 1, 1, 1);
  const double ref = 1.0 / 0.25 * std::exp(0.25) * 0.75 * th;
  EXPECT_LT(rel(kernel_N(0.5, 0.25, p), ref), 1e-9);
}

TEST(KernelN, BoundaryBehaviour) {
  const auto p = derive_params(1, 1, 1);
  EXPECT_EQ(kernel_N(0.5, 1.0, p), 0.0);
  // corner value 1/(lambda delta), approached continuously
  EXPECT_LT(rel(kernel_N(1.0, 1.0, p), 1.0), 1e-15);
  EXPECT_LT(rel(kernel_N(1 - 1e-7, 1 - 1e-7, p), 1.0), 1e-5);
  EXPECT_THROW(kernel_N(0.5, 0.0, p), ValidationError);
  EXPECT_THROW(kernel_N(1.1, 0.5, p), ValidationError);
  EXPECT_THROW(kernel_N(0.5, 1.1, p), ValidationError);
  EXPECT_THROW(kernel_N(-0.1, 0.5, p), ValidationError);
}

TEST(KernelN, SmallY1NoCancellation) {
  const auto p = derive_params(1, 1, 1);
  // y1 < y, y1 -> 0: Theta(y1)/y1 -> 1 so N -> sqrt(r(0)) / lambda = 1
  EXPECT_LT(std::abs(kernel_N(0.5, 1e-12, p) - 1.0), 1e-10);
  EXPECT_LT(std::abs(kernel_N(0.5, 1e-300, p) - 1.0), 1e-10);
}

TEST(KernelN, LogDomainSurvivesLargeRhoPrime) {
  const auto p = derive_params(1.0 / 32, 1, 1);
  EXPECT_TRUE(std::isfinite(log_kernel_N(31.0, 31.5, p)));
  EXPECT_GE(kernel_N(31.0, 31.5, p), 0.0);
}

TEST(KernelNTilde, WeightedIdentity) {
  const auto p = derive_params(0.5, 2, 1);
  for (std::size_t i = 1; i <= 2000; ++i) {
    const double y = 1.99 * halton(i, 2), y1 = 0.01 + 1.98 * halton(i, 3);
    const double n = kernel_N(y, y1, p);
    EXPECT_LE(std::abs(kernel_N_tilde(y, y1, p) * weight_r(y1, p) - n), 1e-12 * n) << y << " " << y1;
  }
}

TEST(KernelNTilde, CompositionOfIndependentFactors) {
  const auto p = derive_params(1, 1, 1);
  const double th = oracle::theta(0.25, 1, 1, 1);
  const double ref = th / (0.25 * std::sqrt(oracle::weight_r(0.25, 1, 1, 1)));
  EXPECT_LT(rel(kernel_N_tilde(0.5, 0.25, p), ref), 1e-9);
}

TEST(KernelT, SquareMatchesWeightedTildeSquare) {
  const auto p = derive_params(1, 1, 1);
  for (std::size_t i = 1; i <= 2000; ++i) {
    const double y = 0.999 * halton(i, 2), y1 = 0.001 + 0.998 * halton(i, 3);
    const double t = kernel_T(y, y1, p, KernelFrame::NativeWeighted);
    const double nt = kernel_N_tilde(y, y1, p);
    const double alt = nt * nt * weight_r(y, p) * weight_r(y1, p);
    EXPECT_LE(std::abs(t * t - alt), 1e-12 * std::max(alt, 1e-300));
  }
}

TEST(KernelT, FramesAreDiagonalSimilarities) {
  const auto p = derive_params(0.5, 1, 1);
  for (std::size_t i = 1; i <= 500; ++i) {
    const double y = 0.01 + 1.98 * halton(i, 2), y1 = 0.01 + 1.98 * halton(i, 3);
    const double plain = kernel_T(y, y1, p, KernelFrame::Plain);
    const double native = kernel_T(y, y1, p, KernelFrame::NativeWeighted);
    const double limit = kernel_T(y, y1, p, KernelFrame::LimitWeighted);
    const double dn = std::sqrt(weight_r(y, p) / weight_r(y1, p));
    const double dl = std::sqrt(weight_r_inf(y, 1.0) / weight_r_inf(y1, 1.0));
    EXPECT_LE(std::abs(native - plain * dn), 1e-12 * native);
    EXPECT_LE(std::abs(limit - plain * dl), 1e-12 * limit);
  }
  EXPECT_EQ(kernel_T(2.5, 1.0, p, KernelFrame::LimitWeighted), 0.0);  // beyond rho'
}

TEST(KernelLimit, VanishesAtZeroAndRejectsNegative) {
  EXPECT_EQ(kernel_limit(0.0, 0.7, 1, 1), 0.0);
  EXPECT_THROW(kernel_limit(-0.1, 0.7, 1, 1), ValidationError);
  EXPECT_THROW(kernel_limit(0.5, 0.0, 1, 1), ValidationError);
}

TEST(KernelLimit, MatchesIndependentQuadrature) {
  const double inner =
      oracle::simpson([](double u) { return std::exp(0.5 * u * u + u); }, 0.0, 0.25, 1e-13);
  const double ref = 1.0 / 0.25 * std::exp(-0.5 * 0.0625 - 0.25) * inner;
  EXPECT_LT(rel(kernel_limit(0.5, 0.25, 1, 1), ref), 1e-10);
}

TEST(KernelLimit, FiniteKernelApproachesLimit) {
  for (const auto& [y, y1] : default_sample_points()) {
    double prev = INFINITY;
    for (double rp : kRhoPrimes) {
      const double d = std::abs(kernel_N(y, y1, derive_params(1 / rp, 1, 1)) - kernel_limit(y, y1, 1, 1));
      EXPECT_LT(d, prev) << y << "," << y1 << " rho'=" << rp;
      prev = d;
    }
  }
}

TEST(KernelN, NonIncreasingInRhoPrimeAtReferencePoint) {
  double prev = INFINITY;
  for (double rp : kRhoPrimes) {
    const double v = kernel_N(0.5, 0.7, derive_params(1 / rp, 1, 1));
    EXPECT_LE(v, prev);
    prev = v;
  }
}

// Pointwise monotonicity of the plain kernel in rho' across the common domain
// [0, 4]^2. Fails for y1 >~ 1.3 with y1 > y: there sqrt(r(y1)) grows toward
// its limit e^{-y1^2/2 - rho y1} from below.
TEST(KernelN, NonIncreasingInRhoPrimeAcrossCommonDomain) {
  int violations = 0;
  for (double y = 0.1; y < 3.95; y += 0.2) {
    for (double y1 = 0.1; y1 < 3.95; y1 += 0.2) {
      double prev = INFINITY;
      for (double rp : kRhoPrimes) {
        const double v = kernel_N(y, y1, derive_params(1 / rp, 1, 1));
        if (v > prev * (1 + 1e-12)) {
          ++violations;
          break;
        }
        prev = v;
      }
    }
  }
  EXPECT_EQ(violations, 0) << "grid points where N increases with rho'";
}

TEST(KernelN, NonIncreasingInMu) {
  const std::vector<double> mus{0.5, 1.0, 2.0, 4.0};
  for (std::size_t i = 1; i <= 300; ++i) {
    const double y = 0.999 * halton(i, 2), y1 = 0.001 + 0.998 * halton(i, 3);
    double prev = INFINITY;
    for (double mu : mus) {
      const double v = kernel_N(y, y1, derive_params(1, mu, 1));
      EXPECT_LE(v, prev * (1 + 1e-12)) << y << " " << y1 << " mu=" << mu;
      prev = v;
    }
  }
}

TEST(KernelN, MuBracketAtMostOneAndShrinking) {
  // [(rho' - y1)/(rho' - s)]^(rho rho') for s <= y1
  const double rp = 2.0, y1 = 1.5;
  for (double s : {0.0, 0.5, 1.0, 1.5}) {
    double prev = 1.0;
    for (double mu : {0.5, 1.0, 2.0, 4.0}) {
      const double b = std::pow((rp - y1) / (rp - s), mu * rp);
      EXPECT_LE(b, prev);
      prev = b;
    }
  }
}

TEST(KernelN, AllKernelsNonnegative) {
  for (const auto& t : default_params_grid()) {
    const auto p = derive_params(t.lambda_prime, t.mu, t.lambda);
    const double rp = *p.rho_prime;
    for (std::size_t i = 1; i <= 200; ++i) {
      const double y = rp * halton(i, 2), y1 = rp * (0.001 + 0.998 * halton(i, 3));
      EXPECT_GE(kernel_N(y, y1, p), 0.0);
      EXPECT_GE(kernel_N_tilde(y, y1, p), 0.0);
      EXPECT_GE(kernel_T(y, y1, p, KernelFrame::NativeWeighted), 0.0);
      EXPECT_GE(kernel_T(y, y1, p, KernelFrame::LimitWeighted), 0.0);
    }
  }
}

TEST(KernelNComplex, RealAxisMatchesRealKernel) {
  const auto p = derive_params(1, 1.3, 1);
  for (const auto& [y, y1] : std::vector<std::pair<double, double>>{{0.5, 0.7}, {0.8, 0.2}, {0.3, 0.9}}) {
    const auto z = kernel_N_complex(y, y1, 1, {1.3, 0.0}, 1);
    EXPECT_LT(rel(z.real(), kernel_N(y, y1, p)), 1e-12);
    EXPECT_EQ(z.imag(), 0.0);
  }
}

TEST(KernelNComplex, ComplexThetaAgreesWithDirectQuadrature) {
  const std::complex<double> mu{1.2, 0.4};
  const double rp = 1.0;
  const std::complex<double> delta = rp * (mu + rp) - 1.0;
  auto re = [&](double s) { return std::real(std::exp(-rp * s) * std::pow(1.0 - s / rp, -(delta + 1.0))); };
  auto im = [&](double s) { return std::imag(std::exp(-rp * s) * std::pow(1.0 - s / rp, -(delta + 1.0))); };
  const auto th = theta_complex(0.6, 1.0, mu, 1.0);
  EXPECT_LT(std::abs(th - std::complex<double>(oracle::simpson(re, 0, 0.6), oracle::simpson(im, 0, 0.6))),
            1e-10);
}
