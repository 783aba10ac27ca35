#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>

#include "gribov/errors.hpp"
#include "gribov/numeric.hpp"
#include "gribov/params.hpp"
#include "gribov/quadrature.hpp"
#include "gribov/theta.hpp"
#include "gribov/weights.hpp"

namespace gribov {

namespace detail {

inline void require_kernel_args(double y, double y1, double rp, const char* who) {
  if (!(y >= 0.0 && y <= rp && y1 > 0.0 && y1 <= rp)) {
    std::ostringstream os;
    os << who << ": (y, y1)=(" << y << ", " << y1 << ") outside [0, " << rp << "] x (0, " << rp
       << "]";
    throw ValidationError(os.str());
  }
}

}  // namespace detail

/// log N(y, y1) with N = sqrt(r(y1)) Theta(min(y, y1)) / (lambda y1), the
/// plain inverse kernel on [0, rho']^2.
inline double log_kernel_N(double y, double y1, const GribovParams& p, double tol = kThetaTol) {
  const double rp = detail::require_rho_prime(p, "kernel_N");
  detail::require_kernel_args(y, y1, rp, "kernel_N");
  const double upsilon = std::min(y, y1);
  if (upsilon == 0.0) return -kInf;
  if (y1 == rp) {
    if (y < rp) return *p.delta > 0.0 ? -kInf : kInf;
    // corner: sqrt(r(U)) Theta(U) -> rho'/delta as U -> rho'
    return *p.delta > 0.0 ? -std::log(p.lambda * *p.delta) : kInf;
  }
  return log_sqrt_weight_r(y1, rp, p.kappa()) + log_theta(upsilon, p, tol) -
         std::log(p.lambda * y1);
}

inline double kernel_N(double y, double y1, const GribovParams& p, double tol = kThetaTol) {
  return std::exp(log_kernel_N(y, y1, p, tol));
}

/// The other printed form of the same kernel,
///   (1/(lambda' y1)) e^{rho' y1} (rho' - y1)^delta int_0^min e^{-rho' s} (rho' - s)^-(delta+1) ds,
/// evaluated directly in the linear domain with the inner integral taken in s.
/// Shares no code with log_kernel_N beyond the adaptive integrator, so the two
/// check each other. Overflows for large rho'.
inline double kernel_N_linear(double y, double y1, const GribovParams& p, double tol = kThetaTol) {
  const double rp = detail::require_rho_prime(p, "kernel_N");
  detail::require_kernel_args(y, y1, rp, "kernel_N");
  const double upsilon = std::min(y, y1);
  if (upsilon == 0.0) return 0.0;
  const double delta = *p.delta;
  if (upsilon >= rp) return std::exp(-std::log(p.lambda * delta));
  auto integrand = [&](double s) { return std::exp(-rp * s) * std::pow(rp - s, -(delta + 1.0)); };
  const double inner = integrate_adaptive(integrand, 0.0, upsilon, {tol, 0.0, 4000}).value;
  return std::exp(rp * y1) * std::pow(rp - y1, delta) * inner / (p.lambda_prime * y1);
}

/// Kernel of the operator acting in L2([0, rho'], r dy):
/// N~(y, y1) = Theta(min(y, y1)) / (lambda y1 sqrt(r(y1))), so N~ r(y1) = N.
inline double kernel_N_tilde(double y, double y1, const GribovParams& p, double tol = kThetaTol) {
  const double rp = detail::require_rho_prime(p, "kernel_N_tilde");
  detail::require_kernel_args(y, y1, rp, "kernel_N_tilde");
  const double upsilon = std::min(y, y1);
  if (upsilon == 0.0) return 0.0;
  if (upsilon >= rp) return kInf;
  return std::exp(log_theta(upsilon, p, tol) - std::log(p.lambda * y1) -
                  log_sqrt_weight_r(y1, rp, p.kappa()));
}

/// log N_0(y, s) = log[(1/(lambda s)) e^{-s^2/2 - rho s} int_0^min(y,s) e^{u^2/2 + rho u} du],
/// the lambda' = 0 inverse kernel on the half line.
inline double log_kernel_limit(double y, double s, double mu, double lambda,
                               double tol = kThetaTol) {
  if (!(y >= 0.0 && s > 0.0)) throw ValidationError("kernel_limit: need y >= 0 and s > 0");
  if (!(lambda > 0.0)) throw ValidationError("kernel_limit: need lambda > 0");
  const double rho = mu / lambda;
  const double upsilon = std::min(y, s);
  if (upsilon == 0.0) return -kInf;
  return log_sqrt_weight_r_inf(s, rho) + log_theta_limit(upsilon, rho, tol) - std::log(lambda * s);
}

inline double kernel_limit(double y, double s, double mu, double lambda, double tol = kThetaTol) {
  return std::exp(log_kernel_limit(y, s, mu, lambda, tol));
}

/// Kernel in the unitarily equivalent unweighted frame.
///   NativeWeighted: T = sqrt(r(y)) Theta(min) / (lambda y1)        on [0, rho']^2
///   LimitWeighted:  T = N(y, y1) sqrt(r_inf(y) / r_inf(y1))         on [0, inf)^2,
///                   N extended by zero outside [0, rho']^2 (N_0 when lambda' = 0)
///   Plain:          T = N
inline double kernel_T(double y, double y1, const GribovParams& p, KernelFrame frame,
                       double tol = kThetaTol) {
  switch (frame) {
    case KernelFrame::NativeWeighted: {
      if (!p.has_four_coupling()) {
        throw ValidationError("kernel_T: native frame needs lambda_prime > 0");
      }
      const double rp = *p.rho_prime;
      detail::require_kernel_args(y, y1, rp, "kernel_T");
      const double upsilon = std::min(y, y1);
      if (upsilon == 0.0) return 0.0;
      if (upsilon >= rp) return kInf;
      return std::exp(log_sqrt_weight_r(y, rp, p.kappa()) + log_theta(upsilon, p, tol) -
                      std::log(p.lambda * y1));
    }
    case KernelFrame::LimitWeighted: {
      if (!(y >= 0.0 && y1 > 0.0)) throw ValidationError("kernel_T: need y >= 0 and y1 > 0");
      double log_n = 0.0;
      if (p.has_four_coupling()) {
        if (y > *p.rho_prime || y1 > *p.rho_prime) return 0.0;
        log_n = log_kernel_N(y, y1, p, tol);
      } else {
        log_n = log_kernel_limit(y, y1, p.mu, p.lambda, tol);
      }
      return std::exp(log_n + log_sqrt_weight_r_inf(y, p.rho) - log_sqrt_weight_r_inf(y1, p.rho));
    }
    case KernelFrame::Plain:
      if (p.has_four_coupling()) return kernel_N(y, y1, p, tol);
      return kernel_limit(y, y1, p.mu, p.lambda, tol);
  }
  return 0.0;
}

/// Plain kernel at complex intercept; the bracket [(rho'-y1)/(rho'-s)]^(rho rho')
/// continues analytically as exp(rho rho' log(base)) with base > 0.
inline std::complex<double> kernel_N_complex(double y, double y1, double lambda_prime,
                                             std::complex<double> mu, double lambda,
                                             double tol = kThetaTol) {
  if (!(lambda_prime > 0.0 && lambda > 0.0)) {
    throw ValidationError("kernel_N_complex: need lambda_prime > 0 and lambda > 0");
  }
  const double rp = lambda / lambda_prime;
  detail::require_kernel_args(y, y1, rp, "kernel_N_complex");
  if (y1 >= rp) throw ValidationError("kernel_N_complex: y1 must be < rho'");
  const double upsilon = std::min(y, y1);
  if (upsilon == 0.0) return 0.0;
  const std::complex<double> rho = mu / lambda;
  const std::complex<double> kappa = rho * rp - 1.0;
  const auto th = detail::theta_scaled(upsilon, rp, rho, tol);
  return std::exp(log_sqrt_weight_r(y1, rp, kappa) + th.log_scale - std::log(lambda * y1)) *
         th.value;
}

/// A kernel of the form K(y, t) = scale * L(y) G(min(y, t)) R(t) on
/// [0, upper]^2, held through the logs of its three factors. Every Gribov
/// kernel in every frame has this shape (G is Theta or its limit); the split
/// at the diagonal is what the split-panel integrals exploit.
struct SemiSeparableKernel {
  double upper = 0.0;
  double scale = 1.0;
  std::function<double(double)> log_left;
  std::function<double(double)> log_mid;
  std::function<double(double)> log_right;
  /// Profile phi used by the diagonal (singularity-subtraction) correction.
  std::function<double(double)> log_profile;

  [[nodiscard]] double operator()(double y, double t) const {
    return scale * std::exp(log_left(y) + log_mid(std::min(y, t)) + log_right(t));
  }
};

/// Factorisation of the Gribov kernel in a given frame. The correction
/// profile is phi(t) = t in the plain frame, carried into the other frames by
/// the same diagonal similarity as the kernel.
inline SemiSeparableKernel gribov_kernel(const GribovParams& p, KernelFrame frame, double upper,
                                         double tol = kThetaTol) {
  if (!(upper > 0.0)) throw ValidationError("gribov_kernel: upper must be > 0");
  SemiSeparableKernel k;
  k.upper = upper;
  k.scale = 1.0 / p.lambda;
  const double rho = p.rho;
  auto log_t = [](double t) { return std::log(t); };
  if (p.has_four_coupling()) {
    const double rp = *p.rho_prime;
    if (upper > rp * (1.0 + 1e-12)) {
      throw ValidationError("gribov_kernel: domain extends past rho' (kernel vanishes there)");
    }
    const double kappa = p.kappa();
    auto ls = [rp, kappa](double t) { return log_sqrt_weight_r(t, rp, kappa); };
    k.log_mid = [p, tol](double u) { return log_theta(u, p, tol); };
    switch (frame) {
      case KernelFrame::NativeWeighted:
        k.log_left = ls;
        k.log_right = [](double t) { return -std::log(t); };
        k.log_profile = [ls](double t) { return std::log(t) + ls(t); };
        break;
      case KernelFrame::LimitWeighted:
        k.log_left = [rho](double y) { return log_sqrt_weight_r_inf(y, rho); };
        k.log_right = [ls, rho](double t) {
          return ls(t) - log_sqrt_weight_r_inf(t, rho) - std::log(t);
        };
        k.log_profile = [rho](double t) { return std::log(t) + log_sqrt_weight_r_inf(t, rho); };
        break;
      case KernelFrame::Plain:
        k.log_left = [](double) { return 0.0; };
        k.log_right = [ls](double t) { return ls(t) - std::log(t); };
        k.log_profile = log_t;
        break;
    }
  } else {
    if (frame == KernelFrame::NativeWeighted) {
      throw ValidationError("native frame needs lambda_prime > 0; use the limit frame");
    }
    k.log_mid = [rho, tol](double u) { return log_theta_limit(u, rho, tol); };
    if (frame == KernelFrame::LimitWeighted) {
      k.log_left = [rho](double y) { return log_sqrt_weight_r_inf(y, rho); };
      k.log_right = [](double t) { return -std::log(t); };
      k.log_profile = [rho](double t) { return std::log(t) + log_sqrt_weight_r_inf(t, rho); };
    } else {
      k.log_left = [](double) { return 0.0; };
      k.log_right = [rho](double t) { return log_sqrt_weight_r_inf(t, rho) - std::log(t); };
      k.log_profile = log_t;
    }
  }
  return k;
}

}  // namespace gribov
