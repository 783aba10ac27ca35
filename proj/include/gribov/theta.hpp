#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "gribov/errors.hpp"
#include "gribov/numeric.hpp"
#include "gribov/params.hpp"
#include "gribov/quadrature.hpp"

namespace gribov {

inline constexpr double kThetaTol = 1e-13;
/// Below upsilon < kThetaSeriesCutoff * rho' the three-term series is used.
inline constexpr double kThetaSeriesCutoff = 1e-8;

/// value * exp(log_scale).
template <class Scalar>
struct ScaledValue {
  double log_scale = 0.0;
  Scalar value{};
};

namespace detail {

// Theta(U) = int_0^U exp(-rho' s) (1 - s/rho')^-(delta+1) ds.
//
// With s = rho' (1 - e^-t) the integrand becomes exp(H(t)),
//   H(t) = log rho' + rho'^2 (expm1(-t) + t) + kappa t,   kappa = delta - rho'^2,
// which is smooth and convex on [0, -log(1 - U/rho')]: the endpoint blow-up of
// (1 - s/rho')^-(delta+1) turns into plain exponential growth in t. Convexity
// puts the maximum of Re H at an endpoint, which is the shift used below.
template <class Scalar>
ScaledValue<Scalar> theta_scaled(double upsilon, double rho_prime, Scalar rho, double tol,
                                 std::vector<Scalar>* panels = nullptr) {
  if (upsilon == 0.0) return {0.0, Scalar(0.0)};
  const Scalar kappa = rho * rho_prime - 1.0;
  if (upsilon < kThetaSeriesCutoff * rho_prime) {
    const Scalar c = (rho_prime * rho_prime + kappa + 1.0) / (2.0 * rho_prime * rho_prime);
    const Scalar v = upsilon * (1.0 + rho * upsilon / 2.0 +
                                (c + rho * rho / 2.0) * upsilon * upsilon / 3.0);
    if (panels) panels->assign(1, v);
    return {0.0, v};
  }
  const double t_end = -std::log1p(-upsilon / rho_prime);
  const double log_rp = std::log(rho_prime);
  const double rp2 = rho_prime * rho_prime;
  auto h = [&](double t) -> Scalar { return Scalar(log_rp + rp2 * expm1_neg_plus(t)) + kappa * t; };
  const double shift = std::max(real_part(h(0.0)), real_part(h(t_end)));
  auto f = [&](double t) -> Scalar { return std::exp(h(t) - shift); };
  auto res = integrate_adaptive(f, 0.0, t_end, {tol, 0.0, 4000});
  if (panels) *panels = std::move(res.panel_values);
  return {shift, res.value};
}

template <class Scalar>
ScaledValue<Scalar> theta_limit_scaled(double upsilon, Scalar rho, double tol,
                                       std::vector<Scalar>* panels = nullptr) {
  if (upsilon == 0.0) return {0.0, Scalar(0.0)};
  if (upsilon < kThetaSeriesCutoff) {
    const Scalar v =
        upsilon * (1.0 + rho * upsilon / 2.0 + (rho * rho + 1.0) * upsilon * upsilon / 6.0);
    if (panels) panels->assign(1, v);
    return {0.0, v};
  }
  auto h = [&](double u) -> Scalar { return Scalar(0.5 * u * u) + rho * u; };
  const double shift = std::max(real_part(h(0.0)), real_part(h(upsilon)));
  auto f = [&](double u) -> Scalar { return std::exp(h(u) - shift); };
  auto res = integrate_adaptive(f, 0.0, upsilon, {tol, 0.0, 4000});
  if (panels) *panels = std::move(res.panel_values);
  return {shift, res.value};
}

inline double log_from_panels(const ScaledValue<double>& sv, const std::vector<double>& panels) {
  std::vector<double> logs;
  logs.reserve(panels.size());
  for (double v : panels) {
    if (v > 0.0) logs.push_back(std::log(v));
  }
  return sv.log_scale + log_sum_exp(logs);
}

}  // namespace detail

/// log Theta(U), assembled by log-sum-exp over the quadrature panel
/// contributions so it stays finite for large rho'.
inline double log_theta(double upsilon, const GribovParams& p, double tol = kThetaTol) {
  if (!p.has_four_coupling()) throw ValidationError("theta: needs lambda_prime > 0");
  const double rp = *p.rho_prime;
  if (!(upsilon >= 0.0 && upsilon < rp)) {
    std::ostringstream os;
    os << "theta: upsilon=" << upsilon << " outside [0, rho'=" << rp
       << ") (the integral diverges at rho')";
    throw ValidationError(os.str());
  }
  if (!(tol > 0.0)) throw ValidationError("theta: tol must be > 0");
  if (upsilon == 0.0) return -kInf;
  std::vector<double> panels;
  const auto sv = detail::theta_scaled(upsilon, rp, p.rho, tol, &panels);
  return detail::log_from_panels(sv, panels);
}

inline double theta(double upsilon, const GribovParams& p, double tol = kThetaTol) {
  return std::exp(log_theta(upsilon, p, tol));
}

/// log of int_0^U exp(u^2/2 + rho u) du, the inner integral of the limit kernel.
inline double log_theta_limit(double upsilon, double rho, double tol = kThetaTol) {
  if (!(upsilon >= 0.0)) throw ValidationError("theta_limit: upsilon must be >= 0");
  if (upsilon == 0.0) return -kInf;
  std::vector<double> panels;
  const auto sv = detail::theta_limit_scaled(upsilon, rho, tol, &panels);
  return detail::log_from_panels(sv, panels);
}

/// Theta evaluated at complex intercept mu (only rho depends on mu).
inline std::complex<double> theta_complex(double upsilon, double lambda_prime,
                                          std::complex<double> mu, double lambda,
                                          double tol = kThetaTol) {
  const double rp = lambda / lambda_prime;
  if (!(upsilon >= 0.0 && upsilon < rp)) throw ValidationError("theta: upsilon outside [0, rho')");
  const auto sv = detail::theta_scaled(upsilon, rp, mu / lambda, tol);
  return std::exp(sv.log_scale) * sv.value;
}

}  // namespace gribov
