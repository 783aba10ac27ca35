#pragma once

#include <cmath>
#include <complex>
#include <sstream>

#include "gribov/errors.hpp"
#include "gribov/numeric.hpp"
#include "gribov/params.hpp"

namespace gribov {

namespace detail {

inline double require_rho_prime(const GribovParams& p, const char* who) {
  if (!p.has_four_coupling()) {
    throw ValidationError(std::string(who) + ": needs lambda_prime > 0");
  }
  return *p.rho_prime;
}

inline void require_in_interval(double y, double rp, const char* who) {
  if (!(y >= 0.0 && y <= rp)) {
    std::ostringstream os;
    os << who << ": y=" << y << " outside [0, " << rp << "]";
    throw ValidationError(os.str());
  }
}

}  // namespace detail

/// log sqrt(r(y)) = rho' y + delta log(1 - y/rho'), written as
/// rho'^2 (x + log(1 - x)) + kappa log(1 - x) with x = y/rho' so the two
/// O(rho'^2) pieces never cancel numerically. Scalar may be complex (complex mu).
template <class Scalar>
Scalar log_sqrt_weight_r(double y, double rho_prime, Scalar kappa) {
  const double x = y / rho_prime;
  if (x >= 1.0) {
    const Scalar delta = rho_prime * rho_prime + kappa;
    const double d = real_part(delta);
    if (d > 0.0) return Scalar(-kInf);
    if (d == 0.0) return Scalar(rho_prime * rho_prime);
    return Scalar(kInf);
  }
  return rho_prime * rho_prime * x_plus_log1m(x) + kappa * std::log1p(-x);
}

/// log r(y) on [0, rho'].
inline double log_weight_r(double y, const GribovParams& p) {
  const double rp = detail::require_rho_prime(p, "weight_r");
  detail::require_in_interval(y, rp, "weight_r");
  return 2.0 * log_sqrt_weight_r(y, rp, p.kappa());
}

/// r(y) = exp(2 rho' y) (1 - y/rho')^(2 delta).
inline double weight_r(double y, const GribovParams& p) { return std::exp(log_weight_r(y, p)); }

/// Direct linear-domain evaluation of r(y); overflows for large rho'.
inline double weight_r_linear(double y, const GribovParams& p) {
  const double rp = detail::require_rho_prime(p, "weight_r");
  detail::require_in_interval(y, rp, "weight_r");
  return std::exp(2.0 * rp * y) * std::pow(1.0 - y / rp, 2.0 * *p.delta);
}

inline double log_sqrt_weight_r_inf(double y, double rho) { return -0.5 * y * y - rho * y; }

/// r_inf(y) = exp(-y^2 - 2 rho y), the weight of the half-line limit space.
inline double weight_r_inf(double y, double rho) {
  if (!(y >= 0.0)) throw ValidationError("weight_r_inf: y must be >= 0");
  return std::exp(-y * y - 2.0 * rho * y);
}

}  // namespace gribov
