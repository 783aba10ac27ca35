#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>

namespace gribov {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// log(sum_i exp(args[i])) without overflow. Empty input or all -inf gives -inf.
inline double log_sum_exp(std::span<const double> args) {
  if (args.empty()) return -kInf;
  const double top = *std::max_element(args.begin(), args.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double a : args) sum += std::exp(a - top);
  return top + std::log(sum);
}

/// log(exp(a) + exp(b)).
inline double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (a == -kInf) return -kInf;
  return a + std::log1p(std::exp(b - a));
}

inline double real_part(double x) { return x; }
inline double real_part(const std::complex<double>& z) { return z.real(); }

/// x + log(1 - x) for x in [0, 1], accurate for small x where the two terms
/// nearly cancel.
inline double x_plus_log1m(double x) {
  if (x < 1e-3) {
    // -x^2/2 - x^3/3 - x^4/4 - ...
    double term = x * x;
    double sum = 0.0;
    for (int k = 2; k < 12; ++k) {
      sum -= term / k;
      term *= x;
    }
    return sum;
  }
  return x + std::log1p(-x);
}

/// expm1(-t) + t for t >= 0, accurate for small t.
inline double expm1_neg_plus(double t) {
  if (t < 1e-3) {
    // t^2/2 - t^3/6 + t^4/24 - ...
    double term = t * t / 2.0;
    double sum = 0.0;
    for (int k = 3; k < 14; ++k) {
      sum += term;
      term *= -t / k;
    }
    return sum;
  }
  return std::expm1(-t) + t;
}

}  // namespace gribov
