#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <sstream>
#include <vector>

#include "gribov/discretize.hpp"
#include "gribov/errors.hpp"
#include "gribov/kernels.hpp"
#include "gribov/params.hpp"
#include "gribov/quadrature.hpp"

namespace gribov {

struct PowerOptions {
  double tol = 1e-12;
  int max_iter = 100000;
};

struct SpectralResult {
  double omega = 0.0;
  double sigma = 0.0;
  /// Unit Euclidean norm, first entry positive.
  std::vector<double> eigenvector;
  double residual = 0.0;
  int iterations = 0;
  /// |lambda_2| / omega.
  double gap = 0.0;
};

/// sin^2(y)/y at the nodes: a positive start with a nonzero Perron component.
inline std::vector<double> perron_start(std::span<const double> nodes) {
  std::vector<double> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double s = std::sin(nodes[i]);
    v[i] = s * s / nodes[i];
  }
  return v;
}

namespace detail {

inline SpectralResult power_core(const Eigen::MatrixXd& m, std::span<const double> start,
                                 const PowerOptions& opts) {
  const auto n = m.rows();
  if (m.cols() != n || static_cast<Eigen::Index>(start.size()) != n || n == 0) {
    throw ValidationError("power_iteration: matrix and start vector sizes disagree");
  }
  if (!(opts.tol > 0.0) || opts.max_iter < 1) {
    throw ValidationError("power_iteration: need tol > 0 and max_iter >= 1");
  }
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(start.data(), n);
  const double norm0 = v.norm();
  if (!(norm0 > 0.0) || !std::isfinite(norm0)) {
    throw ValidationError("power_iteration: start vector must be nonzero and finite");
  }
  v /= norm0;
  double prev = std::nan("");
  for (int k = 1; k <= opts.max_iter; ++k) {
    const Eigen::VectorXd x = m * v;
    const double omega = v.dot(x);
    const double residual = (x - omega * v).norm();
    const double xn = x.norm();
    if (!(xn > 0.0) || !std::isfinite(xn)) {
      throw NumericalError("power_iteration: iterate vanished or overflowed");
    }
    if (k > 1 && std::abs(omega - prev) < opts.tol * std::abs(omega) &&
        residual < 10.0 * opts.tol * std::max(1.0, std::abs(omega))) {
      if (!(omega > 0.0)) throw NumericalError("power_iteration: dominant eigenvalue not positive");
      if (v[0] < 0.0) v = -v;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (v[i] < 0.0) {
          std::ostringstream os;
          os << "power_iteration: negative eigenvector entry " << v[i] << " at node " << i
             << " (kernel positivity violated)";
          throw NumericalError(os.str());
        }
      }
      SpectralResult r;
      r.omega = omega;
      r.sigma = 1.0 / omega;
      r.eigenvector.assign(v.data(), v.data() + n);
      r.residual = residual;
      r.iterations = k;
      return r;
    }
    prev = omega;
    v = x / xn;
  }
  std::ostringstream os;
  os << "power_iteration: no convergence in " << opts.max_iter << " iterations";
  throw NumericalError(os.str());
}

}  // namespace detail

/// |lambda_2| / omega by power iteration on M - omega v w^T / (w^T v), with w
/// the left Perron vector. The modulus estimate uses two steps per iterate so
/// a complex or negative subdominant pair still gives a steady ratio.
inline double subdominant_gap(const Eigen::MatrixXd& m, const SpectralResult& dominant,
                              std::span<const double> start, const PowerOptions& opts = {}) {
  const auto n = m.rows();
  const Eigen::MatrixXd mt = m.transpose();
  const SpectralResult left = detail::power_core(mt, start, opts);
  const Eigen::Map<const Eigen::VectorXd> v(dominant.eigenvector.data(), n);
  const Eigen::Map<const Eigen::VectorXd> w(left.eigenvector.data(), n);
  const double wv = w.dot(v);
  if (!(wv > 1e-14)) throw NumericalError("subdominant_gap: deflation breakdown (w^T v ~ 0)");
  auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return m * x - dominant.omega * v * (w.dot(x) / wv);
  };
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(start.data(), n);
  x -= v * (w.dot(x) / wv);
  if (x.norm() <= 1e-12 * Eigen::Map<const Eigen::VectorXd>(start.data(), n).norm()) {
    for (Eigen::Index i = 0; i < n; ++i) x[i] = std::sin(1.0 + static_cast<double>(i));
    x -= v * (w.dot(x) / wv);
  }
  double xn = x.norm();
  if (!(xn > 0.0)) return 0.0;
  x /= xn;
  double prev = -1.0;
  double est = 0.0;
  for (int k = 0; k < 5000; ++k) {
    const Eigen::VectorXd y = apply(apply(x));
    const double yn = y.norm();
    if (!(yn > 0.0)) return 0.0;
    est = std::sqrt(yn);
    if (std::abs(est - prev) <= 1e-10 * est) break;
    prev = est;
    x = y / yn;
  }
  return est / dominant.omega;
}

inline SpectralResult power_iteration(const Eigen::MatrixXd& m, std::span<const double> start,
                                      const PowerOptions& opts = {}) {
  SpectralResult r = detail::power_core(m, start, opts);
  r.gap = subdominant_gap(m, r, start, opts);
  return r;
}

inline SpectralResult power_iteration(const OperatorMatrix& m, const PowerOptions& opts = {}) {
  const auto start = perron_start(m.rule.nodes);
  return power_iteration(m.entries, start, opts);
}

/// sigma = 1/omega, read as the smallest nonzero eigenvalue of the Gribov
/// operator. Native frame when lambda' > 0, limit frame otherwise.
inline SpectralResult smallest_eigenvalue(const GribovParams& p, const QuadratureRule& rule,
                                          const PowerOptions& opts = {}) {
  const KernelFrame frame =
      p.has_four_coupling() ? KernelFrame::NativeWeighted : KernelFrame::LimitWeighted;
  return power_iteration(assemble(p, frame, rule), opts);
}

/// Double integral of A(y, t) B(y, t) over [0, U]^2 for two kernels of the
/// semi-separable shape, split at the diagonal:
///   int Ra Rb(t) int_0^t La Lb Ga Gb dy dt  +  int Ra Rb Ga Gb(t) int_t^U La Lb dy dt.
/// The outer integrals use the rule, the inner ones are cumulative split panels.
inline double hs_inner(const SemiSeparableKernel& a, const SemiSeparableKernel& b,
                       const QuadratureRule& rule, int panel_points = 20) {
  auto left = [&](double y) { return a.log_left(y) + b.log_left(y); };
  auto mid = [&](double y) { return a.log_mid(y) + b.log_mid(y); };
  std::vector<double> below, above, unused;
  detail::log_cumulative(
      detail::log_panel_integrals([&](double y) { return left(y) + mid(y); }, rule.nodes,
                                  rule.lower, rule.upper, panel_points),
      below, unused);
  detail::log_cumulative(
      detail::log_panel_integrals(left, rule.nodes, rule.lower, rule.upper, panel_points), unused,
      above);
  std::vector<double> terms;
  terms.reserve(2 * rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double t = rule.nodes[j];
    const double lw = std::log(rule.weights[j]) + a.log_right(t) + b.log_right(t);
    terms.push_back(lw + below[j]);
    terms.push_back(lw + mid(t) + above[j]);
  }
  const double log_v = log_sum_exp(terms);
  const double out = a.scale * b.scale * std::exp(log_v);
  if (!std::isfinite(out) || std::isnan(log_v)) {
    throw NumericalError("hs_norm: non-finite panel (delta < 0 or overflow)");
  }
  return out;
}

/// sqrt of the double integral of K^2 over [0, U]^2.
inline double hs_norm(const SemiSeparableKernel& k, const QuadratureRule& rule,
                      int panel_points = 20) {
  return std::sqrt(hs_inner(k, k, rule, panel_points));
}

inline double hs_norm(const GribovParams& p, KernelFrame frame, const QuadratureRule& rule) {
  detail::validate_rule_domain(p, frame, rule);
  if (p.has_four_coupling() && frame == KernelFrame::NativeWeighted && *p.delta < 0.0) {
    throw NumericalError("hs_norm: delta < 0, the native-frame kernel is not square integrable");
  }
  return hs_norm(gribov_kernel(p, frame, rule.upper), rule);
}

/// ||K - K_0||_HS in the limit frame, K the lambda' > 0 operator (zero beyond
/// rho') and K_0 the lambda' = 0 operator, both on [0, Y_max].
inline double hs_distance_to_limit(const GribovParams& p, int n, double eps = kDefaultTruncationEps) {
  if (!p.has_four_coupling()) throw ValidationError("hs_distance_to_limit: needs lambda_prime > 0");
  const auto p0 = derive_params(0.0, p.mu, p.lambda);
  const auto rule0 = frame_rule(p0, KernelFrame::LimitWeighted, n, eps);
  const auto rule = frame_rule(p, KernelFrame::LimitWeighted, n, eps);
  const auto k = gribov_kernel(p, KernelFrame::LimitWeighted, rule.upper);
  const auto k0 = gribov_kernel(p0, KernelFrame::LimitWeighted, rule0.upper);
  const double d2 = hs_inner(k, k, rule) + hs_inner(k0, k0, rule0) - 2.0 * hs_inner(k, k0, rule);
  return std::sqrt(std::max(d2, 0.0));
}

/// Finite-difference step sqrt(quadrature tol) * rho' / 10.
inline double ode_step(const GribovParams& p, double quadrature_tol = 1e-6) {
  return std::sqrt(quadrature_tol) * detail::require_rho_prime(p, "ode_step") / 10.0;
}

/// max over samples of |(lambda' y^2 - lambda y) u'' + (lambda y^2 + mu y) u' - f| / max(1, |f|)
/// with u = apply_plain(f) and central differences of step h (0 picks ode_step).
inline double ode_residual(const GribovParams& p, const std::function<double(double)>& f,
                           std::span<const double> samples, int n = kDefaultGridSize,
                           double h = 0.0) {
  const double rp = detail::require_rho_prime(p, "ode_residual");
  if (f(0.0) != 0.0) throw ValidationError("ode_residual: source must satisfy f(0) = 0");
  if (h == 0.0) h = ode_step(p);
  if (!(h > 0.0)) throw ValidationError("ode_residual: step must be > 0");
  const double margin = 0.05 * rp;
  const auto kernel = gribov_kernel(p, KernelFrame::Plain, rp);
  double worst = 0.0;
  for (const double y : samples) {
    if (!(y >= margin && y <= rp - margin)) {
      std::ostringstream os;
      os << "ode_residual: sample " << y << " closer than 0.05 rho' to an end of [0, " << rp
         << "]";
      throw ValidationError(os.str());
    }
    const double um = apply_split(kernel, f, y - h, n);
    const double u0 = apply_split(kernel, f, y, n);
    const double up = apply_split(kernel, f, y + h, n);
    const double d1 = (up - um) / (2.0 * h);
    const double d2 = (up - 2.0 * u0 + um) / (h * h);
    const double fy = f(y);
    const double lhs = (p.lambda_prime * y * y - p.lambda * y) * d2 + (p.lambda * y * y + p.mu * y) * d1;
    worst = std::max(worst, std::abs(lhs - fy) / std::max(1.0, std::abs(fy)));
  }
  return worst;
}

}  // namespace gribov
