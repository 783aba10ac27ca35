#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <span>
#include <sstream>
#include <vector>

#include "gribov/errors.hpp"
#include "gribov/kernels.hpp"
#include "gribov/numeric.hpp"
#include "gribov/params.hpp"
#include "gribov/quadrature.hpp"

namespace gribov {

inline constexpr int kDefaultGridSize = 200;
inline constexpr double kDefaultTruncationEps = 1e-12;

/// Smallest Y with r_inf(Y) <= eps: Y = -rho + sqrt(rho^2 + ln(1/eps)),
/// evaluated in the cancellation-free form ln(1/eps) / (rho + sqrt(rho^2 + ln(1/eps))).
inline double truncation_bound(double mu, double lambda, double eps) {
  if (!(mu > 0.0 && lambda > 0.0)) throw ValidationError("truncation_bound: need mu > 0, lambda > 0");
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("truncation_bound: need 0 < eps < 1");
  const double rho = mu / lambda;
  const double l = -std::log(eps);
  return l / (rho + std::sqrt(rho * rho + l));
}

/// Upper end of the interval the operator lives on in a given frame. In the
/// limit frame a finite-rho' kernel vanishes beyond rho', so the domain is
/// [0, min(rho', Y_max)].
inline double frame_upper(const GribovParams& p, KernelFrame frame,
                          double eps = kDefaultTruncationEps) {
  if (p.has_four_coupling()) {
    if (frame == KernelFrame::LimitWeighted) {
      return std::min(*p.rho_prime, truncation_bound(p.mu, p.lambda, eps));
    }
    return *p.rho_prime;
  }
  if (frame == KernelFrame::NativeWeighted) {
    throw ValidationError("native frame needs lambda_prime > 0; use the limit frame");
  }
  return truncation_bound(p.mu, p.lambda, eps);
}

/// Gauss rule on the frame's domain.
inline QuadratureRule frame_rule(const GribovParams& p, KernelFrame frame, int n,
                                 double eps = kDefaultTruncationEps) {
  return gauss_rule(n, 0.0, frame_upper(p, frame, eps));
}

namespace detail {

inline void validate_rule_domain(const GribovParams& p, KernelFrame frame,
                                 const QuadratureRule& rule) {
  if (rule.lower != 0.0) throw ValidationError("operator rules must start at 0");
  if (!p.has_four_coupling()) {
    if (frame == KernelFrame::NativeWeighted) {
      throw ValidationError("native frame needs lambda_prime > 0; use the limit frame");
    }
    return;
  }
  const double rp = *p.rho_prime;
  if (frame == KernelFrame::LimitWeighted) {
    if (rule.upper > rp * (1.0 + 1e-12)) {
      throw ValidationError("limit-frame rule extends past rho'; use [0, min(rho', Y_max)]");
    }
  } else if (std::abs(rule.upper - rp) > 1e-12 * rp) {
    std::ostringstream os;
    os << "rule interval [0, " << rule.upper << "] does not match the domain [0, rho'=" << rp
       << "]";
    throw ValidationError(os.str());
  }
}

// log of int exp(log_f) over each panel [lower, x0], [x0, x1], ..., [x_{n-1}, upper],
// each by an m-point Gauss rule shifted by the panel's largest log value.
inline std::vector<double> log_panel_integrals(const std::function<double(double)>& log_f,
                                               std::span<const double> nodes, double lower,
                                               double upper, int m) {
  const QuadratureRule& ref = reference_rule(m);
  std::vector<double> out;
  out.reserve(nodes.size() + 1);
  std::vector<double> logs(ref.size());
  double a = lower;
  for (std::size_t k = 0; k <= nodes.size(); ++k) {
    const double b = k < nodes.size() ? nodes[k] : upper;
    if (!(b > a)) {
      out.push_back(-kInf);
      a = b;
      continue;
    }
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      logs[i] = std::log(half * ref.weights[i]) + log_f(mid + half * ref.nodes[i]);
    }
    out.push_back(log_sum_exp(logs));
    a = b;
  }
  return out;
}

// log int_lower^{x_i} and log int_{x_i}^upper from per-panel logs.
inline void log_cumulative(const std::vector<double>& panels, std::vector<double>& below,
                           std::vector<double>& above) {
  const std::size_t n = panels.size() - 1;
  below.assign(n, -kInf);
  above.assign(n, -kInf);
  double acc = -kInf;
  for (std::size_t i = 0; i < n; ++i) {
    acc = log_add_exp(acc, panels[i]);
    below[i] = acc;
  }
  acc = -kInf;
  for (std::size_t i = n; i-- > 0;) {
    acc = log_add_exp(acc, panels[i + 1]);
    above[i] = acc;
  }
}

}  // namespace detail

struct AssemblyOptions {
  /// Diagonal singularity-subtraction correction for the min(y, t) kink.
  bool kink_correction = true;
  /// Gauss points per panel between consecutive nodes in split-panel integrals.
  int panel_points = 20;
  double theta_tol = kThetaTol;
};

struct AssemblyMetadata {
  bool log_domain = true;
  bool kink_correction = true;
  int panel_points = 20;
  double theta_tol = kThetaTol;
};

/// Nystrom matrix M(i, j) = T(y_i, y_j) w_j for i != j. With the kink
/// correction on, M(i, i) = T(y_i, y_i) w_i + diagonal_correction[i], where
/// the correction makes each row integrate the profile phi exactly:
///   sum_j M(i, j) phi(y_j) = int T(y_i, t) phi(t) dt.
/// Off-diagonal entries are untouched, so the matrix stays entrywise
/// nonnegative.
struct SemiSeparableMatrix {
  Eigen::MatrixXd entries;
  std::vector<double> diagonal_correction;
};

inline SemiSeparableMatrix assemble_semiseparable(const SemiSeparableKernel& k,
                                                  const QuadratureRule& rule,
                                                  const AssemblyOptions& opts = {}) {
  const auto n = static_cast<Eigen::Index>(rule.size());
  std::vector<double> log_left(n), log_mid(n), log_right(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double y = rule.nodes[i];
    log_left[i] = k.log_left(y);
    log_mid[i] = k.log_mid(y);
    log_right[i] = k.log_right(y);
  }
  SemiSeparableMatrix out;
  out.entries.resize(n, n);
  out.diagonal_correction.assign(n, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = k.scale * rule.weights[j] *
                       std::exp(log_left[i] + log_mid[std::min(i, j)] + log_right[j]);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "assembly overflow at node pair (" << i << ", " << j << ") = (" << rule.nodes[i]
           << ", " << rule.nodes[j] << ")";
        throw NumericalError(os.str());
      }
      out.entries(i, j) = v;
    }
  }
  if (opts.kink_correction) {
    if (!k.log_profile) throw ValidationError("kink correction needs a profile");
    std::vector<double> log_phi(n);
    for (Eigen::Index j = 0; j < n; ++j) log_phi[j] = k.log_profile(rule.nodes[j]);
    // row integral: L(y_i) [ int_0^{y_i} G R phi + G(y_i) int_{y_i}^U R phi ]
    const auto lower_panels = detail::log_panel_integrals(
        [&](double t) { return k.log_mid(t) + k.log_right(t) + k.log_profile(t); }, rule.nodes,
        rule.lower, rule.upper, opts.panel_points);
    const auto upper_panels = detail::log_panel_integrals(
        [&](double t) { return k.log_right(t) + k.log_profile(t); }, rule.nodes, rule.lower,
        rule.upper, opts.panel_points);
    std::vector<double> below, unused, above;
    detail::log_cumulative(lower_panels, below, unused);
    detail::log_cumulative(upper_panels, unused, above);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double exact =
          k.scale * std::exp(log_left[i] + log_add_exp(below[i], log_mid[i] + above[i]));
      double discrete = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) discrete += out.entries(i, j) * std::exp(log_phi[j]);
      const double c = (exact - discrete) / std::exp(log_phi[i]);
      if (!std::isfinite(c)) {
        std::ostringstream os;
        os << "non-finite diagonal correction at node " << i << " (" << rule.nodes[i] << ")";
        throw NumericalError(os.str());
      }
      out.diagonal_correction[i] = c;
      out.entries(i, i) += c;
      if (out.entries(i, i) < 0.0) {
        std::ostringstream os;
        os << "corrected diagonal entry negative at node " << i << " (" << rule.nodes[i]
           << "): grid too coarse for the kernel";
        throw NumericalError(os.str());
      }
    }
  }
  return out;
}

/// Plain Nystrom matrix K(y_i, y_j) w_j for an arbitrary kernel.
template <class Kernel>
Eigen::MatrixXd assemble_kernel(const QuadratureRule& rule, Kernel&& kernel) {
  const auto n = static_cast<Eigen::Index>(rule.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = kernel(rule.nodes[i], rule.nodes[j]) * rule.weights[j];
    }
  }
  return m;
}

/// Discretized inverse operator in a given frame.
struct OperatorMatrix {
  GribovParams params;
  KernelFrame frame = KernelFrame::NativeWeighted;
  QuadratureRule rule;
  Eigen::MatrixXd entries;
  std::vector<double> diagonal_correction;
  AssemblyMetadata meta;

  [[nodiscard]] Eigen::Index size() const { return entries.rows(); }
};

inline OperatorMatrix assemble(const GribovParams& p, KernelFrame frame, const QuadratureRule& rule,
                               const AssemblyOptions& opts = {}) {
  detail::validate_rule_domain(p, frame, rule);
  const auto kernel = gribov_kernel(p, frame, rule.upper, opts.theta_tol);
  auto m = assemble_semiseparable(kernel, rule, opts);
  OperatorMatrix out;
  out.params = p;
  out.frame = frame;
  out.rule = rule;
  out.entries = std::move(m.entries);
  out.diagonal_correction = std::move(m.diagonal_correction);
  out.meta = {true, opts.kink_correction, opts.panel_points, opts.theta_tol};
  return out;
}

/// (K f)(y) = L(y) [ int_0^y G R f dt + G(y) int_y^U R f dt ] with each panel
/// integrated by an n-point Gauss rule, so the diagonal kink never falls
/// inside a panel.
inline double apply_split(const SemiSeparableKernel& k, const std::function<double(double)>& f,
                          double y, int n) {
  if (f(0.0) != 0.0) throw ValidationError("apply: source must satisfy f(0) = 0");
  if (!(y >= 0.0 && y <= k.upper)) throw ValidationError("apply: y outside the operator domain");
  if (y == 0.0) return 0.0;
  const double lower_part = panel_integral(
      [&](double t) { return std::exp(k.log_mid(t) + k.log_right(t)) * f(t); }, 0.0, y, n);
  double upper_part = 0.0;
  if (y < k.upper) {
    upper_part =
        std::exp(k.log_mid(y)) *
        panel_integral([&](double t) { return std::exp(k.log_right(t)) * f(t); }, y, k.upper, n);
  }
  return k.scale * std::exp(k.log_left(y)) * (lower_part + upper_part);
}

/// u = K f for the plain inverse kernel on [0, rho'], evaluated at y.
inline double apply_plain(const GribovParams& p, const std::function<double(double)>& f, double y,
                          int n = kDefaultGridSize) {
  if (!p.has_four_coupling()) throw ValidationError("apply_plain: needs lambda_prime > 0");
  if (n < 2) throw ValidationError("apply_plain: need n >= 2");
  return apply_split(gribov_kernel(p, KernelFrame::Plain, *p.rho_prime), f, y, n);
}

/// Barycentric Lagrange interpolation of node values of a Gauss-Legendre rule.
inline double interpolate(const QuadratureRule& rule, std::span<const double> values, double y) {
  const double half = 0.5 * (rule.upper - rule.lower);
  const double mid = 0.5 * (rule.upper + rule.lower);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double x = (rule.nodes[j] - mid) / half;
    const double bw = (j % 2 == 0 ? 1.0 : -1.0) * std::sqrt((1.0 - x * x) * rule.weights[j] / half);
    const double d = y - rule.nodes[j];
    if (d == 0.0) return values[j];
    num += bw / d * values[j];
    den += bw / d;
  }
  return num / den;
}

}  // namespace gribov
