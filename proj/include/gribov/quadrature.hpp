#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "gribov/errors.hpp"

namespace gribov {

/// Nodes and positive weights on (lower, upper); nodes strictly interior and
/// increasing.
struct QuadratureRule {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }

  template <class F>
  [[nodiscard]] auto integrate(F&& f) const {
    using T = decltype(f(0.0));
    T sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

namespace detail {

// Legendre nodes/weights on [-1, 1] in increasing order, Newton on P_n.
inline void legendre_reference(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

}  // namespace detail

/// n-point Gauss-Legendre rule mapped affinely to (lower, upper).
/// Exact for polynomials of degree <= 2n - 1.
inline QuadratureRule gauss_rule(int n, double lower, double upper) {
  if (n < 2) throw ValidationError("gauss_rule: need n >= 2");
  if (!(std::isfinite(lower) && std::isfinite(upper)) || !(lower < upper)) {
    throw ValidationError("gauss_rule: need finite lower < upper");
  }
  std::vector<double> x, w;
  detail::legendre_reference(n, x, w);
  QuadratureRule rule;
  rule.lower = lower;
  rule.upper = upper;
  const double half = 0.5 * (upper - lower);
  const double mid = 0.5 * (upper + lower);
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * x[i];
    rule.weights[i] = half * w[i];
  }
  return rule;
}

/// Reference Gauss-Legendre rule on [-1, 1], cached per size. Used for the
/// small fixed panels inside split-panel integrals.
inline const QuadratureRule& reference_rule(int n) {
  static thread_local std::map<int, QuadratureRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_rule(n, -1.0, 1.0)).first;
  return it->second;
}

/// Integrate f over [a, b] with the reference n-point rule.
template <class F>
auto panel_integral(F&& f, double a, double b, int n) {
  const QuadratureRule& ref = reference_rule(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  using T = decltype(f(0.0));
  T sum{};
  for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
    sum += ref.weights[i] * f(mid + half * ref.nodes[i]);
  }
  return half * sum;
}

template <class T>
struct AdaptiveResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  std::vector<T> panel_values;  // contributions of the final partition
};

struct AdaptiveOptions {
  double rel_tol = 1e-13;
  double abs_tol = 0.0;
  int max_panels = 4000;
};

namespace detail {

// Kronrod 15 / Gauss 7 on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = kWgk[7] * fc;
  T gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, h * kron, std::abs(h * (kron - gauss))};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7, 15) quadrature; the panel with the
/// largest error estimate is bisected until the total estimate meets the
/// tolerance. Works for real and complex integrands.
template <class F>
auto integrate_adaptive(F f, double a, double b, AdaptiveOptions opts = {}) {
  using T = decltype(f(0.0));
  AdaptiveResult<T> out;
  if (a == b) return out;
  std::priority_queue<detail::Panel<T>> queue;
  queue.push(detail::gk15<T>(f, a, b));
  out.evaluations = 15;
  T total = queue.top().value;
  double err = queue.top().error;
  while (err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (static_cast<int>(queue.size()) >= opts.max_panels) {
      std::ostringstream os;
      os << "adaptive quadrature on [" << a << ", " << b << "] did not converge within "
         << opts.max_panels << " panels (error estimate " << err << ")";
      throw NumericalError(os.str());
    }
    const detail::Panel<T> worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // interval exhausted at machine resolution; accept what we have
      queue.push(worst);
      break;
    }
    const auto left = detail::gk15<T>(f, worst.a, mid);
    const auto right = detail::gk15<T>(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // re-sum from the partition to shed accumulated update error
  T sum{};
  double esum = 0.0;
  out.panel_values.reserve(queue.size());
  while (!queue.empty()) {
    sum += queue.top().value;
    esum += queue.top().error;
    out.panel_values.push_back(queue.top().value);
    queue.pop();
  }
  out.value = sum;
  out.error = esum;
  return out;
}

}  // namespace gribov
