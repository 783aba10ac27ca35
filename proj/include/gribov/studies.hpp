#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gribov/discretize.hpp"
#include "gribov/errors.hpp"
#include "gribov/kernels.hpp"
#include "gribov/params.hpp"
#include "gribov/spectral.hpp"
#include "gribov/weights.hpp"

namespace gribov {

enum class StudyKind { MuSweep, LambdaPrimeLimit, KernelLimit, HsLimit, Analyticity };

inline const char* to_string(StudyKind k) {
  switch (k) {
    case StudyKind::MuSweep: return "mu-sweep";
    case StudyKind::LambdaPrimeLimit: return "lambda-prime-limit";
    case StudyKind::KernelLimit: return "kernel-limit";
    case StudyKind::HsLimit: return "hs-limit";
    case StudyKind::Analyticity: return "analyticity";
  }
  return "?";
}

/// Relative slack allowed by the non-strict monotonicity rule.
inline constexpr double kFlagSlack = 1e-12;

enum class FlagRule {
  StrictlyIncreasing,
  StrictlyDecreasing,
  NonIncreasing,  // x[i+1] <= x[i] + kFlagSlack * |x[i]|
  AllPositive,
  AllZero,
  LastBelowFractionOfFirst,  // x.back() < threshold * x.front()
  Below,                     // every value < threshold
};

inline const char* to_string(FlagRule r) {
  switch (r) {
    case FlagRule::StrictlyIncreasing: return "strictly-increasing";
    case FlagRule::StrictlyDecreasing: return "strictly-decreasing";
    case FlagRule::NonIncreasing: return "non-increasing";
    case FlagRule::AllPositive: return "all-positive";
    case FlagRule::AllZero: return "all-zero";
    case FlagRule::LastBelowFractionOfFirst: return "last-below-fraction-of-first";
    case FlagRule::Below: return "below";
  }
  return "?";
}

inline bool evaluate_rule(FlagRule rule, const std::vector<double>& x, double threshold = 0.0) {
  if (x.empty()) return false;
  switch (rule) {
    case FlagRule::StrictlyIncreasing:
      for (std::size_t i = 1; i < x.size(); ++i) if (!(x[i] > x[i - 1])) return false;
      return true;
    case FlagRule::StrictlyDecreasing:
      for (std::size_t i = 1; i < x.size(); ++i) if (!(x[i] < x[i - 1])) return false;
      return true;
    case FlagRule::NonIncreasing:
      for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] <= x[i - 1] + kFlagSlack * std::abs(x[i - 1]))) return false;
      }
      return true;
    case FlagRule::AllPositive:
      return std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
    case FlagRule::AllZero:
      return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
    case FlagRule::LastBelowFractionOfFirst:
      return x.back() < threshold * x.front();
    case FlagRule::Below:
      return std::all_of(x.begin(), x.end(), [threshold](double v) { return v < threshold; });
  }
  return false;
}

/// A claim checked on one column of the records (or one named finding).
struct StudyFlag {
  std::string name;
  std::string source;
  FlagRule rule = FlagRule::StrictlyIncreasing;
  double threshold = 0.0;
  bool value = false;
};

struct StudyReport {
  StudyKind kind = StudyKind::MuSweep;
  /// Column 0 of every row; rows are strictly ordered by it.
  std::string parameter;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Scalars that are not per-record (limit values, fitted slopes, residuals).
  std::vector<std::pair<std::string, double>> findings;
  std::vector<StudyFlag> flags;
  /// Grid sizes, tolerances, grids and interpretations, as key/value text.
  std::vector<std::pair<std::string, std::string>> provenance;

  [[nodiscard]] std::vector<double> column(const std::string& name) const {
    std::size_t idx = 0;
    if (name != parameter) {
      const auto it = std::find(columns.begin(), columns.end(), name);
      if (it == columns.end()) throw ValidationError("StudyReport: no column " + name);
      idx = 1 + static_cast<std::size_t>(it - columns.begin());
    }
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[idx]);
    return out;
  }

  [[nodiscard]] double finding(const std::string& name) const {
    for (const auto& [k, v] : findings) {
      if (k == name) return v;
    }
    throw ValidationError("StudyReport: no finding " + name);
  }

  [[nodiscard]] bool has_column(const std::string& name) const {
    return name == parameter || std::find(columns.begin(), columns.end(), name) != columns.end();
  }

  /// Re-derive a flag from the records alone.
  [[nodiscard]] bool recompute(const StudyFlag& f) const {
    if (has_column(f.source)) return evaluate_rule(f.rule, column(f.source), f.threshold);
    return evaluate_rule(f.rule, {finding(f.source)}, f.threshold);
  }

  [[nodiscard]] bool all_flags() const {
    return std::all_of(flags.begin(), flags.end(), [](const StudyFlag& f) { return f.value; });
  }

  void add_flag(std::string name, std::string source, FlagRule rule, double threshold = 0.0) {
    StudyFlag f{std::move(name), std::move(source), rule, threshold, false};
    f.value = recompute(f);
    flags.push_back(std::move(f));
  }
};

struct StudyOptions {
  int n = kDefaultGridSize;
  double eps = kDefaultTruncationEps;
  PowerOptions power{};
};

namespace detail {

// Shortest representation that reads back to the same double.
inline std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + fmt(xs[i]);
  return s;
}

inline void require_increasing(const std::vector<double>& g, const char* what) {
  if (g.empty()) throw ValidationError(std::string(what) + " grid is empty");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i])) throw ValidationError(std::string(what) + " grid has a non-finite entry");
    if (i > 0 && !(g[i] > g[i - 1])) {
      throw ValidationError(std::string(what) + " grid must be strictly increasing");
    }
  }
}

// short form for column names; values themselves are printed in full
inline std::string label(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

inline std::string point_label(double y, double y1) {
  return "(" + label(y) + ";" + label(y1) + ")";
}

inline void base_provenance(StudyReport& r, const StudyOptions& o) {
  r.provenance.emplace_back("n", std::to_string(o.n));
  r.provenance.emplace_back("power_tol", fmt(o.power.tol));
  r.provenance.emplace_back("max_iter", std::to_string(o.power.max_iter));
  r.provenance.emplace_back("theta_tol", fmt(kThetaTol));
}

}  // namespace detail

/// Omega, sigma and gap along an increasing mu grid, plus the plain kernel at a
/// fixed point. Interpretation: Omega decreasing / sigma increasing in mu.
inline StudyReport sweep_mu(double lambda_prime, double lambda, const std::vector<double>& mu_grid,
                            const StudyOptions& o = {},
                            std::pair<double, double> kernel_point = {0.5, 0.7}) {
  detail::require_increasing(mu_grid, "mu");
  if (!(mu_grid.front() > 0.0)) throw ValidationError("mu grid must be > 0");
  StudyReport r;
  r.kind = StudyKind::MuSweep;
  r.parameter = "mu";
  const std::string kcol = "kernel" + detail::point_label(kernel_point.first, kernel_point.second);
  r.columns = {"omega", "sigma", "gap", "residual", "iterations", kcol};
  for (const double mu : mu_grid) {
    try {
      const auto p = derive_params(lambda_prime, mu, lambda);
      const KernelFrame frame =
          p.has_four_coupling() ? KernelFrame::NativeWeighted : KernelFrame::LimitWeighted;
      const auto res = power_iteration(assemble(p, frame, frame_rule(p, frame, o.n, o.eps)), o.power);
      const double k = p.has_four_coupling()
                           ? kernel_N(kernel_point.first, kernel_point.second, p)
                           : kernel_limit(kernel_point.first, kernel_point.second, mu, lambda);
      r.rows.push_back({mu, res.omega, res.sigma, res.gap, res.residual,
                        static_cast<double>(res.iterations), k});
    } catch (const ValidationError& e) {
      throw ValidationError("sweep_mu at mu=" + detail::fmt(mu) + ": " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError("sweep_mu at mu=" + detail::fmt(mu) + ": " + e.what());
    }
  }
  r.add_flag("monotone_sigma_increasing", "sigma", FlagRule::StrictlyIncreasing);
  r.add_flag("monotone_omega_decreasing", "omega", FlagRule::StrictlyDecreasing);
  r.add_flag("kernel_non_increasing", kcol, FlagRule::NonIncreasing);
  r.add_flag("omega_positive", "omega", FlagRule::AllPositive);
  r.add_flag("gap_below_one", "gap", FlagRule::Below, 1.0);
  detail::base_provenance(r, o);
  r.provenance.emplace_back("lambda_prime", detail::fmt(lambda_prime));
  r.provenance.emplace_back("lambda", detail::fmt(lambda));
  r.provenance.emplace_back("mu_grid", detail::join(mu_grid));
  r.provenance.emplace_back("interpretation", "creasing-in-mu read as omega decreasing, sigma increasing");
  return r;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace detail {

struct LimitRows {
  double omega0 = 0.0, hs0 = 0.0, y_max = 0.0;
  // rho', lambda', omega, |omega - omega0|, hs, |hs - hs0|, ||K - K0||_HS
  std::vector<std::vector<double>> rows;
};

// Everything in the limit frame; a finite-rho' operator lives on [0, min(rho', Y_max)]
// since its kernel is cut to [0, rho']^2.
inline LimitRows limit_rows(double mu, double lambda, const std::vector<double>& rho_prime_grid,
                            const StudyOptions& o) {
  require_increasing(rho_prime_grid, "rho'");
  if (!(rho_prime_grid.front() > 0.0)) throw ValidationError("rho' grid must be > 0");
  LimitRows out;
  const auto p0 = derive_params(0.0, mu, lambda);
  const auto rule0 = frame_rule(p0, KernelFrame::LimitWeighted, o.n, o.eps);
  out.y_max = rule0.upper;
  out.omega0 = power_iteration(assemble(p0, KernelFrame::LimitWeighted, rule0), o.power).omega;
  out.hs0 = hs_norm(p0, KernelFrame::LimitWeighted, rule0);
  for (const double rp : rho_prime_grid) {
    const double lp = lambda / rp;
    try {
      const auto p = derive_params(lp, mu, lambda);
      const auto rule = frame_rule(p, KernelFrame::LimitWeighted, o.n, o.eps);
      const double om =
          power_iteration(assemble(p, KernelFrame::LimitWeighted, rule), o.power).omega;
      const double hs = hs_norm(p, KernelFrame::LimitWeighted, rule);
      out.rows.push_back({rp, lp, om, std::abs(om - out.omega0), hs, std::abs(hs - out.hs0),
                          hs_distance_to_limit(p, o.n, o.eps)});
    } catch (const NumericalError& e) {
      throw NumericalError("limit study at rho'=" + fmt(rp) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace detail

/// Omega(lambda') against the limit-operator Omega_0 along increasing rho' = lambda/lambda'.
inline StudyReport lambda_prime_limit(double mu, double lambda,
                                      const std::vector<double>& rho_prime_grid,
                                      const StudyOptions& o = {}) {
  const auto lr = detail::limit_rows(mu, lambda, rho_prime_grid, o);
  StudyReport r;
  r.kind = StudyKind::LambdaPrimeLimit;
  r.parameter = "rho_prime";
  r.columns = {"lambda_prime", "omega", "omega_distance", "hs", "hs_distance", "operator_hs_distance"};
  r.rows = lr.rows;
  std::vector<double> inv_rp, dist;
  for (const auto& row : r.rows) {
    inv_rp.push_back(1.0 / row[0]);
    dist.push_back(row[3]);
  }
  r.findings = {{"omega0", lr.omega0}, {"hs0", lr.hs0}, {"y_max", lr.y_max}};
  if (r.rows.size() >= 2 &&
      std::all_of(dist.begin(), dist.end(), [](double d) { return d > 0.0; })) {
    r.findings.emplace_back("loglog_slope", loglog_slope(inv_rp, dist));
  }
  r.add_flag("omega_positive", "omega", FlagRule::AllPositive);
  r.add_flag("converging", "omega_distance", FlagRule::StrictlyDecreasing);
  r.add_flag("final_below_quarter_of_first", "omega_distance",
             FlagRule::LastBelowFractionOfFirst, 0.25);
  r.add_flag("hs_converging", "operator_hs_distance", FlagRule::StrictlyDecreasing);
  detail::base_provenance(r, o);
  r.provenance.emplace_back("eps", detail::fmt(o.eps));
  r.provenance.emplace_back("mu", detail::fmt(mu));
  r.provenance.emplace_back("lambda", detail::fmt(lambda));
  r.provenance.emplace_back("rho_prime_grid", detail::join(rho_prime_grid));
  r.provenance.emplace_back("frame", "limit");
  return r;
}

/// HS norms in the limit frame along rho': the norm itself, its distance to
/// the limit-kernel norm, and the norm of the operator difference K - K_0,
/// with the Omega <= HS bound per record.
inline StudyReport hs_limit_study(double mu, double lambda,
                                  const std::vector<double>& rho_prime_grid,
                                  const StudyOptions& o = {}) {
  const auto lr = detail::limit_rows(mu, lambda, rho_prime_grid, o);
  StudyReport r;
  r.kind = StudyKind::HsLimit;
  r.parameter = "rho_prime";
  r.columns = {"hs", "hs_distance", "operator_hs_distance", "omega", "hs_minus_omega"};
  for (const auto& row : lr.rows) {
    r.rows.push_back({row[0], row[4], row[5], row[6], row[2], row[4] - row[2]});
  }
  r.findings = {{"hs0", lr.hs0}, {"omega0", lr.omega0}, {"y_max", lr.y_max}};
  r.add_flag("hs_finite_positive", "hs", FlagRule::AllPositive);
  r.add_flag("hs_distance_decreasing", "hs_distance", FlagRule::StrictlyDecreasing);
  r.add_flag("hs_converging", "operator_hs_distance", FlagRule::StrictlyDecreasing);
  r.add_flag("omega_below_hs", "hs_minus_omega", FlagRule::AllPositive);
  detail::base_provenance(r, o);
  r.provenance.emplace_back("eps", detail::fmt(o.eps));
  r.provenance.emplace_back("mu", detail::fmt(mu));
  r.provenance.emplace_back("lambda", detail::fmt(lambda));
  r.provenance.emplace_back("rho_prime_grid", detail::join(rho_prime_grid));
  r.provenance.emplace_back("frame", "limit");
  return r;
}

/// Plain kernel and weight along rho' at fixed points, against the lambda' = 0
/// limits. Weights are sampled at every coordinate that appears in the points.
inline StudyReport kernel_limit_study(double mu, double lambda,
                                      const std::vector<double>& rho_prime_grid,
                                      const std::vector<std::pair<double, double>>& points) {
  detail::require_increasing(rho_prime_grid, "rho'");
  if (!(rho_prime_grid.front() > 0.0)) throw ValidationError("rho' grid must be > 0");
  if (points.empty()) throw ValidationError("kernel_limit_study: no sample points");
  const double smallest = rho_prime_grid.front();
  std::vector<double> coords;
  for (const auto& [y, y1] : points) {
    if (!(y > 0.0 && y < smallest && y1 > 0.0 && y1 < smallest)) {
      throw ValidationError("kernel_limit_study: point " + detail::point_label(y, y1) +
                            " not strictly inside [0, " + detail::fmt(smallest) + "]^2");
    }
    coords.push_back(y);
    coords.push_back(y1);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());

  StudyReport r;
  r.kind = StudyKind::KernelLimit;
  r.parameter = "rho_prime";
  const double rho = mu / lambda;
  for (const auto& [y, y1] : points) {
    const auto lab = detail::point_label(y, y1);
    r.columns.push_back("kernel" + lab);
    r.columns.push_back("kernel_distance" + lab);
    r.findings.emplace_back("kernel_limit" + lab, kernel_limit(y, y1, mu, lambda));
  }
  for (const double y : coords) {
    r.columns.push_back("weight(" + detail::label(y) + ")");
    r.columns.push_back("weight_distance(" + detail::label(y) + ")");
    r.findings.emplace_back("weight_limit(" + detail::label(y) + ")", weight_r_inf(y, rho));
  }
  r.columns.push_back("max_zero_row");
  for (const double rp : rho_prime_grid) {
    const auto p = derive_params(lambda / rp, mu, lambda);
    std::vector<double> row{rp};
    for (const auto& [y, y1] : points) {
      const double k = kernel_N(y, y1, p);
      row.push_back(k);
      row.push_back(std::abs(k - kernel_limit(y, y1, mu, lambda)));
    }
    for (const double y : coords) {
      const double w = weight_r(y, p);
      row.push_back(w);
      row.push_back(std::abs(w - weight_r_inf(y, rho)));
    }
    double zero_row = 0.0;
    for (const auto& pt : points) zero_row = std::max(zero_row, kernel_N(0.0, pt.second, p));
    row.push_back(zero_row);
    r.rows.push_back(std::move(row));
  }
  for (const auto& [y, y1] : points) {
    const auto lab = detail::point_label(y, y1);
    r.add_flag("kernel_converging" + lab, "kernel_distance" + lab, FlagRule::StrictlyDecreasing);
    r.add_flag("kernel_non_increasing" + lab, "kernel" + lab, FlagRule::NonIncreasing);
  }
  for (const double y : coords) {
    const auto lab = "(" + detail::label(y) + ")";
    r.add_flag("weight_converging" + lab, "weight_distance" + lab, FlagRule::StrictlyDecreasing);
  }
  r.add_flag("zero_row", "max_zero_row", FlagRule::AllZero);
  r.provenance.emplace_back("theta_tol", detail::fmt(kThetaTol));
  r.provenance.emplace_back("mu", detail::fmt(mu));
  r.provenance.emplace_back("lambda", detail::fmt(lambda));
  r.provenance.emplace_back("rho_prime_grid", detail::join(rho_prime_grid));
  r.provenance.emplace_back("kernel_variant", "plain");
  return r;
}

/// |sum over a circle of N(mu) dmu| / max |N| by the K-point trapezoid rule.
/// Points k and k + K/2 are antipodal and share one exactly negated phase, so
/// a mu-independent integrand sums to exactly zero.
template <class F>
double cauchy_loop_residual(F&& kernel_at, std::complex<double> center, double radius,
                            int loop_points) {
  if (loop_points < 4 || loop_points % 2 != 0) {
    throw ValidationError("cauchy loop: loop_points must be even and >= 4");
  }
  if (!(radius > 0.0)) throw ValidationError("cauchy loop: radius must be > 0");
  const int half = loop_points / 2;
  std::complex<double> acc = 0.0;
  double biggest = 0.0;
  for (int k = 0; k < half; ++k) {
    const double th = 2.0 * std::numbers::pi * k / loop_points;
    const std::complex<double> phase = std::polar(1.0, th);
    const std::complex<double> a = kernel_at(center + radius * phase);
    const std::complex<double> b = kernel_at(center - radius * phase);
    biggest = std::max({biggest, std::abs(a), std::abs(b)});
    acc += (a - b) * phase;
  }
  acc *= std::complex<double>(0.0, radius * 2.0 * std::numbers::pi / loop_points);
  if (biggest == 0.0) return 0.0;
  return std::abs(acc) / biggest;
}

/// Chebyshev coefficients of samples at first-kind nodes x_j = cos(pi (j + 1/2) / N).
inline std::vector<double> chebyshev_coefficients(const std::vector<double>& f) {
  const auto n = f.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s += f[j] * std::cos(std::numbers::pi * static_cast<double>(k) * (static_cast<double>(j) + 0.5) /
                           static_cast<double>(n));
    }
    c[k] = 2.0 * s / static_cast<double>(n);
  }
  c[0] *= 0.5;
  return c;
}

/// max |c_k| over the last N/8 coefficients, divided by |c_0|.
inline double chebyshev_tail_ratio(const std::vector<double>& c) {
  const std::size_t tail = std::max<std::size_t>(1, c.size() / 8);
  double m = 0.0;
  for (std::size_t k = c.size() - tail; k < c.size(); ++k) m = std::max(m, std::abs(c[k]));
  return m / std::abs(c[0]);
}

struct AnalyticityOptions {
  double mu0 = 1.0;
  double radius = 0.5;
  int loop_points = 64;
  std::pair<double, double> kernel_point{0.5, 0.7};
  std::pair<double, double> cheb_interval{0.5, 4.0};
  int cheb_nodes = 32;
};

/// Records are Omega at the Chebyshev nodes (ascending mu); the loop residual and
/// the coefficient tail ratio are findings.
inline StudyReport analyticity_probe(double lambda_prime, double lambda,
                                     const AnalyticityOptions& a = {},
                                     const StudyOptions& o = {}) {
  if (!(lambda_prime > 0.0 && lambda > 0.0)) {
    throw ValidationError("analyticity_probe: need lambda_prime > 0 and lambda > 0");
  }
  // delta = rho'(rho + rho') - 1 >= 0 must hold on the whole disc (real part)
  const double mu_min = a.mu0 - a.radius;
  const auto edge = derive_params(lambda_prime, mu_min, lambda, ParamPolicy::AllowOutOfTheory);
  if (!(mu_min > 0.0) || edge.out_of_theory) {
    throw ValidationError("analyticity_probe: the mu loop leaves mu > 0, delta >= 0");
  }
  const auto [lo, hi] = a.cheb_interval;
  if (!(lo > 0.0 && hi > lo)) throw ValidationError("analyticity_probe: need 0 < a < b");
  if (a.cheb_nodes < 8) throw ValidationError("analyticity_probe: need at least 8 Chebyshev nodes");

  const auto [ky, ky1] = a.kernel_point;
  const double loop = cauchy_loop_residual(
      [&](std::complex<double> mu) { return kernel_N_complex(ky, ky1, lambda_prime, mu, lambda); },
      a.mu0, a.radius, a.loop_points);

  const int n = a.cheb_nodes;
  std::vector<double> values(n);
  std::vector<std::vector<double>> rows;
  for (int j = 0; j < n; ++j) {
    const double x = std::cos(std::numbers::pi * (j + 0.5) / n);
    const double mu = 0.5 * (hi + lo) + 0.5 * (hi - lo) * x;
    try {
      const auto p = derive_params(lambda_prime, mu, lambda);
      values[j] = power_iteration(
                      assemble(p, KernelFrame::NativeWeighted,
                               frame_rule(p, KernelFrame::NativeWeighted, o.n, o.eps)),
                      o.power)
                      .omega;
    } catch (const NumericalError& e) {
      throw NumericalError("analyticity_probe at mu=" + detail::fmt(mu) + ": " + e.what());
    }
    rows.push_back({mu, values[j]});
  }
  const auto coeffs = chebyshev_coefficients(values);
  for (int j = 0; j < n; ++j) rows[j].push_back(std::abs(coeffs[j]));
  // nodes run from hi to lo; records are ordered by mu, coefficient index kept explicit
  for (int j = 0; j < n; ++j) rows[j].push_back(static_cast<double>(j));
  std::reverse(rows.begin(), rows.end());

  StudyReport r;
  r.kind = StudyKind::Analyticity;
  r.parameter = "mu";
  r.columns = {"omega", "abs_cheb_coefficient", "coefficient_index"};
  r.rows = std::move(rows);
  r.findings = {{"loop_residual", loop}, {"cheb_tail_over_head", chebyshev_tail_ratio(coeffs)}};
  r.add_flag("loop_residual_small", "loop_residual", FlagRule::Below, 1e-10);
  r.add_flag("chebyshev_decay", "cheb_tail_over_head", FlagRule::Below, 1e-8);
  r.add_flag("omega_positive", "omega", FlagRule::AllPositive);
  detail::base_provenance(r, o);
  r.provenance.emplace_back("lambda_prime", detail::fmt(lambda_prime));
  r.provenance.emplace_back("lambda", detail::fmt(lambda));
  r.provenance.emplace_back("mu0", detail::fmt(a.mu0));
  r.provenance.emplace_back("radius", detail::fmt(a.radius));
  r.provenance.emplace_back("loop_points", std::to_string(a.loop_points));
  r.provenance.emplace_back("kernel_point", detail::point_label(ky, ky1));
  r.provenance.emplace_back("cheb_interval", detail::fmt(lo) + ";" + detail::fmt(hi));
  r.provenance.emplace_back("cheb_nodes", std::to_string(n));
  return r;
}

}  // namespace gribov
