#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gribov/csv.hpp"
#include "gribov/discretize.hpp"
#include "gribov/kernels.hpp"
#include "gribov/params.hpp"
#include "gribov/spectral.hpp"
#include "gribov/studies.hpp"
#include "gribov/theta.hpp"

namespace gribov {

/// Radical-inverse (van der Corput) sequence in the given base; i >= 1.
inline double halton(std::size_t i, unsigned base) {
  double f = 1.0, x = 0.0;
  while (i > 0) {
    f /= base;
    x += f * static_cast<double>(i % base);
    i /= base;
  }
  return x;
}

struct ParamsTriple {
  double lambda_prime, mu, lambda;
};

/// {lambda' in {1, 0.5, 0.25}} x {mu in {0.5, 1, 2, 4}}, lambda = 1.
inline std::vector<ParamsTriple> default_params_grid() {
  std::vector<ParamsTriple> g;
  for (const double lp : {1.0, 0.5, 0.25}) {
    for (const double mu : {0.5, 1.0, 2.0, 4.0}) g.push_back({lp, mu, 1.0});
  }
  return g;
}

inline std::vector<double> default_mu_grid() { return {0.5, 1.0, 2.0, 4.0}; }
inline std::vector<double> default_rho_prime_grid() { return {4.0, 8.0, 16.0, 32.0}; }
inline std::vector<std::pair<double, double>> default_sample_points() {
  return {{0.5, 0.7}, {0.3, 0.2}, {1.0, 1.5}, {2.0, 1.0}};
}

struct VerifyCheck {
  int criterion = 0;
  std::string name;
  double measured = 0.0;
  /// "<", "<=", ">", ">=", or "flag" (measured is 1 for true).
  std::string relation;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  int n = kDefaultGridSize;
  double eps = kDefaultTruncationEps;
  PowerOptions power{};
  std::size_t form_points = 10000;
};

namespace detail {

inline VerifyCheck check(int c, std::string name, double measured, std::string rel, double thr) {
  bool pass = false;
  if (rel == "<") pass = measured < thr;
  else if (rel == "<=") pass = measured <= thr;
  else if (rel == ">") pass = measured > thr;
  else if (rel == ">=") pass = measured >= thr;
  return {c, std::move(name), measured, std::move(rel), thr, pass};
}

inline VerifyCheck flag_check(int c, std::string name, bool value) {
  return {c, std::move(name), value ? 1.0 : 0.0, "flag", 1.0, value};
}

inline std::string params_tag(const ParamsTriple& t) {
  return "(" + label(t.lambda_prime) + ";" + label(t.mu) + ";" + label(t.lambda) + ")";
}

}  // namespace detail

/// Largest relative disagreement between the log-domain and the direct
/// linear-domain kernel forms on quasi-random points of (0, rho')^2.
inline double kernel_form_disagreement(const GribovParams& p, std::size_t points) {
  const double rp = *p.rho_prime;
  double worst = 0.0;
  for (std::size_t i = 1; i <= points; ++i) {
    const double y = rp * halton(i, 2);
    const double y1 = rp * halton(i, 3);
    const double a = kernel_N(y, y1, p);
    const double b = kernel_N_linear(y, y1, p);
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    worst = std::max(worst, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}));
  }
  return worst;
}

/// Theta(U)(rho' - U)^delta at U = rho'(1 - 10^-k), k = 2..5, and the
/// successive relative changes of that sequence.
inline std::vector<double> theta_endpoint_changes(const GribovParams& p) {
  const double rp = *p.rho_prime;
  std::vector<double> g;
  for (int k = 2; k <= 5; ++k) {
    const double gap = rp * std::pow(10.0, -k);
    g.push_back(std::exp(log_theta(rp - gap, p) + *p.delta * std::log(gap)));
  }
  std::vector<double> changes;
  for (std::size_t i = 1; i < g.size(); ++i) changes.push_back(std::abs(g[i] / g[i - 1] - 1.0));
  return changes;
}

inline std::vector<double> interior_samples(double rho_prime, int count) {
  std::vector<double> s;
  for (int i = 0; i < count; ++i) s.push_back(rho_prime * (0.05 + 0.9 * (i + 0.5) / count));
  return s;
}

/// One verdict per measurable claim, grouped by acceptance criterion 1..9.
inline std::vector<VerifyCheck> run_property_suite(const VerifyOptions& o = {}) {
  using detail::check;
  using detail::flag_check;
  std::vector<VerifyCheck> out;
  const StudyOptions so{o.n, o.eps, o.power};

  // 1: the two printed kernel forms
  for (const ParamsTriple t : {ParamsTriple{1, 1, 1}, ParamsTriple{0.5, 2, 1}, ParamsTriple{0.25, 1, 1}}) {
    const auto p = derive_params(t.lambda_prime, t.mu, t.lambda);
    out.push_back(check(1, "kernel_forms_agree" + detail::params_tag(t),
                        kernel_form_disagreement(p, o.form_points), "<", 1e-12));
  }

  // 2: Theta asymptotics at both ends
  {
    const auto p = derive_params(1, 1, 1);
    const double u = 1e-6 * *p.rho_prime;
    out.push_back(check(2, "theta_linear_near_zero", std::abs(theta(u, p) / u - 1.0), "<", 1e-4));
    const auto ch = theta_endpoint_changes(p);
    bool shrinking = true;
    for (std::size_t i = 1; i < ch.size(); ++i) shrinking = shrinking && ch[i] < ch[i - 1];
    out.push_back(flag_check(2, "theta_endpoint_changes_shrinking", shrinking));
    out.push_back(check(2, "theta_endpoint_last_change", ch.back(), "<", 0.01));
  }

  // 3 and 4 over the parameter grid
  double hs_drift = 0.0, bound_margin = kInf;
  double max_iter = 0.0, min_entry = kInf, max_gap = 0.0, min_sigma = kInf;
  for (const auto& t : default_params_grid()) {
    const auto p = derive_params(t.lambda_prime, t.mu, t.lambda);
    const auto nat = KernelFrame::NativeWeighted;
    const auto lim = KernelFrame::LimitWeighted;
    const double hs_half = hs_norm(p, nat, frame_rule(p, nat, o.n / 2, o.eps));
    const double hs = hs_norm(p, nat, frame_rule(p, nat, o.n, o.eps));
    hs_drift = std::max(hs_drift, std::abs(hs - hs_half) / hs);
    const auto res = power_iteration(assemble(p, nat, frame_rule(p, nat, o.n, o.eps)), o.power);
    const auto lim_rule = frame_rule(p, lim, o.n, o.eps);
    const double hs_lim = hs_norm(p, lim, lim_rule);
    const double om_lim = power_iteration(assemble(p, lim, lim_rule), o.power).omega;
    bound_margin = std::min({bound_margin, hs - res.omega, hs_lim - om_lim});
    max_iter = std::max(max_iter, static_cast<double>(res.iterations));
    min_entry = std::min(min_entry, *std::min_element(res.eigenvector.begin(), res.eigenvector.end()));
    max_gap = std::max(max_gap, res.gap);
    min_sigma = std::min(min_sigma, res.sigma);
  }
  out.push_back(check(3, "hs_self_convergence_max_rel", hs_drift, "<", 1e-6));
  out.push_back(check(3, "hs_minus_omega_min", bound_margin, ">=", 0.0));
  out.push_back(check(4, "power_iterations_max", max_iter, "<=", 1e4));
  out.push_back(check(4, "eigenvector_min_entry", min_entry, ">", 0.0));
  out.push_back(check(4, "gap_max", max_gap, "<=", 1.0 - 1e-3));
  out.push_back(check(4, "sigma_min", min_sigma, ">", 0.0));

  // 5: native vs limit frame
  {
    const auto p = derive_params(1, 1, 1);
    const double a = power_iteration(assemble(p, KernelFrame::NativeWeighted,
                                              frame_rule(p, KernelFrame::NativeWeighted, o.n, o.eps)),
                                     o.power)
                         .omega;
    const double b = power_iteration(assemble(p, KernelFrame::LimitWeighted,
                                              frame_rule(p, KernelFrame::LimitWeighted, o.n, o.eps)),
                                     o.power)
                         .omega;
    out.push_back(check(5, "frame_invariance_rel", std::abs(a - b) / a, "<", 1e-8));
  }

  // 6: mu sweep
  {
    const auto r = sweep_mu(1, 1, default_mu_grid(), so);
    for (const auto& f : r.flags) {
      if (f.name == "monotone_sigma_increasing" || f.name == "monotone_omega_decreasing" ||
          f.name == "kernel_non_increasing") {
        out.push_back(flag_check(6, f.name, f.value));
      }
    }
  }

  // 7: lambda' -> 0
  {
    const auto r = lambda_prime_limit(1, 1, default_rho_prime_grid(), so);
    const auto d = r.column("omega_distance");
    out.push_back(flag_check(7, "omega_distance_strictly_decreasing",
                             evaluate_rule(FlagRule::StrictlyDecreasing, d)));
    out.push_back(check(7, "omega_distance_last_over_first", d.back() / d.front(), "<", 0.25));
    const auto k = kernel_limit_study(1, 1, default_rho_prime_grid(), default_sample_points());
    bool kernel_ok = true, weight_ok = true;
    for (const auto& f : k.flags) {
      if (f.name.rfind("kernel_converging", 0) == 0) kernel_ok = kernel_ok && f.value;
      if (f.name.rfind("weight_converging", 0) == 0) weight_ok = weight_ok && f.value;
    }
    out.push_back(flag_check(7, "kernel_distances_strictly_decreasing", kernel_ok));
    out.push_back(flag_check(7, "weight_distances_strictly_decreasing", weight_ok));
  }

  // 8: the kernel inverts the differential operator
  {
    const auto p = derive_params(1, 1, 1);
    const double rp = *p.rho_prime;
    const auto f = [](double y) { return y; };
    const auto samples = interior_samples(rp, 50);
    out.push_back(check(8, "ode_residual", ode_residual(p, f, samples, o.n), "<", 1e-6));
    const double coarse = ode_residual(p, f, samples, 10, 0.02 * rp);
    const double fine = ode_residual(p, f, samples, 20, 0.01 * rp);
    out.push_back(check(8, "ode_residual_order", std::log2(coarse / fine), ">=", 1.0));
  }

  // 9: analyticity probes
  {
    const auto r = analyticity_probe(1, 1, AnalyticityOptions{}, so);
    out.push_back(check(9, "cauchy_loop_residual", r.finding("loop_residual"), "<", 1e-10));
    out.push_back(check(9, "chebyshev_tail_over_head", r.finding("cheb_tail_over_head"), "<", 1e-8));
  }
  return out;
}

inline bool all_pass(const std::vector<VerifyCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

inline CsvTable to_csv(const std::vector<VerifyCheck>& checks, const VerifyOptions& o) {
  CsvTable t;
  t.meta = {{"command", "verify"},
            {"n", std::to_string(o.n)},
            {"tol", format_number(o.power.tol)},
            {"max_iter", std::to_string(o.power.max_iter)},
            {"eps", format_number(o.eps)},
            {"theta_tol", format_number(kThetaTol)},
            {"form_points", std::to_string(o.form_points)},
            {"mu_grid", detail::join(default_mu_grid())},
            {"rho_prime_grid", detail::join(default_rho_prime_grid())},
            {"interpretation", "creasing-in-mu read as omega decreasing, sigma increasing"}};
  t.header = {"criterion", "check", "measured", "relation", "threshold", "verdict"};
  for (const auto& c : checks) {
    t.rows.push_back({std::to_string(c.criterion), c.name, format_number(c.measured), c.relation,
                      format_number(c.threshold), c.pass ? "PASS" : "FAIL"});
  }
  return t;
}

}  // namespace gribov
