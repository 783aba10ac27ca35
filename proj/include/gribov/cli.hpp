#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gribov/csv.hpp"
#include "gribov/discretize.hpp"
#include "gribov/errors.hpp"
#include "gribov/params.hpp"
#include "gribov/spectral.hpp"
#include "gribov/studies.hpp"
#include "gribov/verify.hpp"
#include "gribov/version.hpp"

namespace gribov::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2, kVerdict = 3 };

struct CliConfig {
  std::string subcommand;
  double lambda_prime = 1.0;
  double mu = 1.0;
  double lambda = 1.0;
  int n = kDefaultGridSize;
  double tol = 1e-12;
  int max_iter = 100000;
  double eps = kDefaultTruncationEps;
  std::string frame = "auto";
  bool allow_out_of_theory = false;
  bool no_kink_correction = false;
  std::vector<double> mu_grid = default_mu_grid();
  std::vector<double> rho_prime_grid = default_rho_prime_grid();
  std::string limit_kind = "omega";
  std::string output;
  bool overwrite = false;
};

namespace detail {

inline GribovParams params_of(const CliConfig& c) {
  return derive_params(c.lambda_prime, c.mu, c.lambda,
                       c.allow_out_of_theory ? ParamPolicy::AllowOutOfTheory : ParamPolicy::Strict);
}

inline KernelFrame frame_of(const CliConfig& c, const GribovParams& p) {
  if (c.frame == "auto") {
    return p.has_four_coupling() ? KernelFrame::NativeWeighted : KernelFrame::LimitWeighted;
  }
  return parse_frame(c.frame);
}

inline PowerOptions power_of(const CliConfig& c) { return {c.tol, c.max_iter}; }

inline void add_defaults(CsvTable& t, const CliConfig& c) {
  t.meta.insert(t.meta.begin(),
                {{"command", c.subcommand},
                 {"n", std::to_string(c.n)},
                 {"tol", gribov::detail::fmt(c.tol)},
                 {"max_iter", std::to_string(c.max_iter)},
                 {"eps", gribov::detail::fmt(c.eps)},
                 {"theta_tol", gribov::detail::fmt(kThetaTol)}});
}

inline void add_params(CsvTable& t, const GribovParams& p) {
  t.meta.emplace_back("lambda_prime", gribov::detail::fmt(p.lambda_prime));
  t.meta.emplace_back("mu", gribov::detail::fmt(p.mu));
  t.meta.emplace_back("lambda", gribov::detail::fmt(p.lambda));
  if (p.rho_prime) t.meta.emplace_back("rho_prime", gribov::detail::fmt(*p.rho_prime));
  t.meta.emplace_back("rho", gribov::detail::fmt(p.rho));
  if (p.delta) t.meta.emplace_back("delta", gribov::detail::fmt(*p.delta));
  t.meta.emplace_back("out_of_theory", p.out_of_theory ? "1" : "0");
}

// Output path is checked before any computation starts.
inline void check_output(const CliConfig& c) {
  if (c.output.empty()) return;
  if (std::filesystem::exists(c.output) && !c.overwrite) {
    throw ValidationError("output path " + c.output + " exists (use --overwrite)");
  }
}

// CSV goes to --output when given, otherwise to stdout. The summary block
// always goes to stdout, every line prefixed with "# ".
inline void emit(const CliConfig& c, const CsvTable& t, const std::string& summary,
                 std::ostream& out) {
  if (c.output.empty()) {
    write_csv(out, t);
  } else {
    std::ofstream f(c.output, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot write output path " + c.output);
    write_csv(f, t);
    f.close();
    if (!f) throw ValidationError("failed writing output path " + c.output);
  }
  std::istringstream lines(summary);
  for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
}

inline int cmd_solve(const CliConfig& c, std::ostream& out) {
  const auto p = params_of(c);
  const auto frame = frame_of(c, p);
  AssemblyOptions ao;
  ao.kink_correction = !c.no_kink_correction;
  const auto m = assemble(p, frame, frame_rule(p, frame, c.n, c.eps), ao);
  const auto r = power_iteration(m, power_of(c));
  CsvTable t;
  add_defaults(t, c);
  add_params(t, p);
  t.meta.emplace_back("frame", to_string(frame));
  t.meta.emplace_back("kink_correction", ao.kink_correction ? "1" : "0");
  t.header = {"index", "node", "weight", "eigenvector"};
  for (std::size_t i = 0; i < r.eigenvector.size(); ++i) {
    t.rows.push_back({std::to_string(i), format_number(m.rule.nodes[i]),
                      format_number(m.rule.weights[i]), format_number(r.eigenvector[i])});
  }
  std::ostringstream s;
  s << "params " << p.describe() << '\n'
    << "frame " << to_string(frame) << " on [0, " << format_number(m.rule.upper) << "], n = " << c.n
    << '\n'
    << "omega = " << format_number(r.omega) << '\n'
    << "sigma = " << format_number(r.sigma) << '\n'
    << "gap = " << format_number(r.gap) << '\n'
    << "residual = " << format_number(r.residual) << '\n'
    << "iterations = " << r.iterations << '\n';
  emit(c, t, s.str(), out);
  return kOk;
}

inline StudyOptions study_options(const CliConfig& c) { return {c.n, c.eps, power_of(c)}; }

inline int report_out(const CliConfig& c, const StudyReport& r, std::ostream& out) {
  CsvTable t = to_csv(r);
  add_defaults(t, c);
  std::ostringstream s;
  write_summary(s, r);
  emit(c, t, s.str(), out);
  return kOk;
}

inline int cmd_sweep_mu(const CliConfig& c, std::ostream& out) {
  return report_out(c, sweep_mu(c.lambda_prime, c.lambda, c.mu_grid, study_options(c)), out);
}

inline int cmd_limit_study(const CliConfig& c, std::ostream& out) {
  if (c.limit_kind == "omega") {
    return report_out(c, lambda_prime_limit(c.mu, c.lambda, c.rho_prime_grid, study_options(c)), out);
  }
  if (c.limit_kind == "hs") {
    return report_out(c, hs_limit_study(c.mu, c.lambda, c.rho_prime_grid, study_options(c)), out);
  }
  return report_out(
      c, kernel_limit_study(c.mu, c.lambda, c.rho_prime_grid, default_sample_points()), out);
}

inline int cmd_hsnorm(const CliConfig& c, std::ostream& out) {
  const auto p = params_of(c);
  const auto frame = frame_of(c, p);
  const auto rule = frame_rule(p, frame, c.n, c.eps);
  const double hs = hs_norm(p, frame, rule);
  const double omega = power_iteration(assemble(p, frame, rule), power_of(c)).omega;
  CsvTable t;
  add_defaults(t, c);
  add_params(t, p);
  t.meta.emplace_back("frame", to_string(frame));
  t.header = {"n", "upper", "hs_norm", "omega"};
  t.rows.push_back({std::to_string(c.n), format_number(rule.upper), format_number(hs),
                    format_number(omega)});
  std::ostringstream s;
  s << "params " << p.describe() << '\n'
    << "frame " << to_string(frame) << ", n = " << c.n << '\n'
    << "hs_norm = " << format_number(hs) << '\n'
    << "omega = " << format_number(omega) << '\n'
    << (omega <= hs ? "PASS" : "FAIL") << " omega <= hs_norm\n";
  emit(c, t, s.str(), out);
  return kOk;
}

inline int cmd_kernel_dump(const CliConfig& c, std::ostream& out) {
  const auto p = params_of(c);
  const auto frame = frame_of(c, p);
  AssemblyOptions ao;
  ao.kink_correction = !c.no_kink_correction;
  const auto m = assemble(p, frame, frame_rule(p, frame, c.n, c.eps), ao);
  CsvTable t;
  add_defaults(t, c);
  add_params(t, p);
  t.meta.emplace_back("frame", to_string(frame));
  t.meta.emplace_back("kink_correction", ao.kink_correction ? "1" : "0");
  t.header = {"row", "col", "y_row", "y_col", "weight_col", "entry"};
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    for (Eigen::Index j = 0; j < m.size(); ++j) {
      t.rows.push_back({std::to_string(i), std::to_string(j), format_number(m.rule.nodes[i]),
                        format_number(m.rule.nodes[j]), format_number(m.rule.weights[j]),
                        format_number(m.entries(i, j))});
    }
  }
  std::ostringstream s;
  s << "params " << p.describe() << '\n'
    << "frame " << to_string(frame) << ", " << m.size() << "x" << m.size() << " entries\n";
  emit(c, t, s.str(), out);
  return kOk;
}

inline int cmd_verify(const CliConfig& c, std::ostream& out) {
  VerifyOptions vo;
  vo.n = c.n;
  vo.eps = c.eps;
  vo.power = power_of(c);
  const auto checks = run_property_suite(vo);
  CsvTable t = to_csv(checks, vo);
  std::ostringstream s;
  for (const auto& k : checks) {
    s << (k.pass ? "PASS " : "FAIL ") << "criterion " << k.criterion << ' ' << k.name << " = "
      << format_number(k.measured);
    if (k.relation != "flag") s << ' ' << k.relation << ' ' << format_number(k.threshold);
    s << '\n';
  }
  const bool ok = all_pass(checks);
  s << (ok ? "all properties PASS" : "some properties FAIL") << '\n';
  emit(c, t, s.str(), out);
  return ok ? kOk : kVerdict;
}

inline void add_common(CLI::App* sub, CliConfig& c, bool params, bool frame) {
  if (params) {
    sub->add_option("--lambda-prime", c.lambda_prime, "four coupling lambda' (>= 0)")->capture_default_str();
    sub->add_option("--mu", c.mu, "intercept mu")->capture_default_str();
    sub->add_option("--lambda", c.lambda, "triple coupling lambda (> 0)")->capture_default_str();
    sub->add_flag("--allow-out-of-theory", c.allow_out_of_theory,
                  "accept mu <= 0 or delta < 0 (recorded in the output header)");
  }
  if (frame) {
    sub->add_option("--frame", c.frame, "native, limit, plain or auto")
        ->check(CLI::IsMember({"auto", "native", "limit", "plain"}))
        ->capture_default_str();
  }
  sub->add_option("--n", c.n, "quadrature nodes")->check(CLI::Range(2, 100000))->capture_default_str();
  sub->add_option("--tol", c.tol, "power-iteration tolerance")
      ->check(CLI::Range(1e-300, 1.0))
      ->capture_default_str();
  sub->add_option("--max-iter", c.max_iter, "power-iteration budget")
      ->check(CLI::Range(1, 100000000))
      ->capture_default_str();
  sub->add_option("--eps", c.eps, "truncation eps for the half-line domain")
      ->check(CLI::Range(1e-300, 0.999999))
      ->capture_default_str();
  sub->add_option("--output,-o", c.output, "CSV path (stdout when absent)");
  sub->add_flag("--overwrite", c.overwrite, "replace an existing output file");
}

}  // namespace detail

/// Runs one subcommand. args excludes the program name. Exit status: 0 ok,
/// 1 validation error, 2 numerical failure, 3 a verify property failed.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CliConfig c;
  CLI::App app{"Perron eigenpair of the inverse Gribov operator", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "dominant eigenpair for one parameter set");
  detail::add_common(solve, c, true, true);
  solve->add_flag("--no-kink-correction", c.no_kink_correction, "plain Nystrom diagonal");

  auto* sweep = app.add_subcommand("sweep-mu", "Omega, sigma and gap along a mu grid");
  sweep->add_option("--lambda-prime", c.lambda_prime)->capture_default_str();
  sweep->add_option("--lambda", c.lambda)->capture_default_str();
  sweep->add_option("--mu-grid", c.mu_grid, "increasing mu values")->delimiter(',')->capture_default_str();
  detail::add_common(sweep, c, false, false);

  auto* limit = app.add_subcommand("limit-study", "lambda' -> 0 study along a rho' grid");
  limit->add_option("--mu", c.mu)->capture_default_str();
  limit->add_option("--lambda", c.lambda)->capture_default_str();
  limit->add_option("--rho-prime-grid", c.rho_prime_grid, "increasing rho' = lambda/lambda' values")
      ->delimiter(',')
      ->capture_default_str();
  limit->add_option("--kind", c.limit_kind, "omega, hs or kernel")
      ->check(CLI::IsMember({"omega", "hs", "kernel"}))
      ->capture_default_str();
  detail::add_common(limit, c, false, false);

  auto* hs = app.add_subcommand("hsnorm", "Hilbert-Schmidt norm and Omega");
  detail::add_common(hs, c, true, true);

  auto* dump = app.add_subcommand("kernel-dump", "assembled operator matrix, row-major");
  detail::add_common(dump, c, true, true);
  dump->add_flag("--no-kink-correction", c.no_kink_correction, "plain Nystrom diagonal");

  auto* verify = app.add_subcommand("verify", "property suite with PASS/FAIL verdicts");
  detail::add_common(verify, c, false, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
    detail::check_output(c);
    if (c.subcommand == "solve") return detail::cmd_solve(c, out);
    if (c.subcommand == "sweep-mu") return detail::cmd_sweep_mu(c, out);
    if (c.subcommand == "limit-study") return detail::cmd_limit_study(c, out);
    if (c.subcommand == "hsnorm") return detail::cmd_hsnorm(c, out);
    if (c.subcommand == "kernel-dump") return detail::cmd_kernel_dump(c, out);
    if (c.subcommand == "verify") return detail::cmd_verify(c, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kValidation;
}

inline int run(int argc, char** argv) {
  return run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

}  // namespace gribov::cli
