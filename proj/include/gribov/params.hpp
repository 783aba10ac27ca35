#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "gribov/errors.hpp"

namespace gribov {

/// Pomeron couplings and the quantities derived from them.
///
/// rho_prime = lambda / lambda_prime and delta = rho_prime (rho + rho_prime) - 1
/// exist only for a positive four coupling; with lambda_prime == 0 only the
/// limit (half-line) operator is defined.
struct GribovParams {
  double lambda_prime = 0.0;  // four coupling
  double mu = 0.0;            // intercept
  double lambda = 0.0;        // triple coupling
  std::optional<double> rho_prime;
  double rho = 0.0;
  std::optional<double> delta;
  /// Set when the caller forced construction outside mu > 0, delta >= 0.
  bool out_of_theory = false;

  [[nodiscard]] bool has_four_coupling() const { return rho_prime.has_value(); }

  /// rho * rho_prime - 1, i.e. delta - rho_prime^2, computed without the
  /// cancellation of the two large terms.
  [[nodiscard]] double kappa() const { return rho * rho_prime.value() - 1.0; }

  [[nodiscard]] std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "lambda_prime=" << lambda_prime << " mu=" << mu << " lambda=" << lambda;
    return os.str();
  }
};

enum class ParamPolicy { Strict, AllowOutOfTheory };

inline GribovParams derive_params(double lambda_prime, double mu, double lambda,
                                  ParamPolicy policy = ParamPolicy::Strict) {
  if (!std::isfinite(lambda_prime) || !std::isfinite(mu) || !std::isfinite(lambda)) {
    throw ValidationError("couplings must be finite");
  }
  if (!(lambda > 0.0)) throw ValidationError("triple coupling lambda must be > 0");
  if (lambda_prime < 0.0) throw ValidationError("four coupling lambda_prime must be >= 0");

  GribovParams p;
  p.lambda_prime = lambda_prime;
  p.mu = mu;
  p.lambda = lambda;
  p.rho = mu / lambda;
  if (lambda_prime > 0.0) {
    const double rp = lambda / lambda_prime;
    p.rho_prime = rp;
    p.delta = rp * (p.rho + rp) - 1.0;
  }

  const bool in_theory = mu > 0.0 && (!p.delta || *p.delta >= 0.0);
  if (!in_theory) {
    if (policy == ParamPolicy::Strict) {
      std::ostringstream os;
      os << "parameters outside the weighted-space theory (need mu > 0 and delta >= 0): "
         << p.describe();
      if (p.delta) os << " delta=" << *p.delta;
      throw ValidationError(os.str());
    }
    p.out_of_theory = true;
  }
  return p;
}

/// Which space the discretized operator acts in.
///  - NativeWeighted: L2([0, rho'], r(y) dy), carried to plain L2 by sqrt(r).
///  - LimitWeighted:  L2([0, inf), r_inf(y) dy), carried to plain L2 by sqrt(r_inf).
///  - Plain: the inverse kernel N acting on unweighted functions.
enum class KernelFrame { NativeWeighted, LimitWeighted, Plain };

inline const char* to_string(KernelFrame f) {
  switch (f) {
    case KernelFrame::NativeWeighted: return "native";
    case KernelFrame::LimitWeighted: return "limit";
    case KernelFrame::Plain: return "plain";
  }
  return "?";
}

inline KernelFrame parse_frame(const std::string& s) {
  if (s == "native") return KernelFrame::NativeWeighted;
  if (s == "limit") return KernelFrame::LimitWeighted;
  if (s == "plain") return KernelFrame::Plain;
  throw ValidationError("unknown frame '" + s + "' (expected native, limit or plain)");
}

}  // namespace gribov
