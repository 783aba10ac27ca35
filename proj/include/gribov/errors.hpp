#pragma once

#include <stdexcept>
#include <string>

namespace gribov {

/// Bad input: parameters outside the theory's region, out-of-domain
/// arguments, malformed grids. Maps to CLI exit status 1.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation that was set up correctly but did not produce a trustworthy
/// number: quadrature budget exhausted, overflow, non-convergence, a negative
/// Perron entry. Maps to CLI exit status 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gribov
