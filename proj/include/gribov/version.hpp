#pragma once

namespace gribov {

inline constexpr const char* kToolName = "gribov-spectra";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace gribov
