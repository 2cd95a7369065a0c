#pragma once

namespace qmc {

inline constexpr const char* kToolName = "qmc";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qmc
