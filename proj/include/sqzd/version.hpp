#pragma once

namespace sqzd {

inline constexpr const char* kToolName = "sqzd";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace sqzd
