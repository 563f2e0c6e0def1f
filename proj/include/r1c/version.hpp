#pragma once

namespace r1c {

inline constexpr const char* kToolName = "r1lab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace r1c
