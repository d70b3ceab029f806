#pragma once

namespace psent {

inline constexpr const char* kToolkitName = "psentscore";
inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace psent
