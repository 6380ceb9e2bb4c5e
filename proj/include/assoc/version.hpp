#pragma once

namespace assoc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace assoc
