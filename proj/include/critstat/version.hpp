#pragma once

namespace critstat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace critstat
