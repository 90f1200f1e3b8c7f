#pragma once

#include <cstdint>

namespace grassmod {

inline constexpr const char* kToolVersion = "grassmod 1.0.0";
inline constexpr std::uint32_t kCacheFormatVersion = 1;

}  // namespace grassmod
