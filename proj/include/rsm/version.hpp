#pragma once

namespace rsm {

inline constexpr const char* kVersion = "0.1.0";

} // namespace rsm
