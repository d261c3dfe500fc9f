#pragma once

namespace dwell {
inline constexpr const char* kVersion = "0.1.0";
}
