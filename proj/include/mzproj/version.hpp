#pragma once

namespace mzproj {
inline constexpr const char* kVersion = "0.1.0";
}
