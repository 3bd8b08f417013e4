#pragma once

namespace framepot {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace framepot
