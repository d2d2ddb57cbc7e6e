#pragma once

namespace hardynls {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hardynls
