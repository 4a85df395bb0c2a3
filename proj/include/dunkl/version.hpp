#pragma once

namespace dunkl {

inline constexpr const char* kVersion = "dunklheat 1.0.0";

}
