#pragma once

namespace freeqg {

inline constexpr const char* version = "0.1.0";

} // namespace freeqg
