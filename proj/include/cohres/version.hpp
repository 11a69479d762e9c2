#pragma once

namespace cohres {

inline constexpr const char* version = "0.1.0";

}  // namespace cohres
