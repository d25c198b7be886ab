#pragma once

namespace ddvv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ddvv
