#pragma once

namespace kagomejj {

inline constexpr const char* version = "0.1.0";

} // namespace kagomejj
