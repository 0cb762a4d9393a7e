#pragma once

namespace hypertile {

inline constexpr const char* version = "0.1.0";

} // namespace hypertile
