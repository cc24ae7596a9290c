#pragma once

namespace gpdcal {

inline constexpr const char* version = "0.1.0";

}  // namespace gpdcal
