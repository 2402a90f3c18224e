#pragma once

namespace pairscan {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pairscan
