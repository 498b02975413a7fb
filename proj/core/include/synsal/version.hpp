#pragma once

#include <string_view>

namespace synsal {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kGeneratorVersion = "synsal-0.1.0";

}  // namespace synsal
