#pragma once

namespace expmom {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace expmom
