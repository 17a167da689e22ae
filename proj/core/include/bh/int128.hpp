#pragma once

#include <cstdint>
#include <string>

namespace bh {

using i128 = __int128;
using u128 = unsigned __int128;

inline constexpr i128 kI128Max = static_cast<i128>(~static_cast<u128>(0) >> 1);
inline constexpr i128 kI128Min = -kI128Max - 1;

std::string to_string(u128 v);
std::string to_string(i128 v);

}  // namespace bh
