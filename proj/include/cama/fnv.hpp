#pragma once

#include <cstdint>
#include <string_view>

namespace cama {

inline constexpr std::uint64_t kFnvOffsetBasis = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

// FNV-1a 64-bit over a byte sequence, chainable via the state argument.
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t state = kFnvOffsetBasis) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= kFnvPrime;
  }
  return state;
}

// Mixes a 64-bit value into the running hash, little-endian byte order.
inline std::uint64_t fnv1a64_u64(std::uint64_t value,
                                 std::uint64_t state = kFnvOffsetBasis) {
  for (int i = 0; i < 8; ++i) {
    state ^= static_cast<unsigned char>(value >> (8 * i));
    state *= kFnvPrime;
  }
  return state;
}

}  // namespace cama
