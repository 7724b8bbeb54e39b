#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace muse::support {

/// FNV-1a 64-bit. Stable across platforms; used for program fingerprints and
/// interpreter state hashing.
constexpr std::uint64_t fnv1a64(std::string_view data,
                                std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t hash = seed;
  for (char c : data) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string toHex(std::uint64_t value);

}  // namespace muse::support
