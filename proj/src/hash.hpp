#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tt {

inline constexpr uint64_t kFnvBasis = 0xcbf29ce484222325ULL;
inline constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

inline uint64_t fnv1a64(std::string_view data, uint64_t h = kFnvBasis) {
  for (unsigned char c : data) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

inline uint64_t fnv1a64_byte(uint8_t b, uint64_t h) {
  h ^= b;
  h *= kFnvPrime;
  return h;
}

// Seedless fingerprint of a token sequence: FNV-1a over the tokens with a
// 0x1F unit separator after each one, so ["ab","c"] and ["a","bc"] differ.
inline uint64_t fingerprint_tokens(const std::vector<std::string>& tokens) {
  uint64_t h = kFnvBasis;
  for (const auto& t : tokens) {
    h = fnv1a64(t, h);
    h = fnv1a64_byte(0x1f, h);
  }
  return h;
}

// Stateless 64 -> 64 bit mixer (splitmix64 finalizer), used to derive the
// minhash function family from fixed seeds.
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace tt
