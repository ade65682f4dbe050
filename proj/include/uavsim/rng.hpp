#pragma once

#include <cstdint>

namespace uavsim {

/* splitmix64: tiny counter-based generator; satisfies
   UniformRandomBitGenerator so std distributions work on it. */
struct SplitMix64 {
  using result_type = std::uint64_t;
  std::uint64_t state = 0;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t stream_tag(const char* name) {
  std::uint64_t h = 0xcbf29ce484222325ull; // FNV-1a
  for (; *name; ++name) h = (h ^ static_cast<unsigned char>(*name)) * 0x100000001b3ull;
  return h;
}

/* Independent named substream of a master seed. Extra indices (slot, user id)
   keep per-entity draws isolated, so the number of values consumed by one
   entity never shifts another entity's sequence. */
inline SplitMix64 substream(std::uint64_t master, std::uint64_t tag,
                            std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t s = mix64(master ^ tag);
  s = mix64(s ^ (a * 0x9E3779B97F4A7C15ull));
  s = mix64(s ^ (b * 0xC2B2AE3D27D4EB4Full));
  return SplitMix64{s};
}

} // namespace uavsim
