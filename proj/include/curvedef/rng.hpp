#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

namespace curvedef {

/// Global base seed. Defaults to 42, overridable by the CURVEDEF_SEED
/// environment variable or programmatically (the CLI --seed flag).
inline std::uint64_t& base_seed() {
  static std::uint64_t seed = [] {
    if (const char* env = std::getenv("CURVEDEF_SEED")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0') return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{42};
  }();
  return seed;
}

inline void set_base_seed(std::uint64_t s) { base_seed() = s; }

/// Deterministic per-purpose engine: same base seed + same salt => same stream.
inline std::mt19937_64 make_rng(std::uint64_t salt) {
  std::seed_seq seq{base_seed(), salt, std::uint64_t{0x9e3779b97f4a7c15ULL}};
  return std::mt19937_64(seq);
}

}  // namespace curvedef
