#pragma once

#include <cstdint>

namespace lrp::rng {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

/// splitmix64 finalizer (Steele, Lea, Flood). Bijective on 64-bit words.
constexpr std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Combines two words into one stream id. For a fixed `a` this is a bijection
/// in `b`, so (seed, trial) pairs never collide for the same seed.
constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return finalize(finalize(a) ^ (b + kGamma));
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix(mix(a, b), c);
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                            std::uint64_t e) {
  return mix(mix(mix(a, b), c), e);
}

/// Converts a word to a uniform double in [0, 1).
constexpr double u01(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

/// Converts a word to a uniform double in the open interval (0, 1);
/// safe to pass through log().
constexpr double u01_open(std::uint64_t word) {
  return (static_cast<double>(word >> 12) + 0.5) * 0x1.0p-52;
}

/// The sequential generator used for sampling: splitmix64 with the canonical
/// odd gamma. One Stream per (seed, trial); consumers draw in a fixed order,
/// so identical inputs replay identical realizations.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGamma;
    return finalize(state_);
  }

  double uniform() { return u01(next()); }
  double uniform_open() { return u01_open(next()); }

 private:
  std::uint64_t state_;
};

/// Stateless per-pair uniform used by the coupled sampler: a fixed hash of
/// (seed, trial, idA, idB), idA < idB. Shared across beta values, which makes
/// realized edge sets monotone in beta.
constexpr double pair_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t id_a,
                              std::uint64_t id_b) {
  return u01(mix(seed, trial, id_a, id_b));
}

}  // namespace lrp::rng
