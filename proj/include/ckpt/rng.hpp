#ifndef CKPT_RNG_HPP
#define CKPT_RNG_HPP

#include <cstdint>

namespace ckpt {

// SplitMix64 as published by Steele, Lea & Flood ("Fast Splittable
// Pseudorandom Number Generators", OOPSLA 2014), with the constants of
// Sebastiano Vigna's public-domain reference implementation (2015).
// The generator and the substream scheme below are part of the output
// contract: changing either changes every simulated stream, so the
// constants are pinned here and by a golden-value test.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform draw on (0, 1]; never returns 0, so -log(u) is always finite.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
};

// Finalizer-only mix of SplitMix64, used to hash (seed, index) pairs.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Independent substream for one trial: hash the batch seed with the trial
// index so trials can run in any order or in parallel and still reproduce.
inline SplitMix64 trial_rng(std::uint64_t seed, std::uint64_t trial_index) {
  return SplitMix64(mix64(seed ^ mix64(trial_index + 0x9E3779B97F4A7C15ULL)));
}

}  // namespace ckpt

#endif  // CKPT_RNG_HPP
