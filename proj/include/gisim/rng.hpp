#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace gisim {

// SplitMix64 step: advances `state` and returns the next 64-bit output.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic seeded generator. All randomized behavior in the library is a
// pure function of the seed handed to one of these.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() { return splitmix64(state_); }

  // Uniform value in [0, bound). Rejection sampling keeps it unbiased.
  uint64_t below(uint64_t bound) {
    // threshold = 2^64 mod bound; values under it would bias the result.
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // In-place Fisher-Yates shuffle; identical output on every platform.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace gisim
