#pragma once

#include <cstdint>

namespace gisim {

inline constexpr uint64_t kMersenne61 = (1ull << 61) - 1;

// Prime-field element with wraparound arithmetic. For the Mersenne prime
// 2^61-1 the reduction is a shift-add fold instead of a 128-bit divide.
template <uint64_t P>
struct Fp {
  uint64_t v = 0;

  constexpr Fp() = default;
  constexpr explicit Fp(uint64_t x) : v(x % P) {}

  static constexpr Fp from_raw(uint64_t x) {
    Fp f;
    f.v = x;
    return f;
  }

  constexpr uint64_t raw() const { return v; }

  friend constexpr Fp operator+(Fp a, Fp b) {
    uint64_t s = a.v + b.v;
    if (s >= P) s -= P;
    return from_raw(s);
  }

  friend constexpr Fp operator-(Fp a, Fp b) {
    uint64_t s = a.v + P - b.v;
    if (s >= P) s -= P;
    return from_raw(s);
  }

  friend constexpr Fp operator*(Fp a, Fp b) {
    unsigned __int128 z = static_cast<unsigned __int128>(a.v) * b.v;
    if constexpr (P == kMersenne61) {
      // Fold high and low 61-bit halves; one conditional subtract suffices
      // because canonical inputs keep the folded sum below 2P.
      uint64_t lo = static_cast<uint64_t>(z) & P;
      uint64_t hi = static_cast<uint64_t>(z >> 61);
      uint64_t s = lo + hi;
      if (s >= P) s -= P;
      return from_raw(s);
    } else {
      return from_raw(static_cast<uint64_t>(z % P));
    }
  }

  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }

  friend constexpr bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend constexpr bool operator!=(Fp a, Fp b) { return a.v != b.v; }
};

using F61 = Fp<kMersenne61>;

}  // namespace gisim
