#pragma once

#include <cstdint>

namespace sinrsim {

// Counter-based splittable random streams. Every draw is a pure function of
// (master seed, station id, round, salt), so transmission decisions are
// order-independent and a trial replays bit-identically from its seed alone.
// The mixer is the SplitMix64 finalizer, applied to the combined counter.

namespace rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a + kGolden + (b << 1));
}

/// 64-bit word for (seed, station, round, salt).
inline std::uint64_t word(std::uint64_t seed, std::uint64_t station,
                          std::uint64_t round, std::uint64_t salt) {
  std::uint64_t h = mix64(seed + kGolden);
  h = combine(h, station);
  h = combine(h, round);
  h = combine(h, salt);
  return h;
}

/// Uniform double in [0,1) from the top 53 bits of a word.
inline double to_unit(std::uint64_t w) {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

inline double unit(std::uint64_t seed, std::uint64_t station,
                   std::uint64_t round, std::uint64_t salt) {
  return to_unit(word(seed, station, round, salt));
}

/// Sequential stream with the same mixer; used where a plain generator is
/// enough (topology sampling, test data). Not order-independent, but fully
/// determined by its seed and platform-stable.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  double next_unit() { return to_unit(next_u64()); }

  /// Uniform in [lo, hi).
  double next_range(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    // Multiply-shift; bias is negligible for the n used here (n << 2^32).
    return static_cast<std::uint64_t>(next_unit() * static_cast<double>(n));
  }

 private:
  std::uint64_t state_;
};

}  // namespace rng

/// Per-round Bernoulli draws for station transmit decisions.
struct RoundRng {
  std::uint64_t master = 0;

  bool transmits(int station, std::int64_t round, double prob) const {
    if (prob <= 0.0) return false;
    if (prob >= 1.0) return true;
    return rng::unit(master, static_cast<std::uint64_t>(station),
                     static_cast<std::uint64_t>(round), /*salt=*/0) < prob;
  }
};

}  // namespace sinrsim
