#pragma once
// Counter-based splitmix64 generator.  State advances by a fixed odd gamma and
// the output is a bijective avalanche mix of the counter, so jumping to an
// arbitrary stream (one per lattice cell, sample batch, ...) is just a reseed.
// All stochastic code in the library draws from this type; given the same
// master seed the full pipeline is reproducible bit for bit.

#include <cstdint>

namespace critlang {

inline constexpr const char* kRngVersion = "splitmix64-1";

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() { return mix(state_ += 0x9e3779b97f4a7c15ULL); }

  // uniform double in [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // unbiased integer in [0, n); Lemire multiply-shift with rejection
  std::uint64_t uniform_below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t t = (0 - n) % n;
      while (lo < t) {
        m = static_cast<unsigned __int128>(next()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // independent child stream; pure function of (current state, index), so
  // parallel workers can derive their streams without coordination
  SplitMix64 split(std::uint64_t index) const {
    return SplitMix64(mix(state_ ^ mix(index + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace critlang
