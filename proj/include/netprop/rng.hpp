#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace netprop {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic random stream. Streams derived from (seed, index) are
/// independent, so sample paths distributed over threads reproduce the
/// serial run bit for bit.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  RngStream(std::uint64_t seed, std::uint64_t stream_index)
      : gen_(splitmix64(splitmix64(seed) ^ splitmix64(stream_index + 0x632BE59BD9B4E019ULL))) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in {0, ..., n-1}; n must be positive.
  int uniform_index(int n) {
    const auto wide = static_cast<unsigned __int128>(gen_());
    return static_cast<int>((wide * static_cast<unsigned __int128>(n)) >> 64);
  }

  /// Standard exponential variate (rate 1).
  double exponential() { return -std::log1p(-uniform()); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace netprop
