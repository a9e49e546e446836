#pragma once

// Counter-based generator: the n-th output of stream s under seed k is a pure
// function of (k, s, n), so substreams can be drawn in any order and still
// combine to the same totals.

#include <cmath>
#include <cstdint>

namespace sv {

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64_mix(seed ^ splitmix64_mix(stream + kGolden))) {}

  std::uint64_t at(std::uint64_t counter) const { return splitmix64_mix(key_ + (counter + 1) * kGolden); }

  std::uint64_t next_u64() { return at(counter_++); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard exponential.
  double exponential() { return -std::log1p(-uniform01()); }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sv
