#pragma once

#include <cstdint>
#include <limits>

namespace spanlab {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Stream key for item `index` under `seed`; distinct (seed, index) pairs give
// statistically independent streams.
inline constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL));
}

// Counter-based generator: the i-th output is a pure function of (key, i), so a
// sample depends only on its key and never on scheduling.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  constexpr CounterRng(std::uint64_t seed, std::uint64_t index) : key_(stream_key(seed, index)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_);
  }

  // Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., bound-1}; Lemire's multiply-and-reject.
  constexpr std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 prod = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        prod = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

  constexpr bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// One uniform deviate keyed by (seed, index); used when each item needs a
// single independent draw.
inline constexpr double keyed_uniform(std::uint64_t seed, std::uint64_t index) {
  return CounterRng(seed, index).uniform();
}

}  // namespace spanlab
