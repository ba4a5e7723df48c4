#pragma once

#include <cstdint>

namespace docel {

// xoshiro256** seeded through splitmix64. Self-contained so that a given
// seed yields the same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  // Uniform in [0, n); n must be positive. Uses rejection to stay unbiased.
  std::uint64_t below(std::uint64_t n);

  // Uniform in [0, 1) with 53 bits of precision.
  double unit();

  bool chance(double p) { return unit() < p; }

  // Uniform in [lo, hi]; lo must not exceed hi.
  std::int64_t range(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t s_[4];
};

}  // namespace docel
