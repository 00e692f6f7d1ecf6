#pragma once

#include <cstdint>
#include <random>

namespace clawfree::detail {

// mt19937_64 with hand-rolled range reduction, so sequences do not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [lo, hi], unbiased by rejection.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo;
    if (span == ~std::uint64_t{0}) return next();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range + 1) % range;
    std::uint64_t x;
    do x = next();
    while (x > limit);
    return lo + x % range;
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, n - 1)); }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace clawfree::detail
