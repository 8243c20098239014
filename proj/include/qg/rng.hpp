#pragma once

#include <cstdint>
#include <random>

// mt19937_64 is bit-exact across platforms by the standard; the distributions
// are not, so bounded draws are done here by rejection.

namespace qg {

struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  std::uint64_t next() { return eng(); }

  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t x;
    do {
      x = eng();
    } while (x > limit);
    return x % n;
  }
};

}  // namespace qg
