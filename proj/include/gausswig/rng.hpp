#pragma once

#include <cmath>
#include <cstdint>

#include "gausswig/common.hpp"

namespace gausswig {

// Deterministic 64-bit generator (splitmix64 core).  The standard-library
// distributions are not byte-stable across implementations, so uniform and
// normal draws are produced here directly; identical seeds give identical
// streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; one value per call, no cached state.
  double normal() {
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  cplx unit_phase() {
    const double a = kTwoPi * uniform();
    return {std::cos(a), std::sin(a)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace gausswig
