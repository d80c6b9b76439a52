#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gausswig {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Raised when a request exceeds the dense-grid budget (m > 3 tensors,
// oversized tensor products, tower levels beyond the spectrum).
struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised for malformed run configurations (CLI exit status 2).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline double sqr(double x) { return x * x; }

}  // namespace gausswig
