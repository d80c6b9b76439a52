#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "gausswig/common.hpp"

namespace gausswig {

// Eigenvalue sequence t_0 >= t_1 >= ... > 0 of the variance operator,
// truncated to a finite list.  The omitted tail only ever acts through the
// vacuum-extension convention of the tower, so its sum is recorded but
// never enters a formula.
//
// Coordinate conventions fixed here and used everywhere:
//   * group parameters (the V_+ side) are eigencoordinates w.r.t. v_k,
//   * points of the Gaussian L^2 space (the V_- side) are coordinates
//     w.r.t. the orthonormal basis e_k = t_k^{-1} v_k,
// which gives the pairings (e_j|v_k)_0 = delta_jk and (v_j|v_k)_0 =
// t_k delta_jk, and makes the measure a product of gamma_{t_k}.
class TraceClassSpectrum {
 public:
  explicit TraceClassSpectrum(std::vector<double> values, double declared_tail = 0.0)
      : values_(std::move(values)), declared_tail_(declared_tail) {
    if (values_.empty()) throw std::invalid_argument("spectrum: empty eigenvalue list");
    if (declared_tail_ < 0.0) throw std::invalid_argument("spectrum: negative declared tail");
    double prev = values_.front();
    for (double t : values_) {
      if (!(t > 0.0)) throw std::invalid_argument("spectrum: eigenvalues must be positive");
      if (t > prev) throw std::invalid_argument("spectrum: eigenvalues must be nonincreasing");
      prev = t;
    }
  }

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int k) const { return values_.at(static_cast<std::size_t>(k)); }
  const std::vector<double>& values() const { return values_; }
  double declared_tail() const { return declared_tail_; }

  double trace() const {
    double s = declared_tail_;
    for (double t : values_) s += t;
    return s;
  }

  void require_dims(int m) const {
    if (m < 0 || m > size()) throw std::invalid_argument("spectrum: truncation exceeds eigenvalue list");
  }

 private:
  std::vector<double> values_;
  double declared_tail_;
};

// Variance of a single scalar Gaussian factor.
struct GaussianParams {
  double variance;
  explicit GaussianParams(double t) : variance(t) {
    if (!(t > 0.0)) throw std::domain_error("gaussian: variance must be positive");
  }
};

// The product measure gamma_{t_1} x ... x gamma_{t_m} at truncation m.
class ProductGaussian {
 public:
  ProductGaussian(TraceClassSpectrum spectrum, int dims)
      : spectrum_(std::move(spectrum)), dims_(dims) {
    if (dims_ < 1) throw std::invalid_argument("product gaussian: dims must be positive");
    spectrum_.require_dims(dims_);
  }

  int dims() const { return dims_; }
  double variance(int k) const { return spectrum_[k]; }
  const TraceClassSpectrum& spectrum() const { return spectrum_; }

 private:
  TraceClassSpectrum spectrum_;
  int dims_;
};

}  // namespace gausswig
