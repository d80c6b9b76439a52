#pragma once

#include <cmath>
#include <span>

#include "gausswig/common.hpp"
#include "gausswig/spectrum.hpp"

namespace gausswig {

// gamma_t(x) = (2 pi t)^{-1/2} exp(-x^2 / 2t), the centered density with
// variance t.
inline double gaussian_density(const GaussianParams& p, double x) {
  const double t = p.variance;
  return std::sqrt(1.0 / (kTwoPi * t)) * std::exp(-x * x / (2.0 * t));
}

// Characteristic function of gamma_t:  integral gamma_t(x) e^{ivx} dx
// = exp(-t v^2 / 2).
inline double gaussian_char(const GaussianParams& p, double v) {
  return std::exp(-0.5 * p.variance * v * v);
}

inline double product_density(const ProductGaussian& g, std::span<const double> point) {
  if (static_cast<int>(point.size()) != g.dims())
    throw std::invalid_argument("product_density: dimension mismatch");
  double d = 1.0;
  for (int k = 0; k < g.dims(); ++k)
    d *= gaussian_density(GaussianParams(g.variance(k)), point[k]);
  return d;
}

// Density of the measure translated by the shift with eigencoordinates xi
// against the untranslated one, evaluated at the point with coordinates v:
//
//   rho_x(v) = exp( sum_k v_k xi_k - 1/2 sum_k t_k xi_k^2 ),
//
// the coordinate form of exp((.|x)_0 - 1/2 (x|x)_0) under the pairings
// fixed in spectrum.hpp.  Translation covariance
// int f rho_x dgamma = int f(. + x) dgamma is checked by quadrature tests.
inline double cameron_martin_density(const TraceClassSpectrum& s, std::span<const double> xi,
                                     std::span<const double> v) {
  if (xi.size() != v.size()) throw std::invalid_argument("cameron_martin_density: dimension mismatch");
  s.require_dims(static_cast<int>(xi.size()));
  double e = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k)
    e += v[k] * xi[k] - 0.5 * s[static_cast<int>(k)] * xi[k] * xi[k];
  return std::exp(e);
}

// Characteristic functional exp(i (a|x)_- - 1/2 (Kx|x)_-) in the
// orthonormal V_- coordinates, where K is diagonal with entries t_k.
inline cplx char_functional(const TraceClassSpectrum& s, std::span<const double> mean,
                            std::span<const double> x) {
  if (mean.size() != x.size()) throw std::invalid_argument("char_functional: dimension mismatch");
  s.require_dims(static_cast<int>(x.size()));
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    im += mean[k] * x[k];
    re -= 0.5 * s[static_cast<int>(k)] * x[k] * x[k];
  }
  return std::exp(re) * cplx{std::cos(im), std::sin(im)};
}

enum class ScaleVariant { corrected, printed };

// The one-dimensional rescaling law behind the diagonal scaling map.  The
// corrected form
//
//     a * gamma_t(a x) = gamma_{t/a^2}(x)
//
// is an identity of the density formula; the printed variant
// a^{1/2} gamma_t(a x) = gamma_{t/a}(x) matches it only at x = 0 and is
// kept so the discrepancy stays measurable.
inline double scale_identity_residual(double t, double a, std::span<const double> sample_points,
                                      ScaleVariant variant = ScaleVariant::corrected) {
  if (!(t > 0.0) || !(a > 0.0)) throw std::domain_error("scale_identity_residual: t, a must be positive");
  const GaussianParams gt(t);
  double worst = 0.0;
  for (double x : sample_points) {
    double lhs, rhs;
    if (variant == ScaleVariant::corrected) {
      lhs = a * gaussian_density(gt, a * x);
      rhs = gaussian_density(GaussianParams(t / (a * a)), x);
    } else {
      lhs = std::sqrt(a) * gaussian_density(gt, a * x);
      rhs = gaussian_density(GaussianParams(t / a), x);
    }
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace gausswig
