#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gausswig/common.hpp"

namespace gausswig {

// Desk-scale stand-ins for generalized measures: finite atomic combinations
// with complex weights, and centered-or-shifted Gaussians with diagonal
// covariance.
struct ConcreteMeasure {
  enum class Kind { Atomic, GaussianMeasure };
  Kind kind = Kind::Atomic;

  // Atomic
  std::vector<std::vector<double>> atoms;
  std::vector<cplx> weights;

  // Gaussian
  std::vector<double> mean;
  std::vector<double> covariance;  // diagonal, entries > 0

  static ConcreteMeasure atomic(std::vector<std::vector<double>> atoms, std::vector<cplx> weights);
  static ConcreteMeasure gaussian(std::vector<double> mean, std::vector<double> covariance);

  int dim() const;
  bool is_positive() const;
  // <mu, 1>; only meaningful for positive measures.
  double total_mass() const;
};

// Real test functionals: linear forms and sampled callables with a declared
// uniform-continuity (Lipschitz) modulus.
struct TestFunctional {
  enum class Kind { Linear, Sampled };
  Kind kind = Kind::Linear;

  std::vector<double> vec;                                  // linear
  std::function<double(std::span<const double>)> fn;        // sampled
  double modulus = 0.0;
  int sampled_dim = 0;

  static TestFunctional linear(std::vector<double> v);
  static TestFunctional sampled(int dim, std::function<double(std::span<const double>)> fn,
                                double modulus);

  int dim() const { return kind == Kind::Linear ? static_cast<int>(vec.size()) : sampled_dim; }
  double eval(std::span<const double> x) const;

  TestFunctional scaled(double a) const;
  TestFunctional minus(const TestFunctional& other) const;
};

// (F mu)(f) = <mu, e^{i f}>.  Atomic measures pair with any functional;
// Gaussian measures pair with linear functionals in closed form and with
// sampled functionals by quadrature for dim <= 2.
cplx ft(const ConcreteMeasure& mu, const TestFunctional& f);

// Direct pairing <mu, f> (the oracle recover_pairing converges to).
cplx pairing(const ConcreteMeasure& mu, const TestFunctional& f);

struct BoundsCheck {
  double lhs;       // |F mu(f) - F mu(h)|^2
  double rhs;       // 2 <mu,1> (<mu,1> - Re F mu(f - h))
  double ft_abs;    // |F mu(f)|
  double mass;      // <mu, 1>
  bool holds;       // lhs <= rhs + 1e-12 and ft_abs <= mass + 1e-12
};

// Both bound assertions for a positive measure.
BoundsCheck bounds_check(const ConcreteMeasure& mu, const TestFunctional& f,
                         const TestFunctional& h);

// Central-difference recovery of <mu, f> from the transform,
// (F mu(s f) - F mu(-s f)) / (2 i s); error is O(s^2).
cplx recover_pairing(const ConcreteMeasure& mu, const TestFunctional& f, double step);

}  // namespace gausswig
