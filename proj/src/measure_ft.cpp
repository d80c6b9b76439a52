#include "gausswig/measure_ft.hpp"

#include <cmath>

#include "gausswig/gaussian.hpp"

namespace gausswig {

ConcreteMeasure ConcreteMeasure::atomic(std::vector<std::vector<double>> atoms,
                                        std::vector<cplx> weights) {
  if (atoms.empty() || atoms.size() != weights.size())
    throw std::invalid_argument("measure: atoms and weights must match and be nonempty");
  const std::size_t d = atoms.front().size();
  for (const auto& a : atoms)
    if (a.size() != d) throw std::invalid_argument("measure: atoms of mixed dimension");
  for (const cplx& w : weights)
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
      throw std::invalid_argument("measure: non-finite weight");
  ConcreteMeasure mu;
  mu.kind = Kind::Atomic;
  mu.atoms = std::move(atoms);
  mu.weights = std::move(weights);
  return mu;
}

ConcreteMeasure ConcreteMeasure::gaussian(std::vector<double> mean, std::vector<double> covariance) {
  if (mean.size() != covariance.size() || mean.empty())
    throw std::invalid_argument("measure: mean and covariance must match and be nonempty");
  for (double c : covariance)
    if (!(c > 0.0)) throw std::invalid_argument("measure: covariance entries must be positive");
  ConcreteMeasure mu;
  mu.kind = Kind::GaussianMeasure;
  mu.mean = std::move(mean);
  mu.covariance = std::move(covariance);
  return mu;
}

int ConcreteMeasure::dim() const {
  return kind == Kind::Atomic ? static_cast<int>(atoms.front().size())
                              : static_cast<int>(mean.size());
}

bool ConcreteMeasure::is_positive() const {
  if (kind == Kind::GaussianMeasure) return true;
  for (const cplx& w : weights)
    if (w.imag() != 0.0 || w.real() < 0.0) return false;
  return true;
}

double ConcreteMeasure::total_mass() const {
  if (kind == Kind::GaussianMeasure) return 1.0;
  double m = 0.0;
  for (const cplx& w : weights) m += w.real();
  return m;
}

TestFunctional TestFunctional::linear(std::vector<double> v) {
  TestFunctional f;
  f.kind = Kind::Linear;
  f.vec = std::move(v);
  double mod = 0.0;
  for (double c : f.vec) mod += c * c;
  f.modulus = std::sqrt(mod);
  return f;
}

TestFunctional TestFunctional::sampled(int dim, std::function<double(std::span<const double>)> fn,
                                       double modulus) {
  if (dim < 1 || !fn) throw std::invalid_argument("functional: sampled kind needs dim and callable");
  TestFunctional f;
  f.kind = Kind::Sampled;
  f.fn = std::move(fn);
  f.modulus = modulus;
  f.sampled_dim = dim;
  return f;
}

double TestFunctional::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim())
    throw std::invalid_argument("functional: argument dimension mismatch");
  if (kind == Kind::Linear) {
    double s = 0.0;
    for (std::size_t i = 0; i < vec.size(); ++i) s += vec[i] * x[i];
    return s;
  }
  return fn(x);
}

TestFunctional TestFunctional::scaled(double a) const {
  if (kind == Kind::Linear) {
    std::vector<double> v = vec;
    for (double& c : v) c *= a;
    return linear(std::move(v));
  }
  auto self = *this;
  return sampled(sampled_dim, [self, a](std::span<const double> x) { return a * self.eval(x); },
                 std::abs(a) * modulus);
}

TestFunctional TestFunctional::minus(const TestFunctional& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("functional: dimension mismatch");
  if (kind == Kind::Linear && other.kind == Kind::Linear) {
    std::vector<double> v = vec;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= other.vec[i];
    return linear(std::move(v));
  }
  auto a = *this;
  auto b = other;
  return sampled(dim(), [a, b](std::span<const double> x) { return a.eval(x) - b.eval(x); },
                 a.modulus + b.modulus);
}

namespace {

// Tensor trapezoid quadrature of g against the Gaussian measure, dim <= 2,
// 8 sigma radius per axis.
cplx gaussian_quadrature(const ConcreteMeasure& mu,
                         const std::function<cplx(std::span<const double>)>& g) {
  const int d = mu.dim();
  if (d > 2) throw capacity_error("ft: quadrature against Gaussian measures supports dim <= 2");
  const int n = 256;
  std::vector<std::vector<double>> nodes(d), wts(d);
  for (int a = 0; a < d; ++a) {
    const double sigma = std::sqrt(mu.covariance[a]);
    const double h = 16.0 * sigma / n;
    nodes[a].resize(n);
    wts[a].resize(n);
    const GaussianParams ga(mu.covariance[a]);
    for (int j = 0; j < n; ++j) {
      const double x = (j - n / 2) * h;
      nodes[a][j] = mu.mean[a] + x;
      wts[a][j] = h * gaussian_density(ga, x);
    }
  }
  cplx acc{0.0, 0.0};
  std::vector<double> pt(d);
  if (d == 1) {
    for (int j = 0; j < n; ++j) {
      pt[0] = nodes[0][j];
      acc += wts[0][j] * g(pt);
    }
  } else {
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        pt[0] = nodes[0][j];
        pt[1] = nodes[1][k];
        acc += wts[0][j] * wts[1][k] * g(pt);
      }
  }
  return acc;
}

}  // namespace

cplx ft(const ConcreteMeasure& mu, const TestFunctional& f) {
  if (f.dim() != mu.dim()) throw std::invalid_argument("ft: functional/measure dimension mismatch");
  if (mu.kind == ConcreteMeasure::Kind::Atomic) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
      const double v = f.eval(mu.atoms[j]);
      acc += mu.weights[j] * cplx{std::cos(v), std::sin(v)};
    }
    return acc;
  }
  if (f.kind == TestFunctional::Kind::Linear) {
    // e^{i <mean, q> - 1/2 <K q, q>}
    double im = 0.0, re = 0.0;
    for (std::size_t i = 0; i < f.vec.size(); ++i) {
      im += mu.mean[i] * f.vec[i];
      re -= 0.5 * mu.covariance[i] * f.vec[i] * f.vec[i];
    }
    return std::exp(re) * cplx{std::cos(im), std::sin(im)};
  }
  return gaussian_quadrature(mu, [&f](std::span<const double> x) {
    const double v = f.eval(x);
    return cplx{std::cos(v), std::sin(v)};
  });
}

cplx pairing(const ConcreteMeasure& mu, const TestFunctional& f) {
  if (f.dim() != mu.dim()) throw std::invalid_argument("pairing: dimension mismatch");
  if (mu.kind == ConcreteMeasure::Kind::Atomic) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < mu.atoms.size(); ++j) acc += mu.weights[j] * f.eval(mu.atoms[j]);
    return acc;
  }
  if (f.kind == TestFunctional::Kind::Linear) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.vec.size(); ++i) s += mu.mean[i] * f.vec[i];
    return {s, 0.0};
  }
  return gaussian_quadrature(mu, [&f](std::span<const double> x) { return cplx{f.eval(x), 0.0}; });
}

BoundsCheck bounds_check(const ConcreteMeasure& mu, const TestFunctional& f,
                         const TestFunctional& h) {
  if (!mu.is_positive()) throw std::invalid_argument("bounds_check: measure must be positive");
  const double mass = mu.total_mass();
  const cplx ff = ft(mu, f);
  const cplx fh = ft(mu, h);
  const cplx fdiff = ft(mu, f.minus(h));
  BoundsCheck r{};
  r.lhs = std::norm(ff - fh);
  r.rhs = 2.0 * mass * (mass - fdiff.real());
  r.ft_abs = std::abs(ff);
  r.mass = mass;
  r.holds = r.lhs <= r.rhs + 1e-12 && r.ft_abs <= mass + 1e-12;
  return r;
}

cplx recover_pairing(const ConcreteMeasure& mu, const TestFunctional& f, double step) {
  if (!(step > 0.0)) throw std::domain_error("recover_pairing: step must be positive");
  const cplx plus = ft(mu, f.scaled(step));
  const cplx minus = ft(mu, f.scaled(-step));
  return (plus - minus) / (cplx{0.0, 2.0} * step);
}

}  // namespace gausswig
