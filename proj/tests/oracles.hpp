#pragma once

// Test-side oracles, independent of the library's quadrature and transform
// paths: Gauss-Hermite rules via Golub-Welsch, and a symbolic Gram-Schmidt
// on monomials against exact Gaussian moments.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracles {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes and weights for integration against the standard normal density:
// eigenvalues of the Jacobi matrix of the probabilists' Hermite recurrence
// (diagonal 0, off-diagonal sqrt(k)), weights from the first eigenvector
// components.  Plain QL iteration with implicit shifts.
inline Rule gauss_hermite_rule(int n) {
  std::vector<double> d(n, 0.0), e(n, 0.0);
  for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(static_cast<double>(k));
  // z holds the first row of the accumulating orthogonal transform
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-15 * dd) break;
      }
      if (m == l) break;
      if (++iter > 50) throw std::runtime_error("gauss_hermite_rule: no convergence");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
      double s = 1.0, c = 1.0, p = 0.0;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (r == 0.0 && m - 1 >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }

  Rule rule;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d[order[j]] < d[order[i]]) std::swap(order[i], order[j]);
  for (int i : order) {
    rule.nodes.push_back(d[i]);
    rule.weights.push_back(z[i] * z[i]);
  }
  return rule;
}

// integral f(x) gamma_t(x) dx with a 64-point rule (exact for polynomial
// degree <= 127).
template <typename F>
double gauss_hermite_integral(F&& f, double t, int n = 64) {
  const Rule r = gauss_hermite_rule(n);
  const double rt = std::sqrt(t);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += r.weights[i] * f(rt * r.nodes[i]);
  return acc;
}

// Exact moments of gamma_t: E[x^(2k)] = t^k (2k-1)!!.
inline double gaussian_moment(double t, int degree) {
  if (degree % 2 == 1) return 0.0;
  double v = 1.0;
  for (int k = 1; k < degree; k += 2) v *= k;
  return v * std::pow(t, degree / 2);
}

// Gram-Schmidt on monomials 1, v, v^2, ... under the gamma_t inner product
// with exact moments; returns coefficient rows of the orthonormal family.
inline std::vector<std::vector<double>> orthonormal_polynomials(double t, int max_degree) {
  const int n = max_degree + 1;
  std::vector<std::vector<double>> basis;
  for (int deg = 0; deg < n; ++deg) {
    std::vector<double> coef(n, 0.0);
    coef[deg] = 1.0;
    for (const auto& prev : basis) {
      // <v^deg, prev> with exact moments
      double ip = 0.0;
      for (int j = 0; j < n; ++j)
        if (prev[j] != 0.0) ip += prev[j] * gaussian_moment(t, deg + j);
      for (int j = 0; j < n; ++j) coef[j] -= ip * prev[j];
    }
    double nn = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (coef[i] != 0.0 && coef[j] != 0.0) nn += coef[i] * coef[j] * gaussian_moment(t, i + j);
    const double inv = 1.0 / std::sqrt(nn);
    for (double& c : coef) c *= inv;
    basis.push_back(coef);
  }
  return basis;
}

inline double eval_poly(const std::vector<double>& coef, double x) {
  double acc = 0.0;
  for (int j = static_cast<int>(coef.size()) - 1; j >= 0; --j) acc = acc * x + coef[j];
  return acc;
}

}  // namespace oracles
