#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "gausswig/common.hpp"
#include "gausswig/gaussian.hpp"
#include "gausswig/spectrum.hpp"

namespace gausswig {

// One uniform symmetric axis: nodes x_j = (j - n/2) h for j = 0..n-1.
// `scale` is the natural decay scale sigma used for sizing and shift limits.
struct Axis {
  int n = 0;
  double h = 0.0;
  double scale = 1.0;

  double node(int j) const { return (j - n / 2) * h; }
  double radius() const { return 0.5 * n * h; }
};

struct Grid {
  std::vector<Axis> axes;

  int rank() const { return static_cast<int>(axes.size()); }
  std::vector<int> shape() const {
    std::vector<int> s(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) s[a] = axes[a].n;
    return s;
  }
  std::int64_t size() const {
    std::int64_t n = 1;
    for (const Axis& a : axes) n *= a.n;
    return n;
  }
};

bool same_grid(const Grid& a, const Grid& b, double rel = 1e-12);

// Row-major multi-index walker over a shape.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> shape)
      : shape_(std::move(shape)), idx_(shape_.size(), 0), flat_(0) {
    total_ = 1;
    for (int e : shape_) total_ *= e;
  }
  bool valid() const { return flat_ < total_; }
  void next() {
    ++flat_;
    for (int a = static_cast<int>(shape_.size()) - 1; a >= 0; --a) {
      if (++idx_[a] < shape_[a]) return;
      idx_[a] = 0;
    }
  }
  int operator[](int a) const { return idx_[a]; }
  std::int64_t flat() const { return flat_; }
  const std::vector<int>& coords() const { return idx_; }

 private:
  std::vector<int> shape_, idx_;
  std::int64_t total_, flat_;
};

enum class MeasureKind { Lebesgue, Gaussian, PhaseWeighted };

// Quadrature measure attached to a sampled object.  `variances` holds one
// entry per grid axis for the weighted kinds (Gaussian: t_k per axis;
// PhaseWeighted: 1/2 on position axes, 1/(8 t_k^2) on frequency axes) and
// is empty for Lebesgue.
struct MeasureTag {
  MeasureKind kind = MeasureKind::Lebesgue;
  std::vector<double> variances;

  bool operator==(const MeasureTag& o) const;
};

MeasureTag lebesgue_tag();
MeasureTag gaussian_tag(const TraceClassSpectrum& s, int m, int repeats = 1);
MeasureTag gamma2_tag(const TraceClassSpectrum& s, int m);

// Shared storage for sampled functions, kernels and symbols.
struct GridArray {
  Grid grid;
  MeasureTag measure;
  std::vector<cplx> values;

  std::int64_t size() const { return grid.size(); }
  void check_finite(const char* what) const;
};

// A sampled function on m axes.
struct GridFn : GridArray {
  int dims() const { return grid.rank(); }
};

// A sampled integral kernel K(v, w): axes 0..m-1 are v, axes m..2m-1 are w.
struct Kernel : GridArray {
  int m = 0;
};

// A sampled phase-space symbol a(x, xi): axes 0..m-1 are x, m..2m-1 are xi.
struct Symbol : GridArray {
  int m = 0;
};

// ---- grid builders ------------------------------------------------------

// State grid: axis k spans radius_sigmas * sqrt(t_k) around 0.
Grid make_grid(int m, int points, double radius_sigmas, std::span<const double> scales);
Grid state_grid(const TraceClassSpectrum& s, int m, int points, double radius_sigmas = 10.0);

// Kernel grid: the state axes, duplicated for the second argument.
Grid kernel_grid(const Grid& state);

// Symbol grid feeding the Weyl-calculus transform: position axes equal the
// state axes, frequency axes are their FFT duals, h_xi = 2 pi / (n h_x).
Grid weyl_symbol_grid(const Grid& state);

// Symbol grid on the phase-space side of the diagonal rescaling: position
// axes have spacing h_x / sqrt(t_k) (natural scale 1), frequency axes
// 2 pi / (n h_x sqrt(t_k)) (natural scale 1 / (2 t_k)).
Grid gamma_symbol_grid(const TraceClassSpectrum& s, const Grid& state);

Axis dual_axis(const Axis& a);
bool dual_coupled(const Grid& g, int m, double rel = 1e-9);

// Per-axis default resolution: dense objects carry 2m axes, so the point
// budget halves with each extra dimension (64 / 32 / 16 for m = 1 / 2 / 3).
int default_points(int base_points, int m);

// ---- quadrature ---------------------------------------------------------

// Per-axis quadrature weights for the tagged measure (trapezoid on a
// uniform grid; the end corrections are below the Gaussian tail and are
// dropped).
std::vector<std::vector<double>> quadrature_weights(const Grid& g, const MeasureTag& tag);

// <f, g>, conjugate-linear in the second argument, under f's tagged measure.
cplx inner_product(const GridArray& f, const GridArray& g);
double norm(const GridArray& f);

// Total integral of f against its tagged measure.
cplx integral(const GridArray& f);

// ---- kernels ------------------------------------------------------------

// K(v, w) = phi(v) conj(psi(w)).
Kernel rank_one_kernel(const GridFn& phi, const GridFn& psi);

// (K phi)(v) = integral K(v, w) phi(w) dmu(w)  with K's tagged measure.
GridFn apply_kernel(const Kernel& k, const GridFn& phi);

cplx hs_inner(const Kernel& k1, const Kernel& k2);
double hs_norm(const Kernel& k);

// ---- hermite states -----------------------------------------------------

// Orthonormal family in L^2 of the product Gaussian:
//   h_alpha(v) = prod_k He_{alpha_k}(v_k / sqrt(t_k)) / sqrt(alpha_k!)
// with probabilists' Hermite polynomials.  alpha = 0 is the vacuum.
GridFn hermite_state(const TraceClassSpectrum& s, std::span<const int> alpha, const Grid& grid);
double hermite_poly(int n, double x);

// ---- export -------------------------------------------------------------

// One row per node: coordinate columns per axis, then re, im.  Values are
// printed with shortest round-trip formatting.
void write_csv(const GridArray& a, std::span<const std::string> axis_names, const std::string& path);
std::vector<std::string> symbol_axis_names(int m);   // x1..xm, xi1..xim
std::vector<std::string> kernel_axis_names(int m);   // x1..xm, y1..ym
std::vector<std::string> state_axis_names(int m);    // x1..xm

}  // namespace gausswig
