#include "gausswig/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>

namespace gausswig {

namespace {

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

bool same_grid(const Grid& a, const Grid& b, double rel) {
  if (a.rank() != b.rank()) return false;
  for (int i = 0; i < a.rank(); ++i) {
    if (a.axes[i].n != b.axes[i].n) return false;
    if (!close(a.axes[i].h, b.axes[i].h, rel)) return false;
  }
  return true;
}

bool MeasureTag::operator==(const MeasureTag& o) const {
  if (kind != o.kind || variances.size() != o.variances.size()) return false;
  for (std::size_t i = 0; i < variances.size(); ++i)
    if (!close(variances[i], o.variances[i], 1e-12)) return false;
  return true;
}

MeasureTag lebesgue_tag() { return {MeasureKind::Lebesgue, {}}; }

MeasureTag gaussian_tag(const TraceClassSpectrum& s, int m, int repeats) {
  s.require_dims(m);
  MeasureTag tag{MeasureKind::Gaussian, {}};
  tag.variances.reserve(static_cast<std::size_t>(m) * repeats);
  for (int r = 0; r < repeats; ++r)
    for (int k = 0; k < m; ++k) tag.variances.push_back(s[k]);
  return tag;
}

MeasureTag gamma2_tag(const TraceClassSpectrum& s, int m) {
  s.require_dims(m);
  MeasureTag tag{MeasureKind::PhaseWeighted, {}};
  for (int k = 0; k < m; ++k) tag.variances.push_back(0.5);
  for (int k = 0; k < m; ++k) tag.variances.push_back(1.0 / (8.0 * s[k] * s[k]));
  return tag;
}

void GridArray::check_finite(const char* what) const {
  for (const cplx& z : values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument(std::string(what) + ": non-finite sample");
}

Grid make_grid(int m, int points, double radius_sigmas, std::span<const double> scales) {
  if (m < 1) throw std::invalid_argument("make_grid: dims must be positive");
  if (!is_pow2(points) || points < 8) throw config_error("make_grid: points must be a power of two >= 8");
  if (!(radius_sigmas > 0.0)) throw config_error("make_grid: radius must be positive");
  if (static_cast<int>(scales.size()) != m) throw std::invalid_argument("make_grid: one scale per axis");
  Grid g;
  g.axes.reserve(m);
  for (int k = 0; k < m; ++k) {
    const double sigma = scales[k];
    g.axes.push_back(Axis{points, 2.0 * radius_sigmas * sigma / points, sigma});
  }
  return g;
}

Grid state_grid(const TraceClassSpectrum& s, int m, int points, double radius_sigmas) {
  s.require_dims(m);
  std::vector<double> scales(m);
  for (int k = 0; k < m; ++k) scales[k] = std::sqrt(s[k]);
  return make_grid(m, points, radius_sigmas, scales);
}

Grid kernel_grid(const Grid& state) {
  Grid g = state;
  g.axes.insert(g.axes.end(), state.axes.begin(), state.axes.end());
  return g;
}

Axis dual_axis(const Axis& a) {
  Axis d;
  d.n = a.n;
  d.h = kTwoPi / (a.n * a.h);
  d.scale = d.h * a.n / 16.0;  // nominal: dual radius / 8
  return d;
}

Grid weyl_symbol_grid(const Grid& state) {
  Grid g = state;
  for (const Axis& a : state.axes) g.axes.push_back(dual_axis(a));
  return g;
}

Grid gamma_symbol_grid(const TraceClassSpectrum& s, const Grid& state) {
  const int m = state.rank();
  s.require_dims(m);
  Grid g;
  for (int k = 0; k < m; ++k) {
    const double rt = std::sqrt(s[k]);
    g.axes.push_back(Axis{state.axes[k].n, state.axes[k].h / rt, 1.0});
  }
  for (int k = 0; k < m; ++k) {
    const Axis& a = state.axes[k];
    const double rt = std::sqrt(s[k]);
    g.axes.push_back(Axis{a.n, kTwoPi / (a.n * a.h * rt), 1.0 / (2.0 * s[k])});
  }
  return g;
}

bool dual_coupled(const Grid& g, int m, double rel) {
  if (g.rank() != 2 * m) return false;
  for (int k = 0; k < m; ++k) {
    const Axis& x = g.axes[k];
    const Axis& xi = g.axes[m + k];
    if (x.n != xi.n) return false;
    if (!close(x.h * xi.h * x.n, kTwoPi, rel)) return false;
  }
  return true;
}

int default_points(int base_points, int m) {
  int p = base_points;
  for (int i = 1; i < m; ++i) p /= 2;
  return std::max(p, 16);
}

std::vector<std::vector<double>> quadrature_weights(const Grid& g, const MeasureTag& tag) {
  const bool weighted = tag.kind != MeasureKind::Lebesgue;
  if (weighted && static_cast<int>(tag.variances.size()) != g.rank())
    throw std::invalid_argument("quadrature_weights: tag/grid rank mismatch");
  std::vector<std::vector<double>> w(g.rank());
  for (int a = 0; a < g.rank(); ++a) {
    const Axis& ax = g.axes[a];
    w[a].resize(ax.n);
    for (int j = 0; j < ax.n; ++j) {
      double wt = ax.h;
      if (weighted) wt *= gaussian_density(GaussianParams(tag.variances[a]), ax.node(j));
      w[a][j] = wt;
    }
  }
  return w;
}

namespace {

double node_weight(const std::vector<std::vector<double>>& w, const MultiIndex& it) {
  double p = 1.0;
  for (std::size_t a = 0; a < w.size(); ++a) p *= w[a][it[static_cast<int>(a)]];
  return p;
}

}  // namespace

cplx inner_product(const GridArray& f, const GridArray& g) {
  if (!same_grid(f.grid, g.grid)) throw std::invalid_argument("inner_product: grid mismatch");
  if (!(f.measure == g.measure)) throw std::invalid_argument("inner_product: measure tag mismatch");
  const auto w = quadrature_weights(f.grid, f.measure);
  cplx acc{0.0, 0.0};
  for (MultiIndex it(f.grid.shape()); it.valid(); it.next())
    acc += f.values[it.flat()] * std::conj(g.values[it.flat()]) * node_weight(w, it);
  return acc;
}

double norm(const GridArray& f) {
  const auto w = quadrature_weights(f.grid, f.measure);
  double acc = 0.0;
  for (MultiIndex it(f.grid.shape()); it.valid(); it.next())
    acc += std::norm(f.values[it.flat()]) * node_weight(w, it);
  return std::sqrt(std::max(acc, 0.0));
}

cplx integral(const GridArray& f) {
  const auto w = quadrature_weights(f.grid, f.measure);
  cplx acc{0.0, 0.0};
  for (MultiIndex it(f.grid.shape()); it.valid(); it.next())
    acc += f.values[it.flat()] * node_weight(w, it);
  return acc;
}

Kernel rank_one_kernel(const GridFn& phi, const GridFn& psi) {
  if (!same_grid(phi.grid, psi.grid) || !(phi.measure == psi.measure))
    throw std::invalid_argument("rank_one_kernel: states must share grid and measure");
  phi.check_finite("rank_one_kernel");
  psi.check_finite("rank_one_kernel");
  Kernel k;
  k.m = phi.dims();
  k.grid = kernel_grid(phi.grid);
  k.measure = phi.measure;
  k.measure.variances.insert(k.measure.variances.end(), phi.measure.variances.begin(),
                             phi.measure.variances.end());
  k.values.resize(k.grid.size());
  const std::int64_t n = phi.grid.size();
  for (std::int64_t i = 0; i < n; ++i) {
    const cplx vi = phi.values[i];
    cplx* row = k.values.data() + i * n;
    for (std::int64_t j = 0; j < n; ++j) row[j] = vi * std::conj(psi.values[j]);
  }
  return k;
}

GridFn apply_kernel(const Kernel& k, const GridFn& phi) {
  const int m = k.m;
  Grid vgrid{{k.grid.axes.begin(), k.grid.axes.begin() + m}};
  Grid wgrid{{k.grid.axes.begin() + m, k.grid.axes.end()}};
  if (!same_grid(wgrid, phi.grid)) throw std::invalid_argument("apply_kernel: grid mismatch");
  MeasureTag wtag{k.measure.kind, {}};
  if (k.measure.kind != MeasureKind::Lebesgue)
    wtag.variances.assign(k.measure.variances.begin() + m, k.measure.variances.end());
  if (!(wtag == phi.measure)) throw std::invalid_argument("apply_kernel: measure tag mismatch");
  k.check_finite("apply_kernel");

  const auto w = quadrature_weights(phi.grid, phi.measure);
  const std::int64_t nw = phi.grid.size();
  std::vector<double> wt(nw);
  for (MultiIndex it(phi.grid.shape()); it.valid(); it.next()) wt[it.flat()] = node_weight(w, it);

  GridFn out;
  out.grid = vgrid;
  out.measure = phi.measure;
  if (k.measure.kind != MeasureKind::Lebesgue)
    out.measure.variances.assign(k.measure.variances.begin(), k.measure.variances.begin() + m);
  const std::int64_t nv = vgrid.size();
  out.values.assign(nv, cplx{0.0, 0.0});
  for (std::int64_t i = 0; i < nv; ++i) {
    const cplx* row = k.values.data() + i * nw;
    cplx acc{0.0, 0.0};
    for (std::int64_t j = 0; j < nw; ++j) acc += row[j] * phi.values[j] * wt[j];
    out.values[i] = acc;
  }
  return out;
}

cplx hs_inner(const Kernel& k1, const Kernel& k2) { return inner_product(k1, k2); }

double hs_norm(const Kernel& k) { return norm(k); }

double hermite_poly(int n, double x) {
  // Probabilists' recurrence He_{n+1} = x He_n - n He_{n-1}.
  if (n < 0) throw std::invalid_argument("hermite_poly: negative degree");
  double hm = 1.0, h = x;
  if (n == 0) return hm;
  for (int k = 1; k < n; ++k) {
    const double hn = x * h - k * hm;
    hm = h;
    h = hn;
  }
  return h;
}

GridFn hermite_state(const TraceClassSpectrum& s, std::span<const int> alpha, const Grid& grid) {
  const int m = grid.rank();
  if (static_cast<int>(alpha.size()) > m)
    throw std::invalid_argument("hermite_state: more indices than grid axes");
  s.require_dims(m);
  for (int a : alpha)
    if (a < 0) throw std::invalid_argument("hermite_state: negative index");

  std::vector<std::vector<double>> factors(m);
  for (int k = 0; k < m; ++k) {
    const int deg = k < static_cast<int>(alpha.size()) ? alpha[k] : 0;
    double fact = 1.0;
    for (int j = 2; j <= deg; ++j) fact *= j;
    const double inv = 1.0 / std::sqrt(fact);
    const double rt = std::sqrt(s[k]);
    factors[k].resize(grid.axes[k].n);
    for (int j = 0; j < grid.axes[k].n; ++j)
      factors[k][j] = hermite_poly(deg, grid.axes[k].node(j) / rt) * inv;
  }

  GridFn f;
  f.grid = grid;
  f.measure = gaussian_tag(s, m);
  f.values.resize(grid.size());
  for (MultiIndex it(grid.shape()); it.valid(); it.next()) {
    double v = 1.0;
    for (int k = 0; k < m; ++k) v *= factors[k][it[k]];
    f.values[it.flat()] = v;
  }
  return f;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_csv(const GridArray& a, std::span<const std::string> axis_names, const std::string& path) {
  if (static_cast<int>(axis_names.size()) != a.grid.rank())
    throw std::invalid_argument("write_csv: one name per axis");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  for (std::size_t i = 0; i < axis_names.size(); ++i) out << axis_names[i] << ',';
  out << "re,im\n";
  for (MultiIndex it(a.grid.shape()); it.valid(); it.next()) {
    for (int ax = 0; ax < a.grid.rank(); ++ax) out << fmt_double(a.grid.axes[ax].node(it[ax])) << ',';
    const cplx z = a.values[it.flat()];
    out << fmt_double(z.real()) << ',' << fmt_double(z.imag()) << '\n';
  }
}

std::vector<std::string> symbol_axis_names(int m) {
  std::vector<std::string> names;
  for (int k = 1; k <= m; ++k) names.push_back("x" + std::to_string(k));
  for (int k = 1; k <= m; ++k) names.push_back("xi" + std::to_string(k));
  return names;
}

std::vector<std::string> kernel_axis_names(int m) {
  std::vector<std::string> names;
  for (int k = 1; k <= m; ++k) names.push_back("x" + std::to_string(k));
  for (int k = 1; k <= m; ++k) names.push_back("y" + std::to_string(k));
  return names;
}

std::vector<std::string> state_axis_names(int m) {
  std::vector<std::string> names;
  for (int k = 1; k <= m; ++k) names.push_back("x" + std::to_string(k));
  return names;
}

}  // namespace gausswig
