#include "gausswig/weyl.hpp"

#include <algorithm>
#include <cmath>

#include "gausswig/fft.hpp"
#include "gausswig/parallel.hpp"

namespace gausswig {

namespace {

std::vector<std::int64_t> row_major_strides(const std::vector<int>& shape) {
  std::vector<std::int64_t> st(shape.size(), 1);
  for (int a = static_cast<int>(shape.size()) - 2; a >= 0; --a)
    st[a] = st[a + 1] * shape[a + 1];
  return st;
}

// Enumerates base offsets for all index settings of the axes other than
// (axis_a, axis_b).
std::vector<std::int64_t> slice_bases(const std::vector<int>& shape, int axis_a, int axis_b) {
  const auto st = row_major_strides(shape);
  std::vector<int> rest_axes;
  for (int a = 0; a < static_cast<int>(shape.size()); ++a)
    if (a != axis_a && a != axis_b) rest_axes.push_back(a);
  std::vector<int> rest_shape;
  for (int a : rest_axes) rest_shape.push_back(shape[a]);
  std::vector<std::int64_t> bases;
  if (rest_shape.empty()) return {0};
  for (MultiIndex it(rest_shape); it.valid(); it.next()) {
    std::int64_t off = 0;
    for (std::size_t i = 0; i < rest_axes.size(); ++i)
      off += static_cast<std::int64_t>(it[static_cast<int>(i)]) * st[rest_axes[i]];
    bases.push_back(off);
  }
  return bases;
}

// Forward transform of one (x, xi) slice: a[i][l] -> K[j][k], both n x n.
// h is the x spacing, h_xi the xi spacing; h * h_xi * n = 2 pi.
void t_forward_slice(const cplx* a, cplx* K, int n, double h_xi) {
  std::vector<int> shape{n, n};
  std::vector<cplx> buf(a, a + static_cast<std::size_t>(n) * n);
  auto up = fft::upsample2_axis(buf, shape, 0);
  up = fft::upsample2_axis(up, shape, 1);
  const int n2 = 2 * n;

  // g(p, r) = sum_q A2(p, q) e^{+i v_r Xi_q}
  //         = (-1)^r IDFT_{2n}[(-1)^q A2(p, .)](r)
  for (int p = 0; p < n2; ++p) {
    cplx* row = up.data() + static_cast<std::int64_t>(p) * n2;
    for (int q = 1; q < n2; q += 2) row[q] = -row[q];
    fft::transform(row, n2, true);
    for (int r = 1; r < n2; r += 2) row[r] = -row[r];
  }

  const double c = std::pow(kTwoPi, -0.5) * 0.5 * h_xi;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      K[static_cast<std::int64_t>(j) * n + k] =
          c * up[static_cast<std::int64_t>(j + k) * n2 + (j - k + n)];
}

// Inverse transform of one (x, y) slice: K[j][k] -> a[i][l].
void t_inverse_slice(const cplx* K, cplx* a, int n, double h) {
  std::vector<int> shape{n, n};
  std::vector<cplx> buf(K, K + static_cast<std::size_t>(n) * n);
  auto up = fft::upsample2_axis(buf, shape, 0);
  up = fft::upsample2_axis(up, shape, 1);
  const int n2 = 2 * n;

  const double c = std::pow(kTwoPi, -0.5) * h;
  std::vector<cplx> line(n2);
  for (int i = 0; i < n; ++i) {
    // G(i, r) = K2(x_i + v_r/2, x_i - v_r/2), zero outside the grid.
    for (int r = 0; r < n2; ++r) {
      const int p = 2 * i + r - n;
      const int q = 2 * i - r + n;
      line[r] = (p >= 0 && p < n2 && q >= 0 && q < n2)
                    ? up[static_cast<std::int64_t>(p) * n2 + q]
                    : cplx{0.0, 0.0};
    }
    // g(i, q) = (-1)^q DFT_{2n}[(-1)^r G(i, .)](q); keep the even bins.
    for (int r = 1; r < n2; r += 2) line[r] = -line[r];
    fft::transform(line.data(), n2, false);
    for (int l = 0; l < n; ++l) {
      const int q = 2 * l;
      a[static_cast<std::int64_t>(i) * n + l] = c * line[q];  // (-1)^q = +1 for even q
    }
  }
}

void check_weyl_symbol(const Symbol& a) {
  if (a.measure.kind != MeasureKind::Lebesgue)
    throw std::invalid_argument("t_forward: symbol must be Lebesgue-tagged");
  if (!dual_coupled(a.grid, a.m))
    throw config_error("t_forward: grid axes are not FFT-dual coupled (h_x h_xi n != 2 pi)");
}

void check_lebesgue_kernel(const Kernel& k, const char* who) {
  if (k.measure.kind != MeasureKind::Lebesgue)
    throw std::invalid_argument(std::string(who) + ": kernel must be Lebesgue-tagged");
  for (int j = 0; j < k.m; ++j) {
    if (k.grid.axes[j].n != k.grid.axes[k.m + j].n ||
        std::abs(k.grid.axes[j].h - k.grid.axes[k.m + j].h) > 1e-12 * k.grid.axes[j].h)
      throw std::invalid_argument(std::string(who) + ": kernel argument grids differ");
  }
}

}  // namespace

Kernel t_forward(const Symbol& a) {
  check_weyl_symbol(a);
  const int m = a.m;
  Kernel out;
  out.m = m;
  Grid state{{a.grid.axes.begin(), a.grid.axes.begin() + m}};
  out.grid = kernel_grid(state);
  out.measure = lebesgue_tag();
  out.values.assign(a.values.size(), cplx{0.0, 0.0});

  std::vector<cplx> cur = a.values;
  std::vector<cplx> next(cur.size());
  const auto shape = a.grid.shape();
  for (int pair = 0; pair < m; ++pair) {
    const int n = a.grid.axes[pair].n;
    const double h_xi = a.grid.axes[m + pair].h;
    const auto bases = slice_bases(shape, pair, m + pair);
    const auto st = row_major_strides(shape);
    const std::int64_t sa = st[pair], sb = st[m + pair];
    parallel_for(static_cast<std::int64_t>(bases.size()), [&](std::int64_t bi) {
      std::vector<cplx> in(static_cast<std::size_t>(n) * n), res(static_cast<std::size_t>(n) * n);
      const std::int64_t base = bases[bi];
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          in[static_cast<std::int64_t>(i) * n + l] = cur[base + i * sa + l * sb];
      t_forward_slice(in.data(), res.data(), n, h_xi);
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          next[base + i * sa + l * sb] = res[static_cast<std::int64_t>(i) * n + l];
    });
    std::swap(cur, next);
  }
  out.values = std::move(cur);
  return out;
}

Symbol t_inverse(const Kernel& k) {
  check_lebesgue_kernel(k, "t_inverse");
  const int m = k.m;
  Symbol out;
  out.m = m;
  Grid state{{k.grid.axes.begin(), k.grid.axes.begin() + m}};
  out.grid = weyl_symbol_grid(state);
  out.measure = lebesgue_tag();

  std::vector<cplx> cur = k.values;
  std::vector<cplx> next(cur.size());
  const auto shape = k.grid.shape();
  for (int pair = 0; pair < m; ++pair) {
    const int n = k.grid.axes[pair].n;
    const double h = k.grid.axes[pair].h;
    const auto bases = slice_bases(shape, pair, m + pair);
    const auto st = row_major_strides(shape);
    const std::int64_t sa = st[pair], sb = st[m + pair];
    parallel_for(static_cast<std::int64_t>(bases.size()), [&](std::int64_t bi) {
      std::vector<cplx> in(static_cast<std::size_t>(n) * n), res(static_cast<std::size_t>(n) * n);
      const std::int64_t base = bases[bi];
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          in[static_cast<std::int64_t>(i) * n + l] = cur[base + i * sa + l * sb];
      t_inverse_slice(in.data(), res.data(), n, h);
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          next[base + i * sa + l * sb] = res[static_cast<std::int64_t>(i) * n + l];
    });
    std::swap(cur, next);
  }
  out.values = std::move(cur);
  return out;
}

namespace {

// ---- reference path: same discretization, written as explicit sums -------

// Band-limited interpolation of an n-sample line at half-integer index
// positions, via plain DFT sums with the Nyquist bin split between +-n/2.
std::vector<cplx> upsample2_line_direct(const std::vector<cplx>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<cplx> spec(n);
  for (int k = 0; k < n; ++k) {
    cplx acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      const double ang = -kTwoPi * i * k / n;
      acc += x[i] * cplx{std::cos(ang), std::sin(ang)};
    }
    spec[k] = acc;
  }
  std::vector<cplx> out(2 * n);
  for (int p = 0; p < 2 * n; ++p) {
    const double tau = 0.5 * p;
    cplx acc{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      const int f = (k < n / 2) ? k : k - n;  // centered frequency
      const double w = (k == n / 2) ? 0.5 : 1.0;
      const double ang = kTwoPi * f * tau / n;
      acc += w * spec[k] * cplx{std::cos(ang), std::sin(ang)};
      if (k == n / 2) {  // other half of the Nyquist bin at +n/2
        const double ang2 = kTwoPi * (n / 2) * tau / n;
        acc += 0.5 * spec[k] * cplx{std::cos(ang2), std::sin(ang2)};
      }
    }
    out[p] = acc / static_cast<double>(n);
  }
  return out;
}

std::vector<cplx> upsample2_grid_direct(const std::vector<cplx>& a, int n) {
  // rows first
  std::vector<cplx> tmp(static_cast<std::size_t>(2 * n) * n);
  std::vector<cplx> line(n);
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) line[i] = a[static_cast<std::int64_t>(i) * n + l];
    auto up = upsample2_line_direct(line);
    for (int p = 0; p < 2 * n; ++p) tmp[static_cast<std::int64_t>(p) * n + l] = up[p];
  }
  std::vector<cplx> out(static_cast<std::size_t>(2 * n) * 2 * n);
  std::vector<cplx> row(n);
  for (int p = 0; p < 2 * n; ++p) {
    for (int l = 0; l < n; ++l) row[l] = tmp[static_cast<std::int64_t>(p) * n + l];
    auto up = upsample2_line_direct(row);
    for (int q = 0; q < 2 * n; ++q) out[static_cast<std::int64_t>(p) * 2 * n + q] = up[q];
  }
  return out;
}

void t_forward_slice_direct(const cplx* a, cplx* K, int n, double h_xi) {
  std::vector<cplx> buf(a, a + static_cast<std::size_t>(n) * n);
  auto up = upsample2_grid_direct(buf, n);
  const int n2 = 2 * n;
  const double c = std::pow(kTwoPi, -0.5) * 0.5 * h_xi;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const int p = j + k;
      const int r = j - k + n;
      cplx acc{0.0, 0.0};
      for (int q = 0; q < n2; ++q) {
        const double ang = kTwoPi * (r - n) * (q - n) / n2;
        acc += up[static_cast<std::int64_t>(p) * n2 + q] * cplx{std::cos(ang), std::sin(ang)};
      }
      K[static_cast<std::int64_t>(j) * n + k] = c * acc;
    }
}

void t_inverse_slice_direct(const cplx* K, cplx* a, int n, double h) {
  std::vector<cplx> buf(K, K + static_cast<std::size_t>(n) * n);
  auto up = upsample2_grid_direct(buf, n);
  const int n2 = 2 * n;
  const double c = std::pow(kTwoPi, -0.5) * h;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      cplx acc{0.0, 0.0};
      for (int r = 0; r < n2; ++r) {
        const int p = 2 * i + r - n;
        const int q = 2 * i - r + n;
        if (p < 0 || p >= n2 || q < 0 || q >= n2) continue;
        const double ang = -kTwoPi * (r - n) * (2 * l - n) / n2;
        acc += up[static_cast<std::int64_t>(p) * n2 + q] * cplx{std::cos(ang), std::sin(ang)};
      }
      a[static_cast<std::int64_t>(i) * n + l] = c * acc;
    }
}

template <typename SliceFn>
std::vector<cplx> apply_pairwise(const std::vector<cplx>& values, const std::vector<int>& shape,
                                 int m, const std::vector<double>& pair_param, SliceFn slice) {
  std::vector<cplx> cur = values;
  std::vector<cplx> next(cur.size());
  for (int pair = 0; pair < m; ++pair) {
    const int n = shape[pair];
    const auto bases = slice_bases(shape, pair, m + pair);
    const auto st = row_major_strides(shape);
    const std::int64_t sa = st[pair], sb = st[m + pair];
    for (std::int64_t base : bases) {
      std::vector<cplx> in(static_cast<std::size_t>(n) * n), res(static_cast<std::size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          in[static_cast<std::int64_t>(i) * n + l] = cur[base + i * sa + l * sb];
      slice(in.data(), res.data(), n, pair_param[pair]);
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          next[base + i * sa + l * sb] = res[static_cast<std::int64_t>(i) * n + l];
    }
    std::swap(cur, next);
  }
  return cur;
}

}  // namespace

Kernel t_forward_direct(const Symbol& a) {
  check_weyl_symbol(a);
  const int m = a.m;
  Kernel out;
  out.m = m;
  Grid state{{a.grid.axes.begin(), a.grid.axes.begin() + m}};
  out.grid = kernel_grid(state);
  out.measure = lebesgue_tag();
  std::vector<double> hxi(m);
  for (int k = 0; k < m; ++k) hxi[k] = a.grid.axes[m + k].h;
  out.values = apply_pairwise(a.values, a.grid.shape(), m, hxi, t_forward_slice_direct);
  return out;
}

Symbol t_inverse_direct(const Kernel& k) {
  check_lebesgue_kernel(k, "t_inverse_direct");
  const int m = k.m;
  Symbol out;
  out.m = m;
  Grid state{{k.grid.axes.begin(), k.grid.axes.begin() + m}};
  out.grid = weyl_symbol_grid(state);
  out.measure = lebesgue_tag();
  std::vector<double> hs(m);
  for (int j = 0; j < m; ++j) hs[j] = k.grid.axes[j].h;
  out.values = apply_pairwise(k.values, k.grid.shape(), m, hs, t_inverse_slice_direct);
  return out;
}

namespace {

Symbol s_scale_impl(const Symbol& b, const TraceClassSpectrum& s, ScaleVariant variant, bool inverse) {
  if (b.measure.kind != MeasureKind::Lebesgue)
    throw std::invalid_argument("s_scale: symbol must be Lebesgue-tagged");
  s.require_dims(b.m);
  Symbol out = b;
  double amp = 1.0;
  for (int k = 0; k < b.m; ++k) {
    const double t = s[k];
    double axis_factor, amp_factor;
    switch (variant) {
      case ScaleVariant::corrected:
        axis_factor = std::sqrt(t);
        amp_factor = 1.0 / std::sqrt(t);
        break;
      case ScaleVariant::printed:
        axis_factor = t;
        amp_factor = 1.0 / (t * t);
        break;
      default:
        throw std::invalid_argument("s_scale: unknown variant");
    }
    if (inverse) {
      axis_factor = 1.0 / axis_factor;
      amp_factor = 1.0 / amp_factor;
    }
    amp *= amp_factor;
    for (int block : {0, 1}) {
      Axis& ax = out.grid.axes[block * b.m + k];
      ax.h *= axis_factor;
      ax.scale *= axis_factor;
    }
  }
  for (cplx& z : out.values) z *= amp;
  return out;
}

}  // namespace

Symbol s_scale(const Symbol& b, const TraceClassSpectrum& s, ScaleVariant variant) {
  return s_scale_impl(b, s, variant, false);
}

Symbol s_scale_inverse(const Symbol& b, const TraceClassSpectrum& s, ScaleVariant variant) {
  return s_scale_impl(b, s, variant, true);
}

Kernel u_reweight(const Kernel& k, const TraceClassSpectrum& s, ReweightDirection direction) {
  s.require_dims(k.m);
  const bool to_gaussian = direction == ReweightDirection::lebesgue_to_gaussian;
  if (to_gaussian && k.measure.kind != MeasureKind::Lebesgue)
    throw std::invalid_argument("u_reweight: expected a Lebesgue-tagged kernel");
  if (!to_gaussian && k.measure.kind != MeasureKind::Gaussian)
    throw std::invalid_argument("u_reweight: expected a Gaussian-tagged kernel");

  // Per-axis factors gamma_{t_k}(x)^{-1/2} (or its reciprocal).
  std::vector<std::vector<double>> fac(2 * k.m);
  for (int a = 0; a < 2 * k.m; ++a) {
    const Axis& ax = k.grid.axes[a];
    const GaussianParams g(s[a % k.m]);
    fac[a].resize(ax.n);
    for (int j = 0; j < ax.n; ++j) {
      const double d = std::sqrt(gaussian_density(g, ax.node(j)));
      fac[a][j] = to_gaussian ? 1.0 / d : d;
    }
  }

  Kernel out;
  out.m = k.m;
  out.grid = k.grid;
  out.measure = to_gaussian ? gaussian_tag(s, k.m, 2) : lebesgue_tag();
  out.values.resize(k.values.size());
  for (MultiIndex it(k.grid.shape()); it.valid(); it.next()) {
    double f = 1.0;
    for (int a = 0; a < 2 * k.m; ++a) f *= fac[a][it[a]];
    out.values[it.flat()] = k.values[it.flat()] * f;
  }
  return out;
}

namespace {

template <typename T>
T tensor_blocks(const T& f1, const T& f2, const char* who) {
  if (f1.measure.kind != MeasureKind::Lebesgue || f2.measure.kind != MeasureKind::Lebesgue)
    throw std::invalid_argument(std::string(who) + ": factors must be Lebesgue-tagged");
  const int m1 = f1.m, m2 = f2.m, m = m1 + m2;
  if (m > 3) throw capacity_error(std::string(who) + ": dense tensors support m <= 3");
  f1.check_finite(who);
  f2.check_finite(who);
  T out;
  out.m = m;
  out.measure = lebesgue_tag();
  for (int j = 0; j < m1; ++j) out.grid.axes.push_back(f1.grid.axes[j]);
  for (int j = 0; j < m2; ++j) out.grid.axes.push_back(f2.grid.axes[j]);
  for (int j = 0; j < m1; ++j) out.grid.axes.push_back(f1.grid.axes[m1 + j]);
  for (int j = 0; j < m2; ++j) out.grid.axes.push_back(f2.grid.axes[m2 + j]);
  out.values.resize(out.grid.size());
  const auto sh1 = f1.grid.shape();
  const auto st1 = row_major_strides(sh1);
  const auto sh2 = f2.grid.shape();
  const auto st2 = row_major_strides(sh2);
  for (MultiIndex it(out.grid.shape()); it.valid(); it.next()) {
    std::int64_t i1 = 0, i2 = 0;
    for (int j = 0; j < m1; ++j) i1 += static_cast<std::int64_t>(it[j]) * st1[j];
    for (int j = 0; j < m2; ++j) i2 += static_cast<std::int64_t>(it[m1 + j]) * st2[j];
    for (int j = 0; j < m1; ++j) i1 += static_cast<std::int64_t>(it[m + j]) * st1[m1 + j];
    for (int j = 0; j < m2; ++j) i2 += static_cast<std::int64_t>(it[m + m1 + j]) * st2[m2 + j];
    out.values[it.flat()] = f1.values[i1] * f2.values[i2];
  }
  return out;
}

// Appends one axis pair with per-node factors fa (first block) and fb
// (second block); constant extension when the factors are all-ones.
template <typename T>
T append_axis_pair(const T& in, const Axis& ax_a, const Axis& ax_b, const std::vector<double>& fa,
                   const std::vector<double>& fb, const MeasureTag& out_tag) {
  T out;
  out.m = in.m + 1;
  out.measure = out_tag;
  out.grid.axes.assign(in.grid.axes.begin(), in.grid.axes.begin() + in.m);
  out.grid.axes.push_back(ax_a);
  out.grid.axes.insert(out.grid.axes.end(), in.grid.axes.begin() + in.m, in.grid.axes.end());
  out.grid.axes.push_back(ax_b);
  out.values.resize(out.grid.size());
  const auto in_shape = in.grid.shape();
  const auto in_st = row_major_strides(in_shape);
  const int m = in.m;
  for (MultiIndex it(out.grid.shape()); it.valid(); it.next()) {
    std::int64_t src = 0;
    for (int j = 0; j < m; ++j) src += static_cast<std::int64_t>(it[j]) * in_st[j];
    for (int j = 0; j < m; ++j) src += static_cast<std::int64_t>(it[m + 1 + j]) * in_st[m + j];
    out.values[it.flat()] = in.values[src] * fa[it[m]] * fb[it[2 * m + 1]];
  }
  return out;
}

std::vector<double> sqrt_gaussian_profile(const Axis& ax, double variance) {
  std::vector<double> f(ax.n);
  const GaussianParams g(variance);
  for (int j = 0; j < ax.n; ++j) f[j] = std::sqrt(gaussian_density(g, ax.node(j)));
  return f;
}

}  // namespace

Symbol tensor_symbols(const Symbol& g1, const Symbol& g2) {
  return tensor_blocks(g1, g2, "tensor_symbols");
}

Kernel tensor_kernels(const Kernel& f1, const Kernel& f2) {
  return tensor_blocks(f1, f2, "tensor_kernels");
}

Symbol extend_symbol(const Symbol& b, ExtensionKind kind, const TraceClassSpectrum& s,
                     double radius_sigmas, int points) {
  if (kind != ExtensionKind::alpha && kind != ExtensionKind::beta)
    throw std::invalid_argument("extend_symbol: kind must be alpha or beta");
  if (b.measure.kind != MeasureKind::Lebesgue)
    throw std::invalid_argument("extend_symbol: symbol must be Lebesgue-tagged");
  if (b.m + 1 > 3) throw capacity_error("extend_symbol: dense symbols support m <= 3");
  s.require_dims(b.m + 1);
  const double t = s[b.m];
  if (points == 0) points = b.grid.axes[0].n;
  if (radius_sigmas <= 0.0) radius_sigmas = b.grid.axes[0].radius() / b.grid.axes[0].scale;

  const TraceClassSpectrum tail({t});
  const Grid st1 = state_grid(tail, 1, points, radius_sigmas);
  Grid pair_grid;
  double var_a, var_b;
  if (kind == ExtensionKind::beta) {
    pair_grid = gamma_symbol_grid(tail, st1);
    var_a = 0.5;
    var_b = 1.0 / (8.0 * t * t);
  } else {
    pair_grid = weyl_symbol_grid(st1);
    var_a = 0.5 * t;
    var_b = 1.0 / (8.0 * t);
  }
  const auto fa = sqrt_gaussian_profile(pair_grid.axes[0], var_a);
  const auto fb = sqrt_gaussian_profile(pair_grid.axes[1], var_b);
  return append_axis_pair(b, pair_grid.axes[0], pair_grid.axes[1], fa, fb, lebesgue_tag());
}

Kernel extend_kernel(const Kernel& k, ExtensionKind kind, const TraceClassSpectrum& s,
                     double radius_sigmas, int points) {
  if (kind != ExtensionKind::eta && kind != ExtensionKind::iota)
    throw std::invalid_argument("extend_kernel: kind must be eta or iota");
  if (k.m + 1 > 3) throw capacity_error("extend_kernel: dense kernels support m <= 3");
  s.require_dims(k.m + 1);
  const double t = s[k.m];
  if (points == 0) points = k.grid.axes[0].n;
  if (radius_sigmas <= 0.0) radius_sigmas = k.grid.axes[0].radius() / k.grid.axes[0].scale;

  const TraceClassSpectrum tail({t});
  const Axis ax = state_grid(tail, 1, points, radius_sigmas).axes[0];
  if (kind == ExtensionKind::eta) {
    if (k.measure.kind != MeasureKind::Lebesgue)
      throw std::invalid_argument("extend_kernel: eta expects a Lebesgue-tagged kernel");
    const auto f = sqrt_gaussian_profile(ax, t);
    return append_axis_pair(k, ax, ax, f, f, lebesgue_tag());
  }
  if (k.measure.kind != MeasureKind::Gaussian)
    throw std::invalid_argument("extend_kernel: iota expects a Gaussian-tagged kernel");
  const std::vector<double> ones(ax.n, 1.0);
  return append_axis_pair(k, ax, ax, ones, ones, gaussian_tag(s, k.m + 1, 2));
}

namespace {

// || S_1^{variant}((gamma_{1/2} (x) gamma_{1/(8t^2)})^{1/2})
//    - (gamma_{t/2} (x) gamma_{1/(8t)})^{1/2} ||  on the appended axis pair,
// with the rescaled factor evaluated in closed form.  The printed variant
// dilates the two sides onto incompatible grids, so the top square can only
// be measured this way; for the corrected variant it agrees with the dense
// path (residual 0 up to roundoff).
double top_factor_residual(double t, const Axis& ax_x, const Axis& ax_xi, ScaleVariant variant) {
  const double arg_scale = variant == ScaleVariant::corrected ? std::sqrt(t) : t;
  const double amp = variant == ScaleVariant::corrected ? 1.0 / std::sqrt(t) : 1.0 / (t * t);
  const GaussianParams gx_beta(0.5), gxi_beta(1.0 / (8.0 * t * t));
  const GaussianParams gx_alpha(0.5 * t), gxi_alpha(1.0 / (8.0 * t));
  double acc = 0.0;
  for (int i = 0; i < ax_x.n; ++i) {
    const double x = ax_x.node(i);
    for (int l = 0; l < ax_xi.n; ++l) {
      const double xi = ax_xi.node(l);
      const double lhs = amp * std::sqrt(gaussian_density(gx_beta, x / arg_scale) *
                                         gaussian_density(gxi_beta, xi / arg_scale));
      const double rhs =
          std::sqrt(gaussian_density(gx_alpha, x) * gaussian_density(gxi_alpha, xi));
      acc += sqr(lhs - rhs) * ax_x.h * ax_xi.h;
    }
  }
  return std::sqrt(acc);
}

}  // namespace

DiagramResiduals diagram_residual(int m, const Symbol& b, const TraceClassSpectrum& s,
                                  ScaleVariant variant, int new_axis_points,
                                  double new_axis_radius) {
  if (m != 2 && m != 3) throw capacity_error("diagram_residual: m must be 2 or 3");
  if (b.m != m - 1) throw std::invalid_argument("diagram_residual: b must have m-1 dimensions");
  s.require_dims(m);
  const int np = new_axis_points == 0 ? b.grid.axes[0].n : new_axis_points;
  const double nr =
      new_axis_radius <= 0.0 ? b.grid.axes[0].radius() / b.grid.axes[0].scale : new_axis_radius;

  const auto diff_norm = [](const GridArray& x, const GridArray& y) {
    GridArray d = x;
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= y.values[i];
    return norm(d);
  };

  DiagramResiduals res{};
  // top square
  if (variant == ScaleVariant::corrected) {
    const Symbol lhs_top = s_scale(extend_symbol(b, ExtensionKind::beta, s, nr, np), s, variant);
    const Symbol rhs_top = extend_symbol(s_scale(b, s, variant), ExtensionKind::alpha, s, nr, np);
    res.top = diff_norm(lhs_top, rhs_top);
  } else {
    const TraceClassSpectrum tail({s[m - 1]});
    const Grid pair = weyl_symbol_grid(state_grid(tail, 1, np, nr));
    res.top = norm(s_scale(b, s, variant)) *
              top_factor_residual(s[m - 1], pair.axes[0], pair.axes[1], variant);
  }

  // middle and bottom squares involve no S, so they are computed from the
  // corrected picture in both modes
  const Symbol a_ok = s_scale(b, s, ScaleVariant::corrected);
  const Kernel lhs_mid = t_forward(extend_symbol(a_ok, ExtensionKind::alpha, s, nr, np));
  const Kernel k_small = t_forward(a_ok);
  const Kernel rhs_mid = extend_kernel(k_small, ExtensionKind::eta, s, nr, np);
  res.middle = diff_norm(lhs_mid, rhs_mid);

  const Kernel lhs_bot = u_reweight(extend_kernel(k_small, ExtensionKind::eta, s, nr, np), s,
                                    ReweightDirection::lebesgue_to_gaussian);
  const Kernel rhs_bot = extend_kernel(
      u_reweight(k_small, s, ReweightDirection::lebesgue_to_gaussian), ExtensionKind::iota, s, nr,
      np);
  res.bottom = diff_norm(lhs_bot, rhs_bot);
  return res;
}

}  // namespace gausswig
