#include "gausswig/wigner.hpp"

#include <algorithm>
#include <cmath>

#include "gausswig/fft.hpp"

namespace gausswig {

std::vector<cplx> ambiguity(const GridFn& phi, const GridFn& psi, std::span<const PhasePoint> pts,
                            const TraceClassSpectrum& s, double shift_limit_sigmas) {
  if (!same_grid(phi.grid, psi.grid) || !(phi.measure == psi.measure))
    throw std::invalid_argument("ambiguity: states must share grid and measure");
  std::vector<cplx> out;
  out.reserve(pts.size());
  for (const PhasePoint& p : pts) {
    const GridFn moved = schrodinger_apply(exp_theta(p), phi, s, shift_limit_sigmas);
    out.push_back(inner_product(moved, psi));
  }
  return out;
}

Symbol wigner_transform(const GridFn& phi, const GridFn& psi, const TraceClassSpectrum& s) {
  if (phi.dims() > 3) throw capacity_error("wigner_transform: dense symbols support m <= 3");
  const Kernel k = rank_one_kernel(phi, psi);
  const Kernel leb = u_reweight(k, s, ReweightDirection::gaussian_to_lebesgue);
  const Symbol weyl = t_inverse(leb);
  return s_scale_inverse(weyl, s, ScaleVariant::corrected);
}

Kernel op_theta(const Symbol& a, const TraceClassSpectrum& s) {
  if (a.m > 3) throw capacity_error("op_theta: dense kernels support m <= 3");
  const Symbol leb = a.measure.kind == MeasureKind::PhaseWeighted ? gamma2_untag(a, s) : a;
  if (leb.measure.kind != MeasureKind::Lebesgue)
    throw std::invalid_argument("op_theta: symbol must be Lebesgue- or gamma2-tagged");
  leb.check_finite("op_theta");
  const Symbol weyl = s_scale(leb, s, ScaleVariant::corrected);
  const Kernel ker = t_forward(weyl);
  return u_reweight(ker, s, ReweightDirection::lebesgue_to_gaussian);
}

namespace {

// Square roots of the weight profile gamma_{1/2} / gamma_{1/(8 t_k^2)} per
// axis of a phase-space symbol grid.
std::vector<std::vector<double>> gamma2_profiles(const Symbol& a, const TraceClassSpectrum& s) {
  s.require_dims(a.m);
  std::vector<std::vector<double>> f(2 * a.m);
  for (int ax = 0; ax < 2 * a.m; ++ax) {
    const bool freq = ax >= a.m;
    const int k = freq ? ax - a.m : ax;
    const GaussianParams g(freq ? 1.0 / (8.0 * s[k] * s[k]) : 0.5);
    f[ax].resize(a.grid.axes[ax].n);
    for (int j = 0; j < a.grid.axes[ax].n; ++j)
      f[ax][j] = std::sqrt(gaussian_density(g, a.grid.axes[ax].node(j)));
  }
  return f;
}

}  // namespace

Symbol gamma2_retag(const Symbol& a, const TraceClassSpectrum& s) {
  if (a.measure.kind != MeasureKind::Lebesgue)
    throw std::invalid_argument("gamma2_retag: expected a Lebesgue-tagged symbol");
  const auto f = gamma2_profiles(a, s);
  Symbol out = a;
  out.measure = gamma2_tag(s, a.m);
  for (MultiIndex it(a.grid.shape()); it.valid(); it.next()) {
    double w = 1.0;
    for (int ax = 0; ax < 2 * a.m; ++ax) w *= f[ax][it[ax]];
    out.values[it.flat()] /= w;
  }
  return out;
}

Symbol gamma2_untag(const Symbol& a, const TraceClassSpectrum& s) {
  if (a.measure.kind != MeasureKind::PhaseWeighted)
    throw std::invalid_argument("gamma2_untag: expected a gamma2-tagged symbol");
  const auto f = gamma2_profiles(a, s);
  Symbol out = a;
  out.measure = lebesgue_tag();
  for (MultiIndex it(a.grid.shape()); it.valid(); it.next()) {
    double w = 1.0;
    for (int ax = 0; ax < 2 * a.m; ++ax) w *= f[ax][it[ax]];
    out.values[it.flat()] *= w;
  }
  return out;
}

cplx gamma2_inner(const Symbol& a, const Symbol& b, const TraceClassSpectrum& s) {
  s.require_dims(a.m);
  if (a.measure.kind != MeasureKind::PhaseWeighted || b.measure.kind != MeasureKind::PhaseWeighted)
    throw std::invalid_argument("gamma2_inner: both symbols must be gamma2-tagged");
  return inner_product(a, b);
}

cplx symbol_dual_pairing(const Symbol& a, const Symbol& w) {
  if (a.measure.kind != MeasureKind::Lebesgue || w.measure.kind != MeasureKind::Lebesgue)
    throw std::invalid_argument("symbol_dual_pairing: expected Lebesgue representatives");
  if (!same_grid(a.grid, w.grid)) throw std::invalid_argument("symbol_dual_pairing: grid mismatch");
  double hprod = 1.0;
  for (const Axis& ax : a.grid.axes) hprod *= ax.h;
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * w.values[i];
  return acc * hprod;
}

GridFn vacuum_state(const TraceClassSpectrum& s, const Grid& grid) {
  return hermite_state(s, {}, grid);
}

// ---- route through the ambiguity table -----------------------------------

namespace {

// State samples multiplied by the square root of the Gaussian density: the
// Lebesgue wavefunction of a Gaussian-tagged state.
std::vector<cplx> lebesgue_wavefunction(const GridFn& phi, const TraceClassSpectrum& s) {
  std::vector<cplx> out = phi.values;
  const int m = phi.dims();
  std::vector<std::vector<double>> f(m);
  for (int k = 0; k < m; ++k) {
    const GaussianParams g(s[k]);
    f[k].resize(phi.grid.axes[k].n);
    for (int j = 0; j < phi.grid.axes[k].n; ++j)
      f[k][j] = std::sqrt(gaussian_density(g, phi.grid.axes[k].node(j)));
  }
  for (MultiIndex it(phi.grid.shape()); it.valid(); it.next()) {
    double w = 1.0;
    for (int k = 0; k < m; ++k) w *= f[k][it[k]];
    out[it.flat()] *= w;
  }
  return out;
}

// All-axis padded spectrum of a state; shifted() returns band-limited
// translations sampled back on the original grid.
struct PaddedSpectrum {
  std::vector<int> shape;          // padded shape (2n per axis)
  std::vector<cplx> spec;          // forward FFT along every axis
  std::vector<double> h;           // original spacings

  PaddedSpectrum(std::vector<cplx> values, const Grid& grid) {
    shape = grid.shape();
    h.resize(shape.size());
    for (std::size_t k = 0; k < shape.size(); ++k) h[k] = grid.axes[k].h;
    for (std::size_t k = 0; k < shape.size(); ++k)
      values = fft::pad2_axis(values, shape, static_cast<int>(k));
    for (std::size_t k = 0; k < shape.size(); ++k)
      fft::transform_axis(values.data(), shape, static_cast<int>(k), false);
    spec = std::move(values);
  }

  // Samples of f(. - delta) on the unpadded grid.
  std::vector<cplx> shifted(std::span<const double> delta) const {
    std::vector<cplx> buf = spec;
    std::vector<int> sh = shape;
    const int rank = static_cast<int>(sh.size());
    // per-axis ramps e^{-2 pi i f tau / n}
    for (int axis = 0; axis < rank; ++axis) {
      const int n = sh[axis];
      const double tau = delta[axis] / h[axis];
      std::vector<cplx> ramp(n);
      for (int k = 0; k < n; ++k) {
        const int f = (k < n / 2) ? k : k - n;
        const double a = -kTwoPi * f * tau / n;
        ramp[k] = {std::cos(a), std::sin(a)};
      }
      std::int64_t inner = 1, outer = 1;
      for (int a2 = axis + 1; a2 < rank; ++a2) inner *= sh[a2];
      for (int a2 = 0; a2 < axis; ++a2) outer *= sh[a2];
      for (std::int64_t o = 0; o < outer; ++o)
        for (int k = 0; k < n; ++k) {
          cplx* base = buf.data() + (o * n + k) * inner;
          for (std::int64_t i = 0; i < inner; ++i) base[i] *= ramp[k];
        }
    }
    double scale = 1.0;
    for (int axis = 0; axis < rank; ++axis) {
      fft::transform_axis(buf.data(), sh, axis, true);
      scale /= sh[axis];
    }
    for (cplx& z : buf) z *= scale;
    for (int axis = 0; axis < rank; ++axis) buf = fft::crop2_axis(buf, sh, axis);
    return buf;
  }
};

// Replaces axis `axis` (length shape[axis]) by the matrix rows: M has
// new_n x shape[axis] entries, out[..., r, ...] = sum_c M[r][c] in[..., c, ...].
std::vector<cplx> contract_axis(const std::vector<cplx>& in, std::vector<int>& shape, int axis,
                                const std::vector<cplx>& M, int new_n) {
  const int rank = static_cast<int>(shape.size());
  const int n = shape[axis];
  std::int64_t inner = 1, outer = 1;
  for (int a = axis + 1; a < rank; ++a) inner *= shape[a];
  for (int a = 0; a < axis; ++a) outer *= shape[a];
  std::vector<cplx> out(static_cast<std::size_t>(outer * new_n * inner), cplx{0.0, 0.0});
  for (std::int64_t o = 0; o < outer; ++o)
    for (int r = 0; r < new_n; ++r) {
      cplx* dst = out.data() + (o * new_n + r) * inner;
      const cplx* mrow = M.data() + static_cast<std::int64_t>(r) * n;
      for (int c = 0; c < n; ++c) {
        const cplx w = mrow[c];
        const cplx* src = in.data() + (o * n + c) * inner;
        for (std::int64_t i = 0; i < inner; ++i) dst[i] += w * src[i];
      }
    }
  shape[axis] = new_n;
  return out;
}

struct AmbAxis {
  int n;
  double h;
  double node(int j) const { return (j - n / 2) * h; }
};

}  // namespace

Symbol wigner_via_fourier(const GridFn& phi, const GridFn& psi, const TraceClassSpectrum& s,
                          const FourierRouteCalibration& calib, double ambiguity_radius_sigmas) {
  const int m = phi.dims();
  if (m > 2) throw capacity_error("wigner_via_fourier: dense ambiguity tables support m <= 2");
  if (!same_grid(phi.grid, psi.grid) || !(phi.measure == psi.measure))
    throw std::invalid_argument("wigner_via_fourier: states must share grid and measure");
  s.require_dims(m);

  // Sampling of the ambiguity arguments.  The spacings are the exact FFT
  // conjugates of the output symbol axes (xi: h_v / t_k against the u axis,
  // eta: 2 pi / (n h_v) against the x axis), which places the periodization
  // ghosts of the inversion sums one full grid extent away.  The xi span
  // then equals the decay range of the table exactly (2n points).  The eta
  // axis is truncated at ambiguity_radius_sigmas / sqrt(t) where the table
  // has decayed like e^{-t eta^2 / 2} -- capped at n bins, since the
  // discretely computed table is n b_eta periodic in eta (the modulation
  // frequency band of an n-point grid) and more bins would recount whole
  // periods.
  std::vector<AmbAxis> xi_ax(m), eta_ax(m);
  for (int k = 0; k < m; ++k) {
    const Axis& sax = phi.grid.axes[k];
    xi_ax[k] = {2 * sax.n, sax.h / s[k]};
    const double b_eta = kTwoPi / (sax.n * sax.h);
    const double sigma_eta = 1.0 / std::sqrt(s[k]);
    int na_eta = static_cast<int>(std::ceil(2.0 * ambiguity_radius_sigmas * sigma_eta / b_eta));
    na_eta += na_eta % 2;
    eta_ax[k] = {std::min(na_eta, sax.n), b_eta};
  }

  const PaddedSpectrum phi_spec(lebesgue_wavefunction(phi, s), phi.grid);
  const PaddedSpectrum psi_spec(lebesgue_wavefunction(psi, s), psi.grid);

  // Per-axis eta transform matrices sum_s e^{-i s eta} h_s.
  std::vector<std::vector<cplx>> eta_mat(m);
  for (int k = 0; k < m; ++k) {
    const Axis& sax = phi.grid.axes[k];
    const int ne = eta_ax[k].n;
    eta_mat[k].resize(static_cast<std::size_t>(ne) * sax.n);
    for (int l = 0; l < ne; ++l)
      for (int j = 0; j < sax.n; ++j) {
        const double a = -sax.node(j) * eta_ax[k].node(l);
        eta_mat[k][static_cast<std::int64_t>(l) * sax.n + j] =
            cplx{std::cos(a), std::sin(a)} * sax.h;
      }
  }

  // Ambiguity table over (xi block, eta block).
  std::vector<int> table_shape;
  for (int k = 0; k < m; ++k) table_shape.push_back(xi_ax[k].n);
  for (int k = 0; k < m; ++k) table_shape.push_back(eta_ax[k].n);
  std::vector<cplx> table(fft::element_count(table_shape));

  std::vector<int> xi_shape(table_shape.begin(), table_shape.begin() + m);
  std::int64_t eta_block = 1;
  for (int k = 0; k < m; ++k) eta_block *= eta_ax[k].n;
  std::vector<double> delta(m), neg_delta(m);
  for (MultiIndex xit(xi_shape); xit.valid(); xit.next()) {
    for (int k = 0; k < m; ++k) {
      delta[k] = 0.5 * s[k] * xi_ax[k].node(xit[k]);
      neg_delta[k] = -delta[k];
    }
    // P(s) = Phi(s - t xi/2) conj(Psi(s + t xi/2))
    std::vector<cplx> p = phi_spec.shifted(delta);
    const std::vector<cplx> q = psi_spec.shifted(neg_delta);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] *= std::conj(q[i]);
    // A(xi, eta) = sum_s P(s) e^{-i s.eta} prod h
    std::vector<int> pshape = phi.grid.shape();
    for (int k = 0; k < m; ++k) p = contract_axis(p, pshape, k, eta_mat[k], eta_ax[k].n);
    std::copy(p.begin(), p.end(), table.begin() + xit.flat() * eta_block);
  }

  // Inversion onto the rescaled phase-space grid.
  const Grid out_grid = gamma_symbol_grid(s, phi.grid);
  double constant = 1.0;
  for (int k = 0; k < m; ++k) constant *= std::pow(kTwoPi, -1.5) * std::pow(s[k], 1.5);

  std::vector<cplx> inv = table;
  std::vector<int> inv_shape = table_shape;
  for (int k = 0; k < m; ++k) {  // eta_k -> x_k
    const Axis& xax = out_grid.axes[k];
    const int ne = eta_ax[k].n;
    std::vector<cplx> M(static_cast<std::size_t>(xax.n) * ne);
    const double rt = std::sqrt(s[k]);
    for (int j = 0; j < xax.n; ++j)
      for (int l = 0; l < ne; ++l) {
        const double a = rt * eta_ax[k].node(l) * xax.node(j);
        M[static_cast<std::int64_t>(j) * ne + l] = cplx{std::cos(a), std::sin(a)} * eta_ax[k].h;
      }
    inv = contract_axis(inv, inv_shape, m + k, M, xax.n);
  }
  for (int k = 0; k < m; ++k) {  // xi_k -> u_k
    const Axis& uax = out_grid.axes[m + k];
    const int nx = xi_ax[k].n;
    std::vector<cplx> M(static_cast<std::size_t>(uax.n) * nx);
    const double t32 = std::pow(s[k], 1.5);
    for (int j = 0; j < uax.n; ++j)
      for (int l = 0; l < nx; ++l) {
        const double a = t32 * xi_ax[k].node(l) * uax.node(j);
        M[static_cast<std::int64_t>(j) * nx + l] = cplx{std::cos(a), std::sin(a)} * xi_ax[k].h;
      }
    inv = contract_axis(inv, inv_shape, k, M, uax.n);
  }

  // Axes currently run (u block, x block); transpose to (x block, u block).
  Symbol out;
  out.m = m;
  out.grid = out_grid;
  out.measure = lebesgue_tag();
  out.values.resize(out.grid.size());
  const auto out_shape = out.grid.shape();
  std::vector<std::int64_t> inv_strides(2 * m, 1);
  for (int a = 2 * m - 2; a >= 0; --a) inv_strides[a] = inv_strides[a + 1] * inv_shape[a + 1];
  for (MultiIndex it(out_shape); it.valid(); it.next()) {
    std::int64_t src = 0;
    for (int k = 0; k < m; ++k) src += static_cast<std::int64_t>(it[m + k]) * inv_strides[k];
    for (int k = 0; k < m; ++k) src += static_cast<std::int64_t>(it[k]) * inv_strides[m + k];
    out.values[it.flat()] = inv[src] * constant * calib.constant;
  }
  return out;
}

FourierRouteCalibration calibrate_fourier_route(const TraceClassSpectrum& s, int points,
                                                double radius_sigmas) {
  const TraceClassSpectrum head({s[0]});
  const Grid grid = state_grid(head, 1, points, radius_sigmas);
  const GridFn omega = vacuum_state(head, grid);
  const Symbol wa = wigner_transform(omega, omega, head);
  const Symbol wb =
      wigner_via_fourier(omega, omega, head, FourierRouteCalibration{}, radius_sigmas);
  const cplx num = inner_product(wa, wb);
  const double den = sqr(norm(wb));
  return FourierRouteCalibration{num / den};
}

}  // namespace gausswig
