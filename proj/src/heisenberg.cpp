#include "gausswig/heisenberg.hpp"

#include <cmath>

#include "gausswig/fft.hpp"

namespace gausswig {

namespace {

void check_dims(const HeisenbergElement& g) {
  if (g.xi.size() != g.eta.size())
    throw std::invalid_argument("heisenberg: xi and eta must have equal length");
  for (double c : g.xi)
    if (!std::isfinite(c)) throw std::invalid_argument("heisenberg: non-finite coordinate");
  for (double c : g.eta)
    if (!std::isfinite(c)) throw std::invalid_argument("heisenberg: non-finite coordinate");
}

// (A x1 | y2) - (A x2 | y1)
double cocycle(const HeisenbergElement& g1, const HeisenbergElement& g2,
               const TraceClassSpectrum& s) {
  double c = 0.0;
  for (int k = 0; k < g1.dims(); ++k)
    c += s[k] * (g1.xi[k] * g2.eta[k] - g2.xi[k] * g1.eta[k]);
  return c;
}

}  // namespace

HeisenbergElement compose(const HeisenbergElement& g1, const HeisenbergElement& g2,
                          const TraceClassSpectrum& s) {
  check_dims(g1);
  check_dims(g2);
  if (g1.dims() != g2.dims()) throw std::invalid_argument("compose: dimension mismatch");
  s.require_dims(g1.dims());
  HeisenbergElement out;
  out.xi.resize(g1.dims());
  out.eta.resize(g1.dims());
  for (int k = 0; k < g1.dims(); ++k) {
    out.xi[k] = g1.xi[k] + g2.xi[k];
    out.eta[k] = g1.eta[k] + g2.eta[k];
  }
  out.t = g1.t + g2.t + 0.5 * cocycle(g1, g2, s);
  return out;
}

HeisenbergElement inverse(const HeisenbergElement& g) {
  check_dims(g);
  HeisenbergElement out = g;
  for (double& c : out.xi) c = -c;
  for (double& c : out.eta) c = -c;
  out.t = -g.t;
  return out;
}

HeisenbergElement commutator(const HeisenbergElement& g1, const HeisenbergElement& g2,
                             const TraceClassSpectrum& s) {
  check_dims(g1);
  check_dims(g2);
  if (g1.dims() != g2.dims()) throw std::invalid_argument("commutator: dimension mismatch");
  s.require_dims(g1.dims());
  HeisenbergElement out;
  out.xi.assign(g1.dims(), 0.0);
  out.eta.assign(g1.dims(), 0.0);
  out.t = cocycle(g1, g2, s);
  return out;
}

HeisenbergElement exp_theta(const PhasePoint& p) {
  if (p.xi.size() != p.eta.size())
    throw std::invalid_argument("exp_theta: xi and eta must have equal length");
  return HeisenbergElement{p.xi, p.eta, 0.0};
}

GridFn schrodinger_apply(const HeisenbergElement& g, const GridFn& phi,
                         const TraceClassSpectrum& s, double shift_limit_sigmas) {
  check_dims(g);
  const int m = phi.dims();
  if (g.dims() != m) throw std::invalid_argument("schrodinger_apply: dimension mismatch");
  if (phi.measure.kind != MeasureKind::Gaussian)
    throw std::invalid_argument("schrodinger_apply: state must be Gaussian-tagged");
  s.require_dims(m);
  phi.check_finite("schrodinger_apply");

  std::vector<double> shift(m);
  bool needs_shift = false;
  for (int k = 0; k < m; ++k) {
    shift[k] = s[k] * g.xi[k];
    const double limit = shift_limit_sigmas * phi.grid.axes[k].scale;
    if (std::abs(shift[k]) > limit)
      throw std::domain_error("schrodinger_apply: shift exceeds the accuracy limit");
    if (shift[k] != 0.0) needs_shift = true;
  }

  if (!needs_shift) {
    // pure modulation: exact, no transform round trip
    GridFn out = phi;
    double p0 = g.t;
    for (MultiIndex it(phi.grid.shape()); it.valid(); it.next()) {
      double ph = p0;
      for (int k = 0; k < m; ++k) ph -= phi.grid.axes[k].node(it[k]) * g.eta[k];
      out.values[it.flat()] *= cplx{std::cos(ph), std::sin(ph)};
    }
    return out;
  }

  // Translation acts on the decaying wavefunction phi gamma^{1/2}, not on
  // the raw samples (a Hermite state is a polynomial, which a band-limited
  // shift cannot represent).  On wavefunctions the Cameron-Martin square
  // root cancels exactly:
  //   (pi(g) phi) gamma^{1/2} = e^{i theta} (phi gamma^{1/2})(. - t xi),
  // so the weight is divided back out after the shift and only the phase
  // remains.
  std::vector<std::vector<double>> sqrt_w(m);
  for (int k = 0; k < m; ++k) {
    const GaussianParams gp(s[k]);
    sqrt_w[k].resize(phi.grid.axes[k].n);
    for (int j = 0; j < phi.grid.axes[k].n; ++j)
      sqrt_w[k][j] = std::sqrt(gaussian_density(gp, phi.grid.axes[k].node(j)));
  }

  std::vector<int> shape = phi.grid.shape();
  std::vector<cplx> buf = phi.values;
  for (MultiIndex it(phi.grid.shape()); it.valid(); it.next()) {
    double w = 1.0;
    for (int k = 0; k < m; ++k) w *= sqrt_w[k][it[k]];
    buf[it.flat()] *= w;
  }
  for (int k = 0; k < m; ++k) buf = fft::pad2_axis(buf, shape, k);
  for (int k = 0; k < m; ++k)
    fft::phase_shift_axis(buf, shape, k, shift[k] / phi.grid.axes[k].h);
  for (int k = 0; k < m; ++k) buf = fft::crop2_axis(buf, shape, k);

  GridFn out;
  out.grid = phi.grid;
  out.measure = phi.measure;
  out.values = std::move(buf);

  double p0 = g.t;
  for (int k = 0; k < m; ++k) p0 += 0.5 * s[k] * g.xi[k] * g.eta[k];
  for (MultiIndex it(phi.grid.shape()); it.valid(); it.next()) {
    double w = 1.0, ph = p0;
    for (int k = 0; k < m; ++k) {
      w *= sqrt_w[k][it[k]];
      ph -= phi.grid.axes[k].node(it[k]) * g.eta[k];
    }
    out.values[it.flat()] *= cplx{std::cos(ph), std::sin(ph)} / w;
  }
  return out;
}

GridFn tower_embed(const GridFn& phi, int target_m, const TraceClassSpectrum& s,
                   double radius_sigmas, int points) {
  const int m = phi.dims();
  if (target_m < m) throw std::invalid_argument("tower_embed: target level below current");
  s.require_dims(target_m);
  if (phi.measure.kind != MeasureKind::Gaussian)
    throw std::invalid_argument("tower_embed: state must be Gaussian-tagged");
  if (target_m == m) return phi;
  if (points == 0) points = phi.grid.axes[0].n;
  if (radius_sigmas <= 0.0) radius_sigmas = phi.grid.axes[0].radius() / phi.grid.axes[0].scale;

  GridFn out;
  out.grid = phi.grid;
  for (int k = m; k < target_m; ++k) {
    const TraceClassSpectrum axis_spec({s[k]});
    out.grid.axes.push_back(state_grid(axis_spec, 1, points, radius_sigmas).axes[0]);
  }
  out.measure = MeasureTag{MeasureKind::Gaussian, {}};
  for (int k = 0; k < target_m; ++k) out.measure.variances.push_back(s[k]);

  out.values.resize(out.grid.size());
  std::int64_t tail = 1;
  for (int k = m; k < target_m; ++k) tail *= out.grid.axes[k].n;
  for (std::int64_t i = 0; i < phi.grid.size(); ++i)
    for (std::int64_t j = 0; j < tail; ++j) out.values[i * tail + j] = phi.values[i];
  return out;
}

HeisenbergElement pad_element(const HeisenbergElement& g, int target_m) {
  if (target_m < g.dims()) throw std::invalid_argument("pad_element: target level below current");
  HeisenbergElement out = g;
  out.xi.resize(target_m, 0.0);
  out.eta.resize(target_m, 0.0);
  return out;
}

}  // namespace gausswig
