#include "gausswig/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "gausswig/measure_ft.hpp"
#include "gausswig/parallel.hpp"

namespace gausswig {

// ---- deterministic test inputs -------------------------------------------

GridFn random_state(const TraceClassSpectrum& s, const Grid& grid, Rng& rng, int max_degree) {
  const int m = grid.rank();
  GridFn acc;
  acc.grid = grid;
  acc.measure = gaussian_tag(s, m);
  acc.values.assign(grid.size(), cplx{0.0, 0.0});
  std::vector<int> alpha(m, 0);
  std::function<void(int, int)> walk = [&](int axis, int budget) {
    if (axis == m) {
      const cplx c = rng.unit_phase() * (0.3 + rng.uniform());
      const GridFn h = hermite_state(s, alpha, grid);
      for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += c * h.values[i];
      return;
    }
    for (int d = 0; d <= budget; ++d) {
      alpha[axis] = d;
      walk(axis + 1, budget - d);
    }
    alpha[axis] = 0;
  };
  walk(0, max_degree);
  const double n = norm(acc);
  for (cplx& z : acc.values) z /= n;
  return acc;
}

namespace {

// A few modulated Gaussian bumps per component.  Per axis the center,
// width and modulation are drawn so that the bump decays below roundoff at
// the grid edge and its spectrum decays below the Nyquist frequency: with
// edge distance d = radius - |center| and frequency headroom f = nyquist -
// |mod|, the balanced width sqrt(d / f) leaves a margin e^{-d f / 2} on
// both sides.
std::vector<cplx> random_bumps(const Grid& grid, Rng& rng, int bumps) {
  const int rank = grid.rank();
  std::vector<cplx> values(grid.size(), cplx{0.0, 0.0});
  for (int b = 0; b < bumps; ++b) {
    const cplx amp = rng.unit_phase() * (0.4 + rng.uniform());
    std::vector<std::vector<cplx>> profile(rank);
    for (int a = 0; a < rank; ++a) {
      const Axis& ax = grid.axes[a];
      const double radius = ax.radius();
      const double nyquist = kPi / ax.h;
      const double center = rng.uniform(-0.12, 0.12) * radius;
      const double mod = rng.uniform(-0.08, 0.08) * nyquist;
      const double d = radius - std::abs(center);
      const double f = nyquist - std::abs(mod);
      const double width = std::sqrt(d / f) * rng.uniform(0.95, 1.1);
      profile[a].resize(ax.n);
      for (int j = 0; j < ax.n; ++j) {
        const double x = ax.node(j);
        const double g = std::exp(-sqr(x - center) / (2.0 * width * width));
        profile[a][j] = g * cplx{std::cos(mod * x), std::sin(mod * x)};
      }
    }
    for (MultiIndex it(grid.shape()); it.valid(); it.next()) {
      cplx v = amp;
      for (int a = 0; a < rank; ++a) v *= profile[a][it[a]];
      values[it.flat()] += v;
    }
  }
  return values;
}

}  // namespace

Symbol random_symbol_on(const Grid& grid, int m, Rng& rng) {
  Symbol sym;
  sym.m = m;
  sym.grid = grid;
  sym.measure = lebesgue_tag();
  sym.values = random_bumps(grid, rng, 3);
  const double n = norm(sym);
  for (cplx& z : sym.values) z /= n;
  return sym;
}

Kernel random_kernel_on(const Grid& grid, int m, Rng& rng) {
  Kernel k;
  k.m = m;
  k.grid = grid;
  k.measure = lebesgue_tag();
  k.values = random_bumps(grid, rng, 3);
  const double n = norm(k);
  for (cplx& z : k.values) z /= n;
  return k;
}

Symbol excited_gamma_symbol(const TraceClassSpectrum& s, const Grid& gamma_grid, int m,
                            std::span<const int> degrees) {
  if (static_cast<int>(degrees.size()) != 2 * m)
    throw std::invalid_argument("excited_gamma_symbol: one degree per axis");
  Symbol sym;
  sym.m = m;
  sym.grid = gamma_grid;
  sym.measure = lebesgue_tag();
  sym.values.assign(gamma_grid.size(), cplx{1.0, 0.0});
  for (int a = 0; a < 2 * m; ++a) {
    const Axis& ax = gamma_grid.axes[a];
    const bool freq = a >= m;
    const int k = freq ? a - m : a;
    const double var = freq ? 1.0 / (8.0 * s[k] * s[k]) : 0.5;
    const GaussianParams g(var);
    const double sigma = std::sqrt(var);
    std::vector<double> prof(ax.n);
    for (int j = 0; j < ax.n; ++j) {
      const double x = ax.node(j);
      prof[j] = hermite_poly(degrees[a], x / sigma) * std::sqrt(gaussian_density(g, x));
    }
    std::int64_t inner = 1, outer = 1;
    for (int a2 = a + 1; a2 < 2 * m; ++a2) inner *= gamma_grid.axes[a2].n;
    for (int a2 = 0; a2 < a; ++a2) outer *= gamma_grid.axes[a2].n;
    for (std::int64_t o = 0; o < outer; ++o)
      for (int j = 0; j < ax.n; ++j) {
        cplx* base = sym.values.data() + (o * ax.n + j) * inner;
        for (std::int64_t i = 0; i < inner; ++i) base[i] *= prof[j];
      }
  }
  const double n = norm(sym);
  for (cplx& z : sym.values) z /= n;
  return sym;
}

// ---- check machinery ------------------------------------------------------

namespace {

using Entries = std::vector<ReportEntry>;

struct Ctx {
  const RunConfig& cfg;
  TraceClassSpectrum spec;
  int m;  // truncation
};

void add(Entries& out, const std::string& id, const std::string& anchor, std::string params,
         double residual, double tol) {
  ReportEntry e;
  e.check_id = id;
  e.paper_anchor = anchor;
  e.params = std::move(params);
  e.residual = residual;
  e.tolerance = tol;
  e.pass = residual <= tol;
  out.push_back(std::move(e));
}

void add_error(Entries& out, const std::string& id, const std::string& anchor, std::string params,
               std::string error, double tol) {
  ReportEntry e;
  e.check_id = id;
  e.paper_anchor = anchor;
  e.params = std::move(params);
  e.residual = 0.0;
  e.tolerance = tol;
  e.pass = false;
  e.error = std::move(error);
  out.push_back(std::move(e));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// 1-d trapezoid of f(x) e^{ivx} gamma_t(x) over an 8-sigma grid.
cplx quad_char(double t, double v, int n = 1024, double radius_sigmas = 10.0) {
  const double sigma = std::sqrt(t);
  const double h = 2.0 * radius_sigmas * sigma / n;
  const GaussianParams g(t);
  cplx acc{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const double x = (j - n / 2) * h;
    acc += gaussian_density(g, x) * cplx{std::cos(v * x), std::sin(v * x)} * h;
  }
  return acc;
}

// (gamma_t (x) gamma_t)^{1/2} on the kernel grid of a 1-d state grid.
Kernel gauss_pair_kernel(const Grid& state, double t) {
  Kernel k;
  k.m = 1;
  k.grid = kernel_grid(state);
  k.measure = lebesgue_tag();
  k.values.resize(k.grid.size());
  const GaussianParams g(t);
  const int n = state.axes[0].n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      k.values[static_cast<std::int64_t>(i) * n + j] =
          std::sqrt(gaussian_density(g, state.axes[0].node(i)) *
                    gaussian_density(g, state.axes[0].node(j)));
  return k;
}

// (gamma_{t/2} (x) gamma_{1/8t})^{1/2} on a Weyl symbol grid.
Symbol lemma44_symbol(const Grid& weyl, double t) {
  Symbol a;
  a.m = 1;
  a.grid = weyl;
  a.measure = lebesgue_tag();
  a.values.resize(weyl.size());
  const GaussianParams gx(0.5 * t), gxi(1.0 / (8.0 * t));
  const int n = weyl.axes[0].n;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      a.values[static_cast<std::int64_t>(i) * n + l] = std::sqrt(
          gaussian_density(gx, weyl.axes[0].node(i)) * gaussian_density(gxi, weyl.axes[1].node(l)));
  return a;
}

double sup_diff(const GridArray& a, const GridArray& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

double diff_norm(const GridArray& a, const GridArray& b) {
  GridArray d = a;
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
  return norm(d);
}

// ---- gaussian module checks ----------------------------------------------

void check_gaussian_density(const Ctx& ctx, Entries& out) {
  const double v0 = gaussian_density(GaussianParams(1.0), 0.0);
  add(out, "gauss.density.point", "Notation 4.1", "t=1,x=0",
      std::abs(v0 - 0.3989422804014327), 1e-15);
  const double v1 = gaussian_density(GaussianParams(2.0), 2.0);
  add(out, "gauss.density.point", "Notation 4.1", "t=2,x=2",
      std::abs(v1 - 0.10377687435514868), 1e-14);

  double worst_mass = 0.0, worst_mom = 0.0;
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    const double sigma = std::sqrt(t);
    const int n = 1024;
    const double h = 16.0 * sigma / n;
    double mass = 0.0, mom = 0.0;
    const GaussianParams g(t);
    for (int j = 0; j < n; ++j) {
      const double x = (j - n / 2) * h;
      const double d = gaussian_density(g, x) * h;
      mass += d;
      mom += x * x * d;
    }
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
    worst_mom = std::max(worst_mom, std::abs(mom - t));
  }
  add(out, "gauss.density.normalization", "Notation 4.1", "t in {0.1,0.5,1,2}", worst_mass, ctx.cfg.tolerances.closed_form);
  add(out, "gauss.density.second_moment", "Notation 4.1", "t in {0.1,0.5,1,2}", worst_mom, ctx.cfg.tolerances.closed_form);

  // product factorization
  const ProductGaussian pg(TraceClassSpectrum({1.0, 1.0}), 2);
  const double origin[2] = {0.0, 0.0};
  add(out, "gauss.product.point", "Prop 4.5", "m=2,t=(1,1),x=0",
      std::abs(product_density(pg, origin) - 0.15915494309189535), 1e-15);
}

void check_gaussian_char(const Ctx& ctx, Entries& out) {
  add(out, "gauss.char.point", "Remark 4.2", "t=2,v=1",
      std::abs(gaussian_char(GaussianParams(2.0), 1.0) - 0.36787944117144233), 1e-15);
  double worst = 0.0;
  for (double t : {0.1, 0.5, 1.0, 2.0, 4.0})
    for (double v : {0.0, 0.5, 1.0, 2.0, 3.0}) {
      const cplx q = quad_char(t, v);
      worst = std::max(worst, std::abs(q - cplx{gaussian_char(GaussianParams(t), v), 0.0}));
    }
  add(out, "gauss.char.quadrature", "Eq. (4.1)", "25 (t,v) pairs", worst, ctx.cfg.tolerances.closed_form);
}

void check_gaussian_scale(const Ctx&, Entries& out) {
  std::vector<double> pts;
  for (int j = 0; j <= 32; ++j) pts.push_back(-4.0 + j * 0.25);
  double worst = 0.0;
  for (double t : {0.25, 0.5, 1.0, 2.0})
    for (double a : {0.5, 1.0, 2.0, 3.0})
      worst = std::max(worst, scale_identity_residual(t, a, pts, ScaleVariant::corrected));
  add(out, "gauss.scale.corrected", "Prop 4.5", "4x4 (t,a) lattice, x in [-4,4]", worst, 1e-13);

  const double one[1] = {1.0};
  const double printed = scale_identity_residual(1.0, 2.0, one, ScaleVariant::printed);
  add(out, "gauss.scale.printed_erratum", "Prop 4.5",
      "t=1,a=2,x=1: printed residual " + fmt(printed) + " must exceed 1e-2",
      std::max(0.0, 1e-2 - printed), 1e-12);
  const double zero[1] = {0.0};
  add(out, "gauss.scale.printed_at_zero", "Prop 4.5", "t=1,a=2,x=0",
      scale_identity_residual(1.0, 2.0, zero, ScaleVariant::printed), 1e-13);
}

void check_cameron_martin(const Ctx& ctx, Entries& out) {
  const TraceClassSpectrum s({0.5});
  const double xi[1] = {1.0};
  const int n = 2048;
  const double sigma = std::sqrt(0.5), h = 20.0 * sigma / n;
  const GaussianParams g(0.5);
  const double shift = 0.5 * 1.0;  // t * xi in V_- coordinates

  double mass = 0.0;
  std::vector<double> lhs(5, 0.0), rhs(5, 0.0);
  for (int j = 0; j < n; ++j) {
    const double v = (j - n / 2) * h;
    const double w = gaussian_density(g, v) * h;
    const double pt[1] = {v};
    const double rho = cameron_martin_density(s, xi, pt);
    mass += rho * w;
    double pl = 1.0, pr = 1.0;
    for (int d = 0; d <= 4; ++d) {
      lhs[d] += pl * rho * w;
      rhs[d] += pr * w;
      pl *= v;
      pr *= v + shift;
    }
  }
  add(out, "gauss.cm.normalization", "Def 5.2", "xi=(1), t=(0.5)", std::abs(mass - 1.0), ctx.cfg.tolerances.pipeline);
  double worst = 0.0;
  for (int d = 0; d <= 4; ++d) worst = std::max(worst, std::abs(lhs[d] - rhs[d]));
  add(out, "gauss.cm.translation", "Def 5.2", "f=v^d, d<=4, xi=(1), t=(0.5)", worst, ctx.cfg.tolerances.pipeline);
}

void check_char_functional(const Ctx&, Entries& out) {
  const TraceClassSpectrum s2({2.0});
  const double zero1[1] = {0.0};
  const double x1[1] = {1.0};
  add(out, "gauss.char_functional.scalar", "Def 5.2", "mean=0,t=(2),x=(1)",
      std::abs(char_functional(s2, zero1, x1) - cplx{std::exp(-1.0), 0.0}), 1e-15);

  const TraceClassSpectrum s1({1.0});
  const double mean[1] = {1.0};
  const double x2[1] = {2.0};
  const cplx expect{-0.05631934999212788, 0.12306002480577674};  // e^{2i-2}
  add(out, "gauss.char_functional.closed_form", "Def 5.2", "mean=(1),t=(1),x=(2)",
      std::abs(char_functional(s1, mean, x2) - expect), 1e-15);

  // quadrature of e^{i x v} against the shifted Gaussian
  const int n = 4096;
  const double h = 24.0 / n;
  cplx acc{0.0, 0.0};
  const GaussianParams g(1.0);
  for (int j = 0; j < n; ++j) {
    const double y = (j - n / 2) * h;
    acc += gaussian_density(g, y) * cplx{std::cos(2.0 * (y + 1.0)), std::sin(2.0 * (y + 1.0))} * h;
  }
  add(out, "gauss.char_functional.quadrature", "Def 5.2", "mean=(1),t=(1),x=(2)",
      std::abs(acc - expect), 1e-5);
}

// ---- measure_ft checks ----------------------------------------------------

void check_mft_closed_forms(const Ctx& ctx, Entries& out) {
  const auto delta0 = ConcreteMeasure::atomic({{0.0, 0.0}}, {cplx{1.0, 0.0}});
  const auto f = TestFunctional::linear({0.7, -0.3});
  add(out, "mft.ft.delta", "Def 2.3", "delta_0, linear f", std::abs(ft(delta0, f) - cplx{1.0, 0.0}),
      1e-15);

  const auto half = ConcreteMeasure::atomic({{1.0, 0.0}, {0.0, 2.0}},
                                            {cplx{0.5, 0.0}, cplx{0.5, 0.0}});
  const double fa = f.eval(std::vector<double>{1.0, 0.0});
  const double fb = f.eval(std::vector<double>{0.0, 2.0});
  const cplx expect = 0.5 * cplx{std::cos(fa), std::sin(fa)} + 0.5 * cplx{std::cos(fb), std::sin(fb)};
  add(out, "mft.ft.two_atoms", "Def 2.3", "mu=(delta_a+delta_b)/2", std::abs(ft(half, f) - expect),
      1e-15);

  // linearity in mu for atomic measures
  Rng rng(421);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<double>> atoms;
    std::vector<cplx> w1, w2;
    for (int j = 0; j < 4; ++j) {
      atoms.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2)});
      w1.push_back(rng.unit_phase() * rng.uniform());
      w2.push_back(rng.unit_phase() * rng.uniform());
    }
    const cplx a = rng.unit_phase(), b = rng.unit_phase();
    std::vector<cplx> mixed(4);
    for (int j = 0; j < 4; ++j) mixed[j] = a * w1[j] + b * w2[j];
    const auto fr = TestFunctional::linear({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const cplx lhs = ft(ConcreteMeasure::atomic(atoms, mixed), fr);
    const cplx rhs = a * ft(ConcreteMeasure::atomic(atoms, w1), fr) +
                     b * ft(ConcreteMeasure::atomic(atoms, w2), fr);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  add(out, "mft.ft.linearity", "Def 2.3", "50 random atomic pairs", worst, 1e-14);

  // Gaussian + linear against the scalar closed form, and against quadrature
  const auto gm = ConcreteMeasure::gaussian({1.0, -0.5}, {1.0, 0.25});
  const auto q = TestFunctional::linear({2.0, 1.0});
  const cplx closed = ft(gm, q);
  double im = 1.0 * 2.0 + (-0.5) * 1.0;
  double re = -0.5 * (1.0 * 4.0 + 0.25 * 1.0);
  add(out, "mft.ft.gaussian_linear", "Def 5.2", "mean=(1,-.5), K=diag(1,.25), q=(2,1)",
      std::abs(closed - std::exp(re) * cplx{std::cos(im), std::sin(im)}), 1e-15);
  const auto q_sampled = TestFunctional::sampled(
      2, [](std::span<const double> x) { return 2.0 * x[0] + 1.0 * x[1]; }, std::sqrt(5.0));
  add(out, "mft.ft.gaussian_sampled", "Def 2.3", "same functional via quadrature",
      std::abs(ft(gm, q_sampled) - closed), ctx.cfg.tolerances.closed_form);
}

void check_mft_bounds(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0x5eedu);
  double min_slack2 = 1e300, min_slack1 = 1e300;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::vector<double>> atoms;
    std::vector<cplx> weights;
    const int na = 1 + static_cast<int>(rng.uniform() * 5);
    for (int j = 0; j < na; ++j) {
      atoms.push_back({rng.uniform(-3, 3), rng.uniform(-3, 3)});
      weights.push_back(cplx{rng.uniform(0, 2), 0.0});
    }
    const auto mu = ConcreteMeasure::atomic(atoms, weights);
    const auto f = TestFunctional::linear({rng.uniform(-3, 3), rng.uniform(-3, 3)});
    const auto h = TestFunctional::linear({rng.uniform(-3, 3), rng.uniform(-3, 3)});
    const auto r = bounds_check(mu, f, h);
    min_slack2 = std::min(min_slack2, r.rhs - r.lhs);
    min_slack1 = std::min(min_slack1, r.mass - r.ft_abs);
  }
  add(out, "mft.lemma25.bound1", "Lemma 2.5(1)", "1000 random positive atomic measures",
      std::max(0.0, -min_slack1), 1e-12);
  add(out, "mft.lemma25.bound2", "Lemma 2.5(2)", "1000 random (mu, f, h) trials",
      std::max(0.0, -min_slack2), 1e-12);

  // Gaussian closed-form instance of item (2)
  const auto gm = ConcreteMeasure::gaussian({0.0, 0.0}, {1.0, 0.5});
  const auto f = TestFunctional::linear({1.0, 0.5});
  const auto h = TestFunctional::linear({-0.5, 1.0});
  const auto r = bounds_check(gm, f, h);
  const double d0 = 1.0 - (-0.5), d1 = 0.5 - 1.0;
  const double rhs_closed = 2.0 * (1.0 - std::exp(-0.5 * (1.0 * d0 * d0 + 0.5 * d1 * d1)));
  double resid = std::abs(r.rhs - rhs_closed);
  if (r.lhs > r.rhs + 1e-12) resid = std::max(resid, r.lhs - r.rhs);
  add(out, "mft.lemma25.gaussian_rhs", "Lemma 2.5(2)", "Gaussian mu, linear f-h closed form", resid,
      1e-12);
}

void check_mft_recovery(const Ctx& ctx, Entries& out) {
  // delta measure: error bounded by the cubic Taylor remainder
  const auto mu = ConcreteMeasure::atomic({{2.0}}, {cplx{1.0, 0.0}});
  const auto f = TestFunctional::linear({0.7});
  const double exact = 1.4;
  double worst = 0.0;
  for (double step : {0.1, 0.05, 0.01}) {
    const double err = std::abs(recover_pairing(mu, f, step) - cplx{exact, 0.0});
    const double bound = std::pow(step * std::abs(exact), 3.0) / (6.0 * step) + 1e-12;
    worst = std::max(worst, err - bound);
  }
  add(out, "mft.prop24.delta_bound", "Prop 2.4", "mu=delta_2, f=0.7 x", std::max(0.0, worst), 1e-12);

  // zero functional recovers zero exactly
  const auto z = TestFunctional::linear({0.0});
  add(out, "mft.prop24.zero", "Prop 2.4", "f=0", std::abs(recover_pairing(mu, z, 1e-3)), 1e-15);

  // log-log slope of the central-difference error across three decades
  Rng rng(ctx.cfg.seed ^ 0xabcdu);
  std::vector<std::vector<double>> atoms;
  std::vector<cplx> weights;
  for (int j = 0; j < 5; ++j) {
    atoms.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2)});
    weights.push_back(rng.unit_phase() * rng.uniform(0.2, 1.0));
  }
  const auto mixed = ConcreteMeasure::atomic(atoms, weights);
  const auto g = TestFunctional::linear({1.1, -0.6});
  const cplx exact_pair = pairing(mixed, g);
  std::vector<double> steps{0.2, 0.0632, 0.02, 0.00632, 0.002};
  std::vector<double> errs;
  for (double s : steps) errs.push_back(std::abs(recover_pairing(mixed, g, s) - exact_pair));
  // least-squares slope in log-log
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(steps.size());
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(steps[i]), ly = std::log(errs[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  add(out, "mft.prop24.slope", "Prop 2.4", "slope " + fmt(slope) + " over steps 0.2..0.002",
      std::abs(slope - 2.0), 0.1);

  // step halving 1e-2 -> 1e-3 reduces the error by about 100x
  const double e2 = std::abs(recover_pairing(mixed, g, 1e-2) - exact_pair);
  const double e3 = std::abs(recover_pairing(mixed, g, 1e-3) - exact_pair);
  add(out, "mft.prop24.ratio", "Prop 2.4", "error ratio " + fmt(e2 / e3) + " for steps 1e-2/1e-3",
      std::abs(e2 / (e3 * 100.0) - 1.0), 0.2);
}

// ---- grid checks -----------------------------------------------------------

void check_grid_quadrature(const Ctx& ctx, Entries& out) {
  const int n = ctx.cfg.points_for(1);
  const Grid g = state_grid(ctx.spec, 1, n, ctx.cfg.radius_for(1));
  const double t = ctx.spec[0];
  GridFn one = vacuum_state(ctx.spec, g);
  add(out, "grid.quadrature.mass", "Prop 4.5", "<1,1> under the Gaussian tag",
      std::abs(inner_product(one, one) - cplx{1.0, 0.0}), ctx.cfg.tolerances.closed_form);

  // moments of gamma_t up to degree 6: t^{k}(2k-1)!!
  double worst = 0.0;
  for (int deg = 1; deg <= 6; ++deg) {
    GridFn f = one;
    for (int j = 0; j < g.axes[0].n; ++j)
      f.values[j] = std::pow(g.axes[0].node(j), deg);
    const double want = deg % 2 == 1 ? 0.0
                                     : std::pow(t, deg / 2) * (deg == 2 ? 1.0 : deg == 4 ? 3.0 : 15.0);
    worst = std::max(worst, std::abs(integral(f).real() - want));
  }
  add(out, "grid.quadrature.moments", "Notation 4.1", "degrees 1..6, t=" + fmt(t), worst, 1e-7);
}

void check_hermite(const Ctx& ctx, Entries& out) {
  const int n = ctx.cfg.points_for(1);
  const Grid g = state_grid(ctx.spec, 1, n, ctx.cfg.radius_for(1));

  // closed form of the degree-2 state at t = spec[0]
  const double t = ctx.spec[0];
  const GridFn h2 = hermite_state(ctx.spec, std::vector<int>{2}, g);
  double worst = 0.0;
  for (int j = 0; j < g.axes[0].n; ++j) {
    const double v = g.axes[0].node(j);
    worst = std::max(worst, std::abs(h2.values[j].real() - (v * v / t - 1.0) / std::sqrt(2.0)));
  }
  add(out, "grid.hermite.closed_form", "Theorem 5.6", "h_2(v) = (v^2/t-1)/sqrt(2)", worst, 1e-12);

  // orthonormality |alpha| <= 4
  double gram = 0.0;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      const cplx ip = inner_product(hermite_state(ctx.spec, std::vector<int>{a}, g),
                                    hermite_state(ctx.spec, std::vector<int>{b}, g));
      gram += std::norm(ip - (a == b ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
    }
  add(out, "grid.hermite.gram", "Theorem 5.6", "|alpha| <= 4, m=1, Frobenius",
      std::sqrt(gram), 1e-7);
}

void check_rank_one(const Ctx& ctx, Entries& out) {
  const int n = ctx.cfg.points_for(1);
  const Grid g = state_grid(ctx.spec, 1, n, ctx.cfg.radius_for(1));
  Rng rng(ctx.cfg.seed ^ 0x11u);
  double worst_norm = 0.0, worst_apply = 0.0, worst_pair = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const GridFn phi = random_state(ctx.spec, g, rng);
    const GridFn psi = random_state(ctx.spec, g, rng);
    const Kernel k = rank_one_kernel(phi, psi);
    const double np = norm(phi), ns = norm(psi);
    worst_norm = std::max(worst_norm, std::abs(hs_norm(k) - np * ns) / (np * ns));
    if (trial < 10) {
      const GridFn chi = random_state(ctx.spec, g, rng);
      GridFn want = phi;
      const cplx c = inner_product(chi, psi);
      for (cplx& z : want.values) z *= c;
      worst_apply = std::max(worst_apply, diff_norm(apply_kernel(k, chi), want));
      const GridFn phi2 = random_state(ctx.spec, g, rng);
      const GridFn psi2 = random_state(ctx.spec, g, rng);
      const cplx hs = hs_inner(k, rank_one_kernel(phi2, psi2));
      const cplx want_hs = inner_product(phi, phi2) * std::conj(inner_product(psi, psi2));
      worst_pair = std::max(worst_pair, std::abs(hs - want_hs));
    }
  }
  add(out, "grid.rank_one.hs_norm", "Remark 3.7", "50 random pairs, relative", worst_norm, 1e-7);
  add(out, "grid.rank_one.apply", "Remark 3.7", "10 random triples", worst_apply, ctx.cfg.tolerances.closed_form);
  add(out, "grid.hs.rank_one_pairing", "Theorem 5.6(3)", "10 random quadruples", worst_pair, ctx.cfg.tolerances.closed_form);
}

void check_refinement(const Ctx& ctx, Entries& out) {
  // Eq. (4.1) residual on the grid quadrature must drop by >= 10x per
  // refinement until it reaches the floating-point floor.  The ladder
  // starts at the coarsest resolution that resolves anything at all for
  // the configured radius (about two nodes per scale).
  const double t = ctx.spec[0], v = 2.0;
  const auto resid = [&](int n) {
    return std::abs(quad_char(t, v, n, ctx.cfg.radius_for(1)) -
                    cplx{gaussian_char(GaussianParams(t), v), 0.0});
  };
  int n0 = 8;
  while (n0 < ctx.cfg.radius_for(1) * 2.0) n0 *= 2;
  const double ra = resid(n0), rb = resid(2 * n0), rc = resid(4 * n0);
  double measure = rb / ra;  // want <= 0.1
  if (rb < 1e-12) measure = 0.0;
  add(out, "grid.refine.eq41", "Eq. (4.1)",
      "n=" + std::to_string(n0) + " -> " + std::to_string(2 * n0) + ": " + fmt(ra) + " -> " +
          fmt(rb),
      measure, 0.1);
  double measure2 = rc / rb;
  if (rc < 1e-12) measure2 = 0.0;
  add(out, "grid.refine.eq41_fine", "Eq. (4.1)",
      "n=" + std::to_string(2 * n0) + " -> " + std::to_string(4 * n0) + ": " + fmt(rb) + " -> " +
          fmt(rc),
      measure2, 0.1);
}

// ---- weyl checks -----------------------------------------------------------

void check_lemma44(const Ctx& ctx, Entries& out) {
  // The forward direction and the kernel-side round trip are limited by the
  // frequency-axis band of the symbol grid (error ~ e^{-r^2/8}), so these
  // closed-form checks run wide: 64 points at 12 sigma.
  const int n = 64;
  const double r = 12.0;
  double worst_inv = 0.0, worst_fwd = 0.0, worst_rt = 0.0;
  for (double t : {0.25, 0.5, 1.0, 2.0}) {
    const TraceClassSpectrum st({t});
    const Grid state = state_grid(st, 1, n, r);
    const Kernel k = gauss_pair_kernel(state, t);
    const Symbol a = t_inverse(k);
    const Symbol want = lemma44_symbol(a.grid, t);
    worst_inv = std::max(worst_inv, sup_diff(a, want));
    const Kernel back = t_forward(want);
    worst_fwd = std::max(worst_fwd, sup_diff(back, k));
    worst_rt = std::max(worst_rt, sup_diff(t_forward(a), k));
  }
  add(out, "weyl.t.lemma44_inverse", "Lemma 4.4", "t in {0.25,0.5,1,2}, sup norm", worst_inv, ctx.cfg.tolerances.pipeline);
  add(out, "weyl.t.lemma44_forward", "Lemma 4.4", "t in {0.25,0.5,1,2}, sup norm", worst_fwd, ctx.cfg.tolerances.pipeline);
  add(out, "weyl.t.round_trip", "Remark 4.3", "T(T^-1(K)) vs K, sup norm", worst_rt, ctx.cfg.tolerances.closed_form);

  // self-dual case: t = 1/2 gives output variances (1/4, 1/4)
  const TraceClassSpectrum sh({0.5});
  const Grid state = state_grid(sh, 1, n, r);
  const Symbol a = t_inverse(gauss_pair_kernel(state, 0.5));
  Symbol want = a;
  const GaussianParams q(0.25);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      want.values[static_cast<std::int64_t>(i) * n + l] = std::sqrt(
          gaussian_density(q, a.grid.axes[0].node(i)) * gaussian_density(q, a.grid.axes[1].node(l)));
  add(out, "weyl.t.self_dual", "Lemma 4.4", "t=1/2: variances (1/4,1/4)", sup_diff(a, want), ctx.cfg.tolerances.pipeline);
}

void check_t_unitarity(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0x22u);
  const int n1 = ctx.cfg.points_for(1);
  const Grid w1 = weyl_symbol_grid(state_grid(ctx.spec, 1, n1, ctx.cfg.radius_for(1)));
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Symbol a = random_symbol_on(w1, 1, rng);
    worst = std::max(worst, std::abs(norm(t_forward(a)) - 1.0));
  }
  add(out, "weyl.t.unitarity", "Remark 4.3", "50 random symbols, m=1", worst, ctx.cfg.tolerances.pipeline);

  double worst_rt = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Symbol a = random_symbol_on(w1, 1, rng);
    worst_rt = std::max(worst_rt, diff_norm(t_inverse(t_forward(a)), a));
  }
  add(out, "weyl.t.random_round_trip", "Remark 4.3", "10 random symbols, m=1", worst_rt, ctx.cfg.tolerances.closed_form);

  if (ctx.m >= 2) {
    const int n2 = ctx.cfg.points_for(2);
    const Grid w2 = weyl_symbol_grid(state_grid(ctx.spec, 2, n2, ctx.cfg.radius_for(2)));
    double worst2 = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const Symbol a = random_symbol_on(w2, 2, rng);
      worst2 = std::max(worst2, std::abs(norm(t_forward(a)) - 1.0));
    }
    add(out, "weyl.t.unitarity_m2", "Remark 4.3", "50 random symbols, m=2", worst2, ctx.cfg.tolerances.pipeline);
  }
}

void check_t_dual_path(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0x33u);
  double worst = 0.0;
  for (int n : {32, 64}) {
    const Grid w = weyl_symbol_grid(state_grid(ctx.spec, 1, n, ctx.cfg.radius_for(1)));
    const Symbol a = random_symbol_on(w, 1, rng);
    worst = std::max(worst, sup_diff(t_forward(a), t_forward_direct(a)));
    const Kernel k = t_forward(a);
    worst = std::max(worst, sup_diff(t_inverse(k), t_inverse_direct(k)));
  }
  add(out, "weyl.t.fft_vs_direct", "Remark 4.3", "m=1, n in {32,64}", worst, 1e-9);
}

void check_s_scale(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0x44u);
  const int n = ctx.cfg.points_for(1);
  // run on the tail eigenvalue, where the variants differ (both are the
  // identity at t = 1)
  const TraceClassSpectrum tail({ctx.spec[ctx.spec.size() - 1]});
  const Grid gg = gamma_symbol_grid(tail, state_grid(tail, 1, n, ctx.cfg.radius_for(1)));
  const Symbol b = random_symbol_on(gg, 1, rng);

  const Symbol sb = s_scale(b, tail, ctx.cfg.s_variant);
  add(out, "weyl.s.unitarity", "Prop 4.5",
      std::string("variant=") +
          (ctx.cfg.s_variant == ScaleVariant::corrected ? "corrected" : "printed") +
          ", t=" + fmt(tail[0]),
      std::abs(norm(sb) / norm(b) - 1.0), ctx.cfg.tolerances.closed_form);
  add(out, "weyl.s.round_trip", "Prop 4.5", "S^-1(S(b)) = b",
      sup_diff(s_scale_inverse(sb, tail, ctx.cfg.s_variant), b), 1e-12);

  // identity at unit eigenvalues, both variants
  const TraceClassSpectrum unit({1.0});
  const Grid gu = gamma_symbol_grid(unit, state_grid(unit, 1, n, ctx.cfg.radius_for(1)));
  const Symbol bu = random_symbol_on(gu, 1, rng);
  double ident = sup_diff(s_scale(bu, unit, ScaleVariant::corrected), bu);
  ident = std::max(ident, sup_diff(s_scale(bu, unit, ScaleVariant::printed), bu));
  add(out, "weyl.s.unit_identity", "Prop 4.5", "t=1: both variants are the identity", ident, 1e-15);

  // printed variant norm ratio 1/t, documented at t = 0.5
  const TraceClassSpectrum half({0.5});
  const Grid gh = gamma_symbol_grid(half, state_grid(half, 1, n, ctx.cfg.radius_for(1)));
  const Symbol bh = random_symbol_on(gh, 1, rng);
  const double ratio = norm(s_scale(bh, half, ScaleVariant::printed)) / norm(bh);
  add(out, "weyl.s.printed_erratum", "Prop 4.5", "printed ||S(b)||/||b|| = 2 at t=0.5",
      std::abs(ratio - 2.0), ctx.cfg.tolerances.closed_form);
}

void check_u_reweight(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0x55u);
  const int n = ctx.cfg.points_for(1);
  const Grid state = state_grid(ctx.spec, 1, n, ctx.cfg.radius_for(1));
  const Kernel k = random_kernel_on(kernel_grid(state), 1, rng);
  const Kernel gk = u_reweight(k, ctx.spec, ReweightDirection::lebesgue_to_gaussian);
  add(out, "weyl.u.unitarity", "Prop 4.5", "random Lebesgue kernel, m=1",
      std::abs(norm(gk) - norm(k)), ctx.cfg.tolerances.closed_form);
  add(out, "weyl.u.round_trip", "Prop 4.5", "U^-1(U(K)) = K",
      sup_diff(u_reweight(gk, ctx.spec, ReweightDirection::gaussian_to_lebesgue), k), 1e-12);

  const Kernel vac = gauss_pair_kernel(state, ctx.spec[0]);
  const Kernel one = u_reweight(vac, ctx.spec, ReweightDirection::lebesgue_to_gaussian);
  double worst = 0.0;
  for (const cplx& z : one.values) worst = std::max(worst, std::abs(z - cplx{1.0, 0.0}));
  add(out, "weyl.u.cancellation", "Prop 4.5", "U((gamma x gamma)^(1/2)) = 1", worst, 1e-12);

  // conjugation semantics: U(K) acts on V f like K acts on f
  const GridFn phi = random_state(ctx.spec, state, rng);
  GridFn lphi = phi;  // V phi = phi gamma^{-1/2} on the Lebesgue side
  lphi.measure = lebesgue_tag();
  const GaussianParams g(ctx.spec[0]);
  for (int j = 0; j < n; ++j)
    lphi.values[j] *= std::sqrt(gaussian_density(g, state.axes[0].node(j)));
  // lphi holds phi gamma^{1/2}: K acts on it by Lebesgue integration, and
  // V^{-1} of the result is compared against applying U(K) to phi directly.
  const GridFn kf = apply_kernel(k, lphi);
  GridFn v_kf = kf;
  v_kf.measure = gaussian_tag(ctx.spec, 1);
  for (int j = 0; j < n; ++j)
    v_kf.values[j] /= std::sqrt(gaussian_density(g, state.axes[0].node(j)));
  const GridFn ukf = apply_kernel(gk, phi);
  add(out, "weyl.u.conjugation", "Remark 4.6", "A_{U(K)} V = V A_K on a random state",
      diff_norm(ukf, v_kf), ctx.cfg.tolerances.pipeline);
}

void check_tensor(const Ctx& ctx, Entries& out) {
  if (ctx.m < 2) return;
  Rng rng(ctx.cfg.seed ^ 0x66u);
  const int n = ctx.cfg.points_for(2);
  const TraceClassSpectrum s1({ctx.spec[0]});
  const TraceClassSpectrum s2({ctx.spec[1]});
  const Grid w1 = weyl_symbol_grid(state_grid(s1, 1, n, ctx.cfg.radius_for(2)));
  const Grid w2 = weyl_symbol_grid(state_grid(s2, 1, n, ctx.cfg.radius_for(2)));
  const Symbol g1 = random_symbol_on(w1, 1, rng);
  const Symbol g2 = random_symbol_on(w2, 1, rng);

  const Symbol g12 = tensor_symbols(g1, g2);
  add(out, "weyl.tensor.isometry", "Remark 4.3", "||W(g1 x g2)|| = ||g1|| ||g2||",
      std::abs(norm(g12) - norm(g1) * norm(g2)), ctx.cfg.tolerances.closed_form);

  const Kernel lhs = t_forward(g12);
  const Kernel rhs = tensor_kernels(t_forward(g1), t_forward(g2));
  add(out, "weyl.tensor.diagram", "Remark 4.3", "T_{m1+m2} W = V (T_m1 x T_m2)",
      diff_norm(lhs, rhs), ctx.cfg.tolerances.pipeline);

  // non-Lebesgue factors are rejected
  Symbol gauss_tagged = g1;
  gauss_tagged.measure = gamma2_tag(s1, 1);
  bool rejected = false;
  try {
    tensor_symbols(gauss_tagged, g2);
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  add(out, "weyl.tensor.reject_weighted", "Remark 4.3", "non-Lebesgue factor rejected",
      rejected ? 0.0 : 1.0, 1e-12);
}

void check_extensions(const Ctx& ctx, Entries& out) {
  if (ctx.m < 2) return;
  Rng rng(ctx.cfg.seed ^ 0x77u);
  const int n = ctx.cfg.points_for(2);
  const double r = ctx.cfg.radius_for(2);
  const TraceClassSpectrum s1({ctx.spec[0]});
  const Grid state1 = state_grid(s1, 1, n, r);
  const Symbol b = random_symbol_on(gamma_symbol_grid(s1, state1), 1, rng);
  const Symbol a = random_symbol_on(weyl_symbol_grid(state1), 1, rng);
  const Kernel k = random_kernel_on(kernel_grid(state1), 1, rng);

  double worst = 0.0;
  worst = std::max(worst, std::abs(norm(extend_symbol(b, ExtensionKind::beta, ctx.spec, r, n)) -
                                   norm(b)));
  worst = std::max(worst, std::abs(norm(extend_symbol(a, ExtensionKind::alpha, ctx.spec, r, n)) -
                                   norm(a)));
  worst = std::max(worst, std::abs(norm(extend_kernel(k, ExtensionKind::eta, ctx.spec, r, n)) -
                                   norm(k)));
  add(out, "weyl.extend.isometry", "Prop 4.5", "alpha, beta, eta on random inputs", worst, ctx.cfg.tolerances.closed_form);

  const Kernel gk = u_reweight(k, ctx.spec, ReweightDirection::lebesgue_to_gaussian);
  const Kernel ik = extend_kernel(gk, ExtensionKind::iota, ctx.spec, r, n);
  add(out, "weyl.extend.iota_isometry", "Prop 4.5", "constant extension, probability tag",
      std::abs(norm(ik) - norm(gk)), ctx.cfg.tolerances.closed_form);
}

void check_diagram(const Ctx& ctx, Entries& out) {
  if (ctx.m < 2) return;
  const int n = ctx.cfg.points_for(2);
  const double r = ctx.cfg.radius_for(2);
  const TraceClassSpectrum s1({ctx.spec[0]});
  const Grid gamma1 = gamma_symbol_grid(s1, state_grid(s1, 1, n, r));

  // Gaussian input: the vacuum profile of the rescaled picture
  Symbol b0 = excited_gamma_symbol(s1, gamma1, 1, std::vector<int>{0, 0});
  const auto res0 = diagram_residual(2, b0, ctx.spec, ctx.cfg.s_variant, 64, 12.0);
  // Hermite-excited input
  Symbol b1 = excited_gamma_symbol(s1, gamma1, 1, std::vector<int>{2, 1});
  const auto res1 = diagram_residual(2, b1, ctx.spec, ctx.cfg.s_variant, 64, 12.0);

  const double top = std::max(res0.top, res1.top);
  const double mid = std::max(res0.middle, res1.middle);
  const double bot = std::max(res0.bottom, res1.bottom);
  add(out, "weyl.diagram.top", "Prop 4.5", "S_m beta = alpha S_(m-1), m=2", top, ctx.cfg.tolerances.pipeline);
  add(out, "weyl.diagram.middle", "Prop 4.5", "T_m alpha = eta T_(m-1), m=2", mid, ctx.cfg.tolerances.pipeline);
  add(out, "weyl.diagram.bottom", "Prop 4.5", "U_m eta = iota U_(m-1), m=2", bot, ctx.cfg.tolerances.pipeline);

  // the printed variant must break the top square at t = (0.5, 0.5)
  const TraceClassSpectrum halves({0.5, 0.5});
  const TraceClassSpectrum h1({0.5});
  const Grid gamma_h = gamma_symbol_grid(h1, state_grid(h1, 1, n, r));
  Symbol bh = excited_gamma_symbol(h1, gamma_h, 1, std::vector<int>{0, 0});
  const auto res_p = diagram_residual(2, bh, halves, ScaleVariant::printed, 64, 12.0);
  add(out, "weyl.diagram.printed_erratum", "Prop 4.5",
      "printed top-square residual " + fmt(res_p.top) + " must exceed 0.1",
      std::max(0.0, 0.1 - res_p.top), 1e-12);
}

// ---- heisenberg checks -----------------------------------------------------

HeisenbergElement dyadic_element(int m, Rng& rng) {
  HeisenbergElement g;
  g.xi.resize(m);
  g.eta.resize(m);
  for (int k = 0; k < m; ++k) {
    g.xi[k] = static_cast<double>(static_cast<int>(rng.uniform(-128, 129))) / 64.0;
    g.eta[k] = static_cast<double>(static_cast<int>(rng.uniform(-128, 129))) / 64.0;
  }
  g.t = static_cast<double>(static_cast<int>(rng.uniform(-128, 129))) / 64.0;
  return g;
}

double element_dist(const HeisenbergElement& a, const HeisenbergElement& b) {
  double d = std::abs(a.t - b.t);
  for (int k = 0; k < a.dims(); ++k)
    d = std::max({d, std::abs(a.xi[k] - b.xi[k]), std::abs(a.eta[k] - b.eta[k])});
  return d;
}

void check_group_axioms(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0x88u);
  double worst = 0.0;
  for (int m = 1; m <= std::min(3, ctx.spec.size()); ++m) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto g1 = dyadic_element(m, rng);
      const auto g2 = dyadic_element(m, rng);
      const auto g3 = dyadic_element(m, rng);
      const HeisenbergElement id{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0), 0.0};
      worst = std::max(worst, element_dist(compose(g1, id, ctx.spec), g1));
      worst = std::max(worst, element_dist(compose(g1, inverse(g1), ctx.spec), id));
      worst = std::max(worst, element_dist(compose(compose(g1, g2, ctx.spec), g3, ctx.spec),
                                           compose(g1, compose(g2, g3, ctx.spec), ctx.spec)));
      const auto c = commutator(g1, g2, ctx.spec);
      worst = std::max(worst,
                       element_dist(compose(c, g3, ctx.spec), compose(g3, c, ctx.spec)));
    }
  }
  add(out, "heis.group.axioms", "Def 5.1",
      "identity/inverse/associativity/centrality, dyadic coordinates, m=1..3", worst, 1e-15);

  // frozen evaluations of the group law and the bracket
  const TraceClassSpectrum half({0.5});
  const HeisenbergElement gx{{1.0}, {0.0}, 0.0};
  const HeisenbergElement gy{{0.0}, {1.0}, 0.0};
  add(out, "heis.compose.center", "Def 5.1", "t=(0.5): center of (x=1)*(y=1) is 0.25",
      std::abs(compose(gx, gy, half).t - 0.25), 1e-15);
  const TraceClassSpectrum two({2.0});
  add(out, "heis.commutator.center", "Def 5.1", "t=(2): [g1,g2] = (0,0,2)",
      std::abs(commutator(gx, gy, two).t - 2.0), 1e-15);
}

HeisenbergElement random_element(const TraceClassSpectrum& s, int m, Rng& rng, double xi_frac) {
  HeisenbergElement g;
  g.xi.resize(m);
  g.eta.resize(m);
  for (int k = 0; k < m; ++k) {
    const double rt = std::sqrt(s[k]);
    g.xi[k] = rng.uniform(-1.0, 1.0) * xi_frac / rt;   // keeps |t xi| under the shift limit
    g.eta[k] = rng.uniform(-1.0, 1.0) * 1.5 / rt;
  }
  g.t = rng.uniform(-2.0, 2.0);
  return g;
}

void check_pi_unitarity(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0x99u);
  // states are m-dimensional, so pi runs at full per-axis resolution
  for (int m = 1; m <= std::min(2, ctx.m); ++m) {
    const Grid g = state_grid(ctx.spec, m, ctx.cfg.grid.points, ctx.cfg.radius_for(1));
    double worst = 0.0;
    const int trials = 50;
    for (int trial = 0; trial < trials; ++trial) {
      const GridFn phi = random_state(ctx.spec, g, rng, m == 1 ? 3 : 2);
      const auto el = random_element(ctx.spec, m, rng, 0.9);
      worst = std::max(worst, std::abs(norm(schrodinger_apply(el, phi, ctx.spec)) - 1.0));
    }
    add(out, m == 1 ? "heis.pi.unitarity" : "heis.pi.unitarity_m2", "Def 5.2",
        "50 random (g, phi), m=" + std::to_string(m), worst, ctx.cfg.tolerances.pipeline);
  }
}

void check_pi_homomorphism(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0xaau);
  for (int m = 1; m <= std::min(2, ctx.m); ++m) {
    const Grid g = state_grid(ctx.spec, m, ctx.cfg.grid.points, ctx.cfg.radius_for(1));
    const GridFn phi = random_state(ctx.spec, g, rng, 2);
    double worst = 0.0;
    const int trials = m == 1 ? 100 : 25;
    for (int trial = 0; trial < trials; ++trial) {
      const auto g1 = random_element(ctx.spec, m, rng, 0.45);
      const auto g2 = random_element(ctx.spec, m, rng, 0.45);
      const GridFn lhs = schrodinger_apply(g1, schrodinger_apply(g2, phi, ctx.spec), ctx.spec);
      const GridFn rhs = schrodinger_apply(compose(g1, g2, ctx.spec), phi, ctx.spec);
      worst = std::max(worst, diff_norm(lhs, rhs));
    }
    add(out, m == 1 ? "heis.pi.homomorphism" : "heis.pi.homomorphism_m2", "Def 5.2",
        std::to_string(trials) + " random pairs, m=" + std::to_string(m), worst, ctx.cfg.tolerances.pipeline);
  }

  // center acts by the scalar phase e^{i s0}
  const Grid g1 = state_grid(ctx.spec, 1, ctx.cfg.grid.points, ctx.cfg.radius_for(1));
  const GridFn phi = random_state(ctx.spec, g1, rng, 3);
  const HeisenbergElement center{{0.0}, {0.0}, 0.7};
  GridFn want = phi;
  const cplx ph{std::cos(0.7), std::sin(0.7)};
  for (cplx& z : want.values) z *= ph;
  add(out, "heis.pi.center_phase", "Def 5.2", "pi(0,0,s0) = e^(i s0)",
      sup_diff(schrodinger_apply(center, phi, ctx.spec), want), 1e-12);
}

void check_pi_adjoint(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0xbbu);
  const Grid g = state_grid(ctx.spec, 1, ctx.cfg.points_for(1), ctx.cfg.radius_for(1));
  std::vector<GridFn> basis;
  for (int a = 0; a <= 3; ++a) basis.push_back(hermite_state(ctx.spec, std::vector<int>{a}, g));
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto el = random_element(ctx.spec, 1, rng, 0.9);
    const auto inv = inverse(el);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const cplx mij = inner_product(schrodinger_apply(inv, basis[i], ctx.spec), basis[j]);
        const cplx mji = inner_product(schrodinger_apply(el, basis[j], ctx.spec), basis[i]);
        worst = std::max(worst, std::abs(mij - std::conj(mji)));
      }
  }
  add(out, "heis.pi.adjoint", "Def 5.2", "pi(g^-1) = pi(g)^* on the Hermite basis", worst, ctx.cfg.tolerances.pipeline);
}

void check_tower(const Ctx& ctx, Entries& out) {
  if (ctx.m < 2) return;
  Rng rng(ctx.cfg.seed ^ 0xccu);
  const int n = 32;  // states are m-dimensional, so level 3 stays cheap
  const int levels = std::min(3, ctx.spec.size());
  double worst_iso = 0.0, worst_inter = 0.0, worst_idem = 0.0;
  for (int lvl = 1; lvl < levels; ++lvl) {
    const Grid g = state_grid(ctx.spec, lvl, n, ctx.cfg.radius_for(1));
    const GridFn phi = random_state(ctx.spec, g, rng, 2);
    const GridFn up = tower_embed(phi, lvl + 1, ctx.spec, ctx.cfg.radius_for(1), n);
    worst_iso = std::max(worst_iso, std::abs(norm(up) - norm(phi)));
    const auto el = random_element(ctx.spec, lvl, rng, 0.45);
    const GridFn lhs = tower_embed(schrodinger_apply(el, phi, ctx.spec), lvl + 1, ctx.spec,
                                   ctx.cfg.radius_for(1), n);
    const GridFn rhs = schrodinger_apply(pad_element(el, lvl + 1), up, ctx.spec);
    worst_inter = std::max(worst_inter, diff_norm(lhs, rhs));
    if (lvl + 2 <= levels) {
      const GridFn two = tower_embed(up, lvl + 2, ctx.spec, ctx.cfg.radius_for(1), n);
      const GridFn once = tower_embed(phi, lvl + 2, ctx.spec, ctx.cfg.radius_for(1), n);
      worst_idem = std::max(worst_idem, sup_diff(two, once));
    }
  }
  add(out, "heis.tower.isometry", "Eq. (5.1)", "levels 1.." + std::to_string(levels), worst_iso,
      1e-8);
  add(out, "heis.tower.intertwine", "Eq. (5.1)", "pi_(m+1)(pad g) iota = iota pi_m(g)", worst_inter,
      1e-6);
  add(out, "heis.tower.idempotent", "Eq. (5.1)", "embedding twice equals embedding once",
      worst_idem, 1e-15);

  const Grid g1 = state_grid(ctx.spec, 1, n, ctx.cfg.radius_for(1));
  const GridFn vac = vacuum_state(ctx.spec, g1);
  const GridFn vup = tower_embed(vac, 2, ctx.spec, ctx.cfg.radius_for(1), n);
  double worst_vac = 0.0;
  for (const cplx& z : vup.values) worst_vac = std::max(worst_vac, std::abs(z - cplx{1.0, 0.0}));
  add(out, "heis.tower.vacuum", "Eq. (5.1)", "vacuum maps to vacuum", worst_vac, 1e-15);
}

// ---- wigner checks ---------------------------------------------------------

Symbol vacuum_wigner_closed_form(const Grid& gamma, double t) {
  Symbol w;
  w.m = 1;
  w.grid = gamma;
  w.measure = lebesgue_tag();
  w.values.resize(gamma.size());
  const GaussianParams gx(0.5), gu(1.0 / (8.0 * t * t));
  const int n = gamma.axes[0].n;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < gamma.axes[1].n; ++l)
      w.values[static_cast<std::int64_t>(i) * gamma.axes[1].n + l] = std::sqrt(
          gaussian_density(gx, gamma.axes[0].node(i)) * gaussian_density(gu, gamma.axes[1].node(l)));
  return w;
}

void check_wigner_vacuum(const Ctx& ctx, Entries& out) {
  const int n = ctx.cfg.points_for(1);
  double worst = 0.0, worst_gamma2 = 0.0;
  for (double t : {0.5, ctx.spec[0]}) {
    const TraceClassSpectrum st({t});
    const Grid state = state_grid(st, 1, n, ctx.cfg.radius_for(1));
    const GridFn vac = vacuum_state(st, state);
    const Symbol w = wigner_transform(vac, vac, st);
    worst = std::max(worst, sup_diff(w, vacuum_wigner_closed_form(w.grid, t)));

    const Symbol wg = gamma2_retag(w, st);
    Symbol ones = wg;
    std::fill(ones.values.begin(), ones.values.end(), cplx{1.0, 0.0});
    Symbol dev = wg;
    for (std::size_t i = 0; i < dev.values.size(); ++i) dev.values[i] -= cplx{1.0, 0.0};
    worst_gamma2 = std::max(worst_gamma2, norm(dev));
  }
  add(out, "wig.vacuum.closed_form", "Theorem 5.6", "Wig(vac,vac) = (g_1/2 x g_1/8t^2)^(1/2)",
      worst, ctx.cfg.tolerances.pipeline);
  add(out, "wig.vacuum.gamma2_constant", "Theorem 5.6(3)",
      "weighted representative is the constant 1 (weighted norm)", worst_gamma2, ctx.cfg.tolerances.pipeline);
}

void check_wigner_unitarity(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0xddu);
  const int n = ctx.cfg.points_for(1);
  const Grid state = state_grid(ctx.spec, 1, n, ctx.cfg.radius_for(1));
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const GridFn phi = random_state(ctx.spec, state, rng);
    const GridFn psi = random_state(ctx.spec, state, rng);
    const Symbol w = wigner_transform(phi, psi, ctx.spec);
    worst = std::max(worst, std::abs(norm(w) - norm(phi) * norm(psi)));
  }
  add(out, "wig.norm", "Theorem 5.6(2)", "||Wig(phi,psi)|| = ||phi|| ||psi||, 20 random pairs",
      worst, ctx.cfg.tolerances.pipeline);
}

void check_moyal(const Ctx& ctx, Entries& out) {
  // m = 1, |alpha| <= 3: dense Gram of the transforms against the tensor
  // Gram of the states.
  const int n1 = ctx.cfg.points_for(1);
  const Grid state1 = state_grid(ctx.spec, 1, n1, ctx.cfg.radius_for(1));
  std::vector<GridFn> basis1;
  for (int a = 0; a <= 3; ++a) basis1.push_back(hermite_state(ctx.spec, std::vector<int>{a}, state1));
  std::vector<Symbol> w1;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      w1.push_back(gamma2_retag(wigner_transform(basis1[a], basis1[b], ctx.spec), ctx.spec));
  double fro1 = 0.0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const cplx got = gamma2_inner(w1[i], w1[j], ctx.spec);
      const cplx want = inner_product(basis1[i / 4], basis1[j / 4]) *
                        std::conj(inner_product(basis1[i % 4], basis1[j % 4]));
      fro1 += std::norm(got - want);
    }
  add(out, "wig.moyal.gram_m1", "Def 3.6", "|alpha| <= 3, m=1, Frobenius", std::sqrt(fro1), ctx.cfg.tolerances.pipeline);

  if (ctx.m < 2) return;

  // m = 2: the transforms of product Hermite states factor per axis pair,
  // so the Gram is assembled from cached one-dimensional pairings computed
  // at the accurate one-dimensional resolution; a dense spot check below
  // ties the factorization to the full transform at the dense resolution.
  const int n2 = ctx.cfg.points_for(2);
  std::vector<std::vector<Symbol>> w_axis(2), w_axis_dense(2);
  std::vector<std::vector<GridFn>> h_axis(2);
  std::vector<TraceClassSpectrum> axis_spec{TraceClassSpectrum({ctx.spec[0]}),
                                            TraceClassSpectrum({ctx.spec[1]})};
  for (int k = 0; k < 2; ++k) {
    const Grid st = state_grid(axis_spec[k], 1, ctx.cfg.points_for(1), ctx.cfg.radius_for(1));
    const Grid std2 = state_grid(axis_spec[k], 1, n2, ctx.cfg.radius_for(2));
    for (int a = 0; a <= 3; ++a)
      h_axis[k].push_back(hermite_state(axis_spec[k], std::vector<int>{a}, st));
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        w_axis[k].push_back(wigner_transform(h_axis[k][a], h_axis[k][b], axis_spec[k]));
        w_axis_dense[k].push_back(
            wigner_transform(hermite_state(axis_spec[k], std::vector<int>{a}, std2),
                             hermite_state(axis_spec[k], std::vector<int>{b}, std2), axis_spec[k]));
      }
  }
  // per-axis pairing tables
  std::vector<std::vector<cplx>> pair_tab(2, std::vector<cplx>(16 * 16));
  std::vector<std::vector<cplx>> state_tab(2, std::vector<cplx>(4 * 4));
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j)
        pair_tab[k][i * 16 + j] = inner_product(w_axis[k][i], w_axis[k][j]);
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b)
        state_tab[k][a * 4 + b] = inner_product(h_axis[k][a], h_axis[k][b]);
  }
  // states alpha with |alpha| <= 3 at m = 2
  std::vector<std::pair<int, int>> alphas;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) alphas.emplace_back(a, b);
  double fro2 = 0.0;
  for (const auto& [a1, a2] : alphas)
    for (const auto& [b1, b2] : alphas)
      for (const auto& [c1, c2] : alphas)
        for (const auto& [d1, d2] : alphas) {
          const cplx got = pair_tab[0][(a1 * 4 + b1) * 16 + (c1 * 4 + d1)] *
                           pair_tab[1][(a2 * 4 + b2) * 16 + (c2 * 4 + d2)];
          const cplx want = state_tab[0][a1 * 4 + c1] * state_tab[1][a2 * 4 + c2] *
                            std::conj(state_tab[0][b1 * 4 + d1] * state_tab[1][b2 * 4 + d2]);
          fro2 += std::norm(got - want);
        }
  add(out, "wig.moyal.gram_m2", "Theorem 5.6(2)", "|alpha| <= 3, m=2, factorized Gram",
      std::sqrt(fro2), ctx.cfg.tolerances.pipeline);

  // dense agreement of the factorization for a non-vacuum pair
  const Grid state2 = state_grid(ctx.spec, 2, n2, ctx.cfg.radius_for(2));
  const GridFn pa = hermite_state(ctx.spec, std::vector<int>{1, 0}, state2);
  const GridFn pb = hermite_state(ctx.spec, std::vector<int>{0, 2}, state2);
  const Symbol dense = wigner_transform(pa, pb, ctx.spec);
  const Symbol fact = tensor_symbols(w_axis_dense[0][1 * 4 + 0], w_axis_dense[1][0 * 4 + 2]);
  add(out, "wig.moyal.dense_vs_factorized", "Remark 4.3", "Wig(h_(1,0), h_(0,2)) at m=2",
      sup_diff(dense, fact), 1e-9);
}

void check_reconstruction(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0xeeu);
  const int n = ctx.cfg.points_for(1);
  const Grid state = state_grid(ctx.spec, 1, n, ctx.cfg.radius_for(1));
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const GridFn phi = random_state(ctx.spec, state, rng);
    const GridFn psi = random_state(ctx.spec, state, rng);
    const Kernel want = rank_one_kernel(phi, psi);
    const Kernel got = op_theta(wigner_transform(phi, psi, ctx.spec), ctx.spec);
    worst = std::max(worst, diff_norm(got, want) / hs_norm(want));
  }
  add(out, "wig.reconstruction", "Remark 3.7", "Op(Wig(phi,psi)) vs rank-one, 20 pairs, relative",
      worst, 1e-5);
}

void check_op_identities(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0xffu);
  const int n = ctx.cfg.points_for(1);
  const Grid state = state_grid(ctx.spec, 1, n, ctx.cfg.radius_for(1));
  const Grid gamma = gamma_symbol_grid(ctx.spec, state);

  double worst_inv = 0.0, worst_hs = 0.0, worst_pair = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Symbol a = random_symbol_on(gamma, 1, rng);
    const Symbol b = random_symbol_on(gamma, 1, rng);
    // op_theta and the state-pair transform are mutually inverse
    const Kernel ka = op_theta(a, ctx.spec);
    const Symbol back = s_scale_inverse(
        t_inverse(u_reweight(ka, ctx.spec, ReweightDirection::gaussian_to_lebesgue)), ctx.spec,
        ScaleVariant::corrected);
    worst_inv = std::max(worst_inv, diff_norm(back, a));
    // Hilbert-Schmidt pairing matches the weighted symbol pairing
    const cplx hs = hs_inner(ka, op_theta(b, ctx.spec));
    const cplx want = gamma2_inner(gamma2_retag(a, ctx.spec), gamma2_retag(b, ctx.spec), ctx.spec);
    worst_hs = std::max(worst_hs, std::abs(hs - want));
    // duality against the transform of a state pair
    const GridFn phi = random_state(ctx.spec, state, rng, 2);
    const GridFn psi = random_state(ctx.spec, state, rng, 2);
    const cplx lhs = inner_product(apply_kernel(ka, phi), psi);
    const cplx rhs = symbol_dual_pairing(a, wigner_transform(phi, psi, ctx.spec));
    worst_pair = std::max(worst_pair, std::abs(lhs - rhs));
  }
  add(out, "wig.op.inverse_pair", "Def 3.4", "Wig(Op(a)) = a, 5 random symbols", worst_inv, ctx.cfg.tolerances.pipeline);
  add(out, "wig.op.hs_pairing", "Theorem 5.6(3)", "<Op a, Op b> = <a, b> weighted", worst_hs, ctx.cfg.tolerances.pipeline);
  add(out, "wig.op.duality", "Remark 3.5", "(Op(a) phi | psi) = <a, Wig(phi,psi)>", worst_pair,
      1e-5);
}

void check_ambiguity(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0x1234u);
  const int n = ctx.cfg.points_for(1);
  const Grid state = state_grid(ctx.spec, 1, n, ctx.cfg.radius_for(1));
  const GridFn phi = random_state(ctx.spec, state, rng);
  const double t = ctx.spec[0];

  std::vector<PhasePoint> pts;
  pts.push_back(PhasePoint{{0.0}, {0.0}});
  for (int j = 0; j < 20; ++j)
    pts.push_back(PhasePoint{{rng.uniform(-1.0, 1.0) / std::sqrt(t)},
                             {rng.uniform(-2.0, 2.0) / std::sqrt(t)}});
  const auto vals = ambiguity(phi, phi, pts, ctx.spec);
  add(out, "wig.ambiguity.at_zero", "Lemma 3.3", "A(phi,phi)(0) = ||phi||^2",
      std::abs(vals[0] - cplx{1.0, 0.0}), ctx.cfg.tolerances.closed_form);
  double worst_cs = 0.0;
  for (const cplx& v : vals) worst_cs = std::max(worst_cs, std::abs(v) - 1.0);
  add(out, "wig.ambiguity.bound", "Lemma 3.3", "|A| <= ||phi|| ||psi|| at 21 points",
      std::max(0.0, worst_cs), ctx.cfg.tolerances.closed_form);

  // vacuum profile e^{-t xi^2/8 - t eta^2/2}
  const GridFn vac = vacuum_state(ctx.spec, state);
  double worst_prof = 0.0;
  for (int j = 1; j < static_cast<int>(pts.size()); ++j) {
    const auto one = ambiguity(vac, vac, std::vector<PhasePoint>{pts[j]}, ctx.spec);
    const double xi = pts[j].xi[0], eta = pts[j].eta[0];
    const double want = std::exp(-t * xi * xi / 8.0 - t * eta * eta / 2.0);
    worst_prof = std::max(worst_prof, std::abs(one[0] - cplx{want, 0.0}));
  }
  add(out, "wig.ambiguity.vacuum_profile", "Lemma 3.3", "20 sampled phase points", worst_prof,
      1e-6);
}

void check_route_equivalence(const Ctx& ctx, Entries& out) {
  Rng rng(ctx.cfg.seed ^ 0x4321u);
  const int n = ctx.cfg.points_for(1);
  const double r = ctx.cfg.radius_for(1);
  const auto calib = calibrate_fourier_route(ctx.spec, n, r);
  add(out, "wig.route.calibration", "Lemma 3.3",
      "constant " + fmt(calib.constant.real()) + (calib.constant.imag() >= 0 ? "+" : "") +
          fmt(calib.constant.imag()) + "i",
      std::abs(calib.constant - cplx{1.0, 0.0}), ctx.cfg.tolerances.pipeline);

  const TraceClassSpectrum head({ctx.spec[0]});
  const Grid state = state_grid(head, 1, n, r);
  double worst = 0.0, worst_stab = 0.0;
  std::vector<std::pair<GridFn, GridFn>> pairs;
  pairs.emplace_back(hermite_state(head, std::vector<int>{1}, state),
                     hermite_state(head, std::vector<int>{0}, state));
  pairs.emplace_back(hermite_state(head, std::vector<int>{2}, state),
                     hermite_state(head, std::vector<int>{1}, state));
  pairs.emplace_back(random_state(head, state, rng, 3), random_state(head, state, rng, 3));
  for (const auto& [phi, psi] : pairs) {
    const Symbol wa = wigner_transform(phi, psi, head);
    const Symbol wb_raw = wigner_via_fourier(phi, psi, head, FourierRouteCalibration{}, r);
    Symbol wb = wb_raw;
    for (cplx& z : wb.values) z *= calib.constant;
    worst = std::max(worst, diff_norm(wa, wb) / norm(wa));
    const cplx c_state = inner_product(wa, wb_raw) / cplx{sqr(norm(wb_raw)), 0.0};
    worst_stab = std::max(worst_stab, std::abs(c_state - calib.constant));
  }
  add(out, "wig.route.equivalence", "Lemma 3.3", "3 state pairs, m=1, relative L2", worst, 1e-5);
  add(out, "wig.route.calib_stability", "Lemma 3.3", "per-state constants vs vacuum constant",
      worst_stab, ctx.cfg.tolerances.pipeline);

  if (ctx.m >= 2) {
    const int n2 = ctx.cfg.points_for(2);
    const Grid state2 = state_grid(ctx.spec, 2, n2, ctx.cfg.radius_for(2));
    const GridFn phi = hermite_state(ctx.spec, std::vector<int>{1, 0}, state2);
    const GridFn psi = hermite_state(ctx.spec, std::vector<int>{0, 1}, state2);
    const Symbol wa = wigner_transform(phi, psi, ctx.spec);
    Symbol wb = wigner_via_fourier(phi, psi, ctx.spec, calib, r);
    add(out, "wig.route.equivalence_m2", "Lemma 3.3", "hermite pair, m=2, relative L2",
        diff_norm(wa, wb) / norm(wa), 1e-5);
  }

  // dense ambiguity tables stop at m = 2
  if (ctx.spec.size() >= 3) {
    const Grid s3 = state_grid(ctx.spec, 3, 16, ctx.cfg.radius_for(3));
    const GridFn v3 = vacuum_state(ctx.spec, s3);
    bool rejected = false;
    try {
      wigner_via_fourier(v3, v3, ctx.spec, calib, r);
    } catch (const capacity_error&) {
      rejected = true;
    }
    add(out, "wig.route.capacity", "Lemma 3.3", "m=3 table rejected", rejected ? 0.0 : 1.0, 1e-12);
  }
}

// Quadrature mass of the weighted factor pair appended by the constant
// extension at eigenvalue t: the gamma_{1/2} x gamma_{1/(8t^2)} weights over
// the new axis pair.
double gamma2_axis_mass(double t, int points, double radius_sigmas) {
  const TraceClassSpectrum tail({t});
  const Grid pair = gamma_symbol_grid(tail, state_grid(tail, 1, points, radius_sigmas));
  const GaussianParams gx(0.5), gu(1.0 / (8.0 * t * t));
  double mx = 0.0, mu = 0.0;
  for (int j = 0; j < pair.axes[0].n; ++j) mx += pair.axes[0].h * gaussian_density(gx, pair.axes[0].node(j));
  for (int j = 0; j < pair.axes[1].n; ++j) mu += pair.axes[1].h * gaussian_density(gu, pair.axes[1].node(j));
  return mx * mu;
}

void check_gamma2_tower(const Ctx& ctx, Entries& out) {
  if (ctx.m < 2) return;
  const double r1 = ctx.cfg.radius_for(1);
  const double r = ctx.cfg.radius_for(2);

  // weighted norm of the vacuum transform per level; level data factorizes
  // over axes (the vacuum is a product state), so each level is the exact
  // product of per-axis dense norms.
  const int levels = std::min(3, ctx.spec.size());
  double worst_norm = 0.0;
  std::string params = "levels";
  for (int lvl = 1; lvl <= levels; ++lvl) {
    double prod = 1.0;
    for (int k = 0; k < lvl; ++k) {
      const TraceClassSpectrum ax({ctx.spec[k]});
      const Grid st = state_grid(ax, 1, ctx.cfg.points_for(1), r1);
      const GridFn vac = vacuum_state(ax, st);
      prod *= norm(gamma2_retag(wigner_transform(vac, vac, ax), ax));
    }
    worst_norm = std::max(worst_norm, std::abs(prod - 1.0));
    params += " " + std::to_string(lvl) + ":" + fmt(std::abs(prod - 1.0));
  }
  add(out, "wig.gamma2.vacuum_norm_levels", "Theorem 5.6(3)", params, worst_norm, ctx.cfg.tolerances.pipeline);

  // dense level-2 norm agrees with the factorized value
  const Grid st2 = state_grid(ctx.spec, 2, ctx.cfg.points_for(2), r);
  const GridFn vac2 = vacuum_state(ctx.spec, st2);
  const double dense2 = norm(gamma2_retag(wigner_transform(vac2, vac2, ctx.spec), ctx.spec));
  add(out, "wig.gamma2.vacuum_norm_dense_m2", "Theorem 5.6(3)", "dense level 2",
      std::abs(dense2 - 1.0), ctx.cfg.tolerances.pipeline);

  // Wig_m of embedded states is the beta extension of Wig_(m-1)
  const int n2 = ctx.cfg.points_for(2);
  const TraceClassSpectrum s1({ctx.spec[0]});
  const Grid st1 = state_grid(s1, 1, n2, r);
  Rng rng(ctx.cfg.seed ^ 0x2468u);
  const GridFn phi = random_state(s1, st1, rng, 2);
  const GridFn psi = random_state(s1, st1, rng, 2);
  const Symbol w1 = wigner_transform(phi, psi, s1);
  const Symbol beta_w1 = extend_symbol(w1, ExtensionKind::beta, ctx.spec, r, n2);
  const GridFn phi2 = tower_embed(phi, 2, ctx.spec, r, n2);
  const GridFn psi2 = tower_embed(psi, 2, ctx.spec, r, n2);
  const Symbol w2 = wigner_transform(phi2, psi2, ctx.spec);
  add(out, "wig.tower.beta_extension", "Prop 4.5", "Wig_2(iota phi, iota psi) = beta(Wig_1)",
      diff_norm(w2, beta_w1), ctx.cfg.tolerances.pipeline);

  // constant extension preserves weighted pairings.  Level 1 -> 2 is
  // checked densely at the working resolution; for 2 -> 3 the appended
  // factor separates from the pairing sum exactly (Fubini on the product
  // grid), so the dense identity is pinned at a compact size at machine
  // precision and the factor mass itself at the accurate 1-d resolution.
  const Grid gamma1 = gamma_symbol_grid(s1, st1);
  const Symbol a1 = excited_gamma_symbol(s1, gamma1, 1, std::vector<int>{1, 0});
  const Symbol b1 = excited_gamma_symbol(s1, gamma1, 1, std::vector<int>{0, 2});
  const cplx before = gamma2_inner(gamma2_retag(a1, s1), gamma2_retag(b1, s1), s1);
  const TraceClassSpectrum s2({ctx.spec[0], ctx.spec[1]});
  const Symbol a1e = extend_symbol(a1, ExtensionKind::beta, s2, r, n2);
  const Symbol b1e = extend_symbol(b1, ExtensionKind::beta, s2, r, n2);
  const cplx after = gamma2_inner(gamma2_retag(a1e, s2), gamma2_retag(b1e, s2), s2);
  double worst_pair = std::abs(after - before);
  if (ctx.spec.size() >= 3) {
    const TraceClassSpectrum s3({ctx.spec[0], ctx.spec[1], ctx.spec[2]});
    const int n3 = 16;
    const Grid st1c = state_grid(s1, 1, n3, r);
    const Grid gamma1c = gamma_symbol_grid(s1, st1c);
    const Symbol ac = excited_gamma_symbol(s1, gamma1c, 1, std::vector<int>{1, 0});
    const Symbol bc = excited_gamma_symbol(s1, gamma1c, 1, std::vector<int>{0, 1});
    const Symbol ac2 = extend_symbol(ac, ExtensionKind::beta, s3, r, n3);
    const Symbol bc2 = extend_symbol(bc, ExtensionKind::beta, s3, r, n3);
    const cplx before3 = gamma2_inner(gamma2_retag(ac2, s2), gamma2_retag(bc2, s2), s2);
    const Symbol ac3 = extend_symbol(ac2, ExtensionKind::beta, s3, r, n3);
    const Symbol bc3 = extend_symbol(bc2, ExtensionKind::beta, s3, r, n3);
    const cplx after3 = gamma2_inner(gamma2_retag(ac3, s3), gamma2_retag(bc3, s3), s3);
    const double mass16 = gamma2_axis_mass(ctx.spec[2], n3, r);
    worst_pair = std::max(worst_pair, std::abs(after3 - before3 * mass16));
    worst_pair = std::max(worst_pair, std::abs(gamma2_axis_mass(ctx.spec[2], 64, r1) - 1.0));
  }
  add(out, "wig.gamma2.tower_pairing", "Theorem 5.6(3)",
      "constant extension preserves weighted pairings", worst_pair, ctx.cfg.tolerances.pipeline);
}

void check_capacity(const Ctx& ctx, Entries& out) {
  if (ctx.spec.size() < 3) return;
  // dense tensors stop at m = 3
  const int n = 16;
  const TraceClassSpectrum s2({ctx.spec[0], ctx.spec[1]});
  const Grid w2 = weyl_symbol_grid(state_grid(s2, 2, n, ctx.cfg.radius_for(2)));
  Rng rng(ctx.cfg.seed ^ 0x1357u);
  const Symbol g2 = random_symbol_on(w2, 2, rng);
  bool rejected = false;
  try {
    tensor_symbols(g2, g2);
  } catch (const capacity_error&) {
    rejected = true;
  }
  add(out, "weyl.tensor.capacity", "Remark 4.3", "m1+m2 = 4 rejected", rejected ? 0.0 : 1.0, 1e-12);
}

// ---- registry ---------------------------------------------------------------

struct CheckDef {
  const char* name;
  const char* anchor;  // identity the suite exercises (used on error records)
  int min_m;           // minimum truncation required
  void (*fn)(const Ctx&, Entries&);
};

const CheckDef kChecks[] = {
    {"gauss.density", "Notation 4.1", 0, check_gaussian_density},
    {"gauss.char", "Eq. (4.1)", 0, check_gaussian_char},
    {"gauss.scale", "Prop 4.5", 0, check_gaussian_scale},
    {"gauss.cm", "Def 5.2", 0, check_cameron_martin},
    {"gauss.char_functional", "Def 5.2", 0, check_char_functional},
    {"mft.closed_forms", "Def 2.3", 0, check_mft_closed_forms},
    {"mft.bounds", "Lemma 2.5(2)", 0, check_mft_bounds},
    {"mft.recovery", "Prop 2.4", 0, check_mft_recovery},
    {"grid.quadrature", "Notation 4.1", 1, check_grid_quadrature},
    {"grid.hermite", "Theorem 5.6", 1, check_hermite},
    {"grid.rank_one", "Remark 3.7", 1, check_rank_one},
    {"grid.refinement", "Eq. (4.1)", 1, check_refinement},
    {"weyl.lemma44", "Lemma 4.4", 1, check_lemma44},
    {"weyl.t_unitarity", "Remark 4.3", 1, check_t_unitarity},
    {"weyl.t_dual_path", "Remark 4.3", 1, check_t_dual_path},
    {"weyl.s_scale", "Prop 4.5", 1, check_s_scale},
    {"weyl.u_reweight", "Prop 4.5", 1, check_u_reweight},
    {"weyl.tensor", "Remark 4.3", 2, check_tensor},
    {"weyl.extensions", "Prop 4.5", 2, check_extensions},
    {"weyl.diagram", "Prop 4.5", 2, check_diagram},
    {"heis.group", "Def 5.1", 1, check_group_axioms},
    {"heis.pi_unitarity", "Def 5.2", 1, check_pi_unitarity},
    {"heis.pi_homomorphism", "Def 5.2", 1, check_pi_homomorphism},
    {"heis.pi_adjoint", "Def 5.2", 1, check_pi_adjoint},
    {"heis.tower", "Eq. (5.1)", 2, check_tower},
    {"wig.vacuum", "Theorem 5.6", 1, check_wigner_vacuum},
    {"wig.norm", "Theorem 5.6(2)", 1, check_wigner_unitarity},
    {"wig.moyal", "Def 3.6", 1, check_moyal},
    {"wig.reconstruction", "Remark 3.7", 1, check_reconstruction},
    {"wig.op", "Def 3.4", 1, check_op_identities},
    {"wig.ambiguity", "Lemma 3.3", 1, check_ambiguity},
    {"wig.route", "Lemma 3.3", 1, check_route_equivalence},
    {"wig.gamma2_tower", "Theorem 5.6(3)", 2, check_gamma2_tower},
    {"capacity", "Remark 4.3", 2, check_capacity},
};

}  // namespace

Report run_verify(const RunConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const Ctx ctx{cfg, TraceClassSpectrum(cfg.spectrum), cfg.truncation};

  const int n_checks = static_cast<int>(std::size(kChecks));
  std::vector<Entries> slots(n_checks);
  parallel_for(n_checks, [&](std::int64_t i) {
    const CheckDef& def = kChecks[i];
    if (ctx.m < def.min_m) return;
    try {
      def.fn(ctx, slots[i]);
    } catch (const capacity_error& e) {
      add_error(slots[i], def.name, def.anchor, "", std::string("capacity: ") + e.what(),
                cfg.tolerances.pipeline);
    } catch (const std::exception& e) {
      add_error(slots[i], def.name, def.anchor, "", e.what(), cfg.tolerances.pipeline);
    }
  });

  Report report;
  for (auto& s : slots)
    for (auto& e : s) report.entries.push_back(std::move(e));
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Report run_tower(const RunConfig& cfg, int m_max) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const TraceClassSpectrum spec(cfg.spectrum);
  if (m_max < 1 || m_max > spec.size() || m_max > 3)
    throw capacity_error("tower: m_max must be in [1, min(len(spectrum), 3)]");
  const double r = cfg.radius_for(1);
  const int n = std::min(cfg.grid.points, 32);  // states are m-dimensional

  Report report;
  Rng rng(cfg.seed ^ 0x7077u);

  // no-op embedding
  {
    const Grid g = state_grid(spec, 1, n, r);
    const GridFn phi = random_state(spec, g, rng, 2);
    add(report.entries, "tower.noop", "Eq. (5.1)", "level 1 -> 1",
        sup_diff(tower_embed(phi, 1, spec, r, n), phi), 1e-15);
  }

  double prev_norm = -1.0;
  for (int lvl = 1; lvl <= m_max; ++lvl) {
    if (lvl >= 2) {
      const Grid g = state_grid(spec, lvl - 1, n, r);
      const GridFn phi = random_state(spec, g, rng, 2);
      const GridFn up = tower_embed(phi, lvl, spec, r, n);
      add(report.entries, "tower.isometry", "Eq. (5.1)",
          "level " + std::to_string(lvl - 1) + " -> " + std::to_string(lvl),
          std::abs(norm(up) - norm(phi)), cfg.tolerances.closed_form);
      const auto el = random_element(spec, lvl - 1, rng, 0.45);
      const GridFn lhs = tower_embed(schrodinger_apply(el, phi, spec), lvl, spec, r, n);
      const GridFn rhs = schrodinger_apply(pad_element(el, lvl), up, spec);
      add(report.entries, "tower.intertwine", "Eq. (5.1)",
          "level " + std::to_string(lvl - 1) + " -> " + std::to_string(lvl), diff_norm(lhs, rhs),
          1e-6);
    }
    // weighted norm of the vacuum symbol at this level (exact per-axis
    // factorization of the product state)
    double prod = 1.0;
    for (int k = 0; k < lvl; ++k) {
      const TraceClassSpectrum ax({spec[k]});
      const Grid st = state_grid(ax, 1, cfg.points_for(1), r);
      const GridFn vac = vacuum_state(ax, st);
      prod *= norm(gamma2_retag(wigner_transform(vac, vac, ax), ax));
    }
    add(report.entries, "tower.gamma2_vacuum_norm", "Theorem 5.6(3)",
        "level " + std::to_string(lvl) + ": " + fmt(prod), std::abs(prod - 1.0), cfg.tolerances.pipeline);
    if (prev_norm >= 0.0)
      add(report.entries, "tower.gamma2_norm_monotone", "Theorem 5.6(3)",
          "levels " + std::to_string(lvl - 1) + " -> " + std::to_string(lvl),
          std::abs(prod - prev_norm), cfg.tolerances.pipeline);
    prev_norm = prod;
  }

  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---- wigner CLI run ---------------------------------------------------------

GridFn parse_state_spec(const std::string& spec_str, const TraceClassSpectrum& s, const Grid& grid) {
  const auto colon = spec_str.find(':');
  const std::string head = spec_str.substr(0, colon);
  std::vector<double> nums;
  if (colon != std::string::npos) {
    std::stringstream ss(spec_str.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw config_error("state spec: cannot parse number '" + tok + "'");
      }
      if (used != tok.size()) throw config_error("state spec: cannot parse number '" + tok + "'");
      nums.push_back(v);
    }
  }
  const int m = grid.rank();
  if (head == "hermite") {
    std::vector<int> alpha;
    for (double v : nums) {
      if (v < 0 || v != std::floor(v)) throw config_error("state spec: hermite indices must be nonnegative integers");
      alpha.push_back(static_cast<int>(v));
    }
    if (static_cast<int>(alpha.size()) > m)
      throw config_error("state spec: more hermite indices than axes");
    return hermite_state(s, alpha, grid);
  }
  if (head == "shifted-vacuum") {
    if (static_cast<int>(nums.size()) != 2 * m)
      throw config_error("state spec: shifted-vacuum needs xi_1..xi_m,eta_1..eta_m");
    HeisenbergElement g;
    g.xi.assign(nums.begin(), nums.begin() + m);
    g.eta.assign(nums.begin() + m, nums.end());
    g.t = 0.0;
    return schrodinger_apply(g, vacuum_state(s, grid), s);
  }
  throw config_error("state spec: unknown kind '" + head + "' (use hermite: or shifted-vacuum:)");
}

WignerRun run_wigner(const RunConfig& cfg, const std::string& state_spec,
                     const std::string& state_spec2, const std::string& out_prefix) {
  cfg.validate();
  const TraceClassSpectrum spec(cfg.spectrum);
  const int m = cfg.truncation;
  if (m < 1) throw config_error("wigner: truncation must be at least 1");
  if (m > 3) throw capacity_error("wigner: dense transforms support m <= 3");
  const Grid state = state_grid(spec, m, cfg.points_for(m), cfg.radius_for(m));

  const GridFn phi = parse_state_spec(state_spec, spec, state);
  const GridFn psi = parse_state_spec(state_spec2, spec, state);
  const Symbol w = wigner_transform(phi, psi, spec);
  const Symbol wg = gamma2_retag(w, spec);

  WignerRun res;
  res.lebesgue_csv = out_prefix + "_lebesgue.csv";
  res.gamma2_csv = out_prefix + "_gamma2.csv";
  const auto names = symbol_axis_names(m);
  write_csv(w, names, res.lebesgue_csv);
  write_csv(wg, names, res.gamma2_csv);

  res.weighted_norm = norm(wg);
  res.moyal_residual = std::abs(res.weighted_norm - norm(phi) * norm(psi));
  res.self_pair = state_spec == state_spec2;
  if (res.self_pair) {
    double worst = 0.0;
    for (const cplx& z : w.values) worst = std::max(worst, std::abs(z.imag()));
    res.imag_residual = worst;
  }
  return res;
}

}  // namespace gausswig
