#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gausswig/verify.hpp"
#include "gausswig/weyl.hpp"

using namespace gausswig;

namespace {

const TraceClassSpectrum kSpec({1.0, 0.5, 0.25});

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

}  // namespace

TEST_CASE("Gaussian pair closed form under the inverse transform") {
  // the forward direction is band-limited by the frequency axes, so the
  // closed-form checks run on the wide 64-point, 12-sigma layout
  for (double t : {0.25, 0.5, 1.0, 2.0}) {
    const TraceClassSpectrum st({t});
    const Grid state = state_grid(st, 1, 64, 12.0);
    const Kernel k = gauss_pair_kernel(state, t);
    const Symbol a = t_inverse(k);
    CHECK(sup_diff(a, lemma44_symbol(a.grid, t)) < 1e-6);
    // forward direction and round trip
    CHECK(sup_diff(t_forward(lemma44_symbol(a.grid, t)), k) < 1e-6);
    CHECK(sup_diff(t_forward(a), k) < 1e-8);
  }
}

TEST_CASE("self-dual case t = 1/2: output variances (1/4, 1/4)") {
  const TraceClassSpectrum st({0.5});
  const Grid state = state_grid(st, 1, 64, 12.0);
  const Symbol a = t_inverse(gauss_pair_kernel(state, 0.5));
  const GaussianParams q(0.25);
  double worst = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int l = 0; l < 64; ++l)
      worst = std::max(worst,
                       std::abs(a.values[static_cast<std::int64_t>(i) * 64 + l] -
                                cplx{std::sqrt(gaussian_density(q, a.grid.axes[0].node(i)) *
                                               gaussian_density(q, a.grid.axes[1].node(l))),
                                     0.0}));
  CHECK(worst < 1e-6);
}

TEST_CASE("transform unitarity on random symbols") {
  Rng rng(31);
  const Grid w1 = weyl_symbol_grid(state_grid(kSpec, 1, 64));
  for (int trial = 0; trial < 25; ++trial) {
    const Symbol a = random_symbol_on(w1, 1, rng);
    const Kernel k = t_forward(a);
    CHECK(std::abs(norm(k) - 1.0) < 1e-6);
    CHECK(diff_norm(t_inverse(k), a) < 1e-8);
  }
}

TEST_CASE("fft path agrees with the direct quadrature path") {
  Rng rng(37);
  for (int n : {32, 64}) {
    const Grid w = weyl_symbol_grid(state_grid(kSpec, 1, n));
    const Symbol a = random_symbol_on(w, 1, rng);
    const Kernel kf = t_forward(a);
    const Kernel kd = t_forward_direct(a);
    CHECK(sup_diff(kf, kd) < 1e-9);
    CHECK(sup_diff(t_inverse(kf), t_inverse_direct(kf)) < 1e-9);
  }
  // and at m = 2 on a compact grid
  const Grid w2 = weyl_symbol_grid(state_grid(kSpec, 2, 16));
  const Symbol a2 = random_symbol_on(w2, 2, rng);
  CHECK(sup_diff(t_forward(a2), t_forward_direct(a2)) < 1e-9);
}

TEST_CASE("transform rejects detached grids and wrong tags") {
  const Grid state = state_grid(kSpec, 1, 32);
  Symbol a;
  a.m = 1;
  a.grid = weyl_symbol_grid(state);
  a.measure = lebesgue_tag();
  a.values.assign(a.grid.size(), cplx{1e-3, 0.0});

  Symbol decoupled = a;
  decoupled.grid.axes[1].h *= 1.5;  // break h_x h_xi n = 2 pi
  CHECK_THROWS_AS(t_forward(decoupled), config_error);

  Symbol weighted = a;
  weighted.measure = gamma2_tag(kSpec, 1);
  CHECK_THROWS_AS(t_forward(weighted), std::invalid_argument);
}

TEST_CASE("diagonal rescaling: unit spectrum is the identity, corrected is unitary") {
  Rng rng(41);
  const TraceClassSpectrum unit({1.0});
  const Grid gu = gamma_symbol_grid(unit, state_grid(unit, 1, 32));
  const Symbol bu = random_symbol_on(gu, 1, rng);
  CHECK(sup_diff(s_scale(bu, unit, ScaleVariant::corrected), bu) == 0.0);
  CHECK(sup_diff(s_scale(bu, unit, ScaleVariant::printed), bu) == 0.0);

  const TraceClassSpectrum half({0.5});
  const Grid gh = gamma_symbol_grid(half, state_grid(half, 1, 32));
  const Symbol bh = random_symbol_on(gh, 1, rng);
  CHECK(std::abs(norm(s_scale(bh, half, ScaleVariant::corrected)) - norm(bh)) < 1e-12);
  // the printed prefactor is off by the factor 1/t on the norm
  CHECK(norm(s_scale(bh, half, ScaleVariant::printed)) / norm(bh) == doctest::Approx(2.0));
}

TEST_CASE("reweighting between Lebesgue and Gaussian kernels") {
  Rng rng(43);
  const Grid state = state_grid(kSpec, 1, 64);
  const Kernel k = random_kernel_on(kernel_grid(state), 1, rng);
  const Kernel gk = u_reweight(k, kSpec, ReweightDirection::lebesgue_to_gaussian);
  CHECK(gk.measure.kind == MeasureKind::Gaussian);
  CHECK(std::abs(norm(gk) - norm(k)) < 1e-10);
  CHECK(sup_diff(u_reweight(gk, kSpec, ReweightDirection::gaussian_to_lebesgue), k) < 1e-12);

  // formula cancellation on the Gaussian pair
  const Kernel vac = gauss_pair_kernel(state, 1.0);
  const Kernel one = u_reweight(vac, kSpec, ReweightDirection::lebesgue_to_gaussian);
  double worst = 0.0;
  for (const cplx& z : one.values) worst = std::max(worst, std::abs(z - cplx{1.0, 0.0}));
  CHECK(worst < 1e-12);

  CHECK_THROWS_AS(u_reweight(gk, kSpec, ReweightDirection::lebesgue_to_gaussian),
                  std::invalid_argument);
}

TEST_CASE("tensor maps and their commutation with the transform") {
  Rng rng(47);
  const TraceClassSpectrum s1({1.0});
  const TraceClassSpectrum s2({0.5});
  const Grid w1 = weyl_symbol_grid(state_grid(s1, 1, 32));
  const Grid w2 = weyl_symbol_grid(state_grid(s2, 1, 32));
  const Symbol g1 = random_symbol_on(w1, 1, rng);
  const Symbol g2 = random_symbol_on(w2, 1, rng);

  const Symbol g12 = tensor_symbols(g1, g2);
  CHECK(std::abs(norm(g12) - norm(g1) * norm(g2)) < 1e-10);

  const Kernel k1 = t_forward(g1);
  const Kernel k2 = t_forward(g2);
  const Kernel v12 = tensor_kernels(k1, k2);
  CHECK(std::abs(norm(v12) - norm(k1) * norm(k2)) < 1e-10);
  CHECK(diff_norm(t_forward(g12), v12) < 1e-6);

  // weighted factors are rejected
  Symbol weighted = g1;
  weighted.measure = gamma2_tag(s1, 1);
  CHECK_THROWS_AS(tensor_symbols(weighted, g2), std::invalid_argument);

  // capacity: dense tensors stop at m = 3
  CHECK_THROWS_AS(tensor_symbols(g12, g12), capacity_error);
}

TEST_CASE("extension isometries") {
  Rng rng(53);
  const TraceClassSpectrum s1({1.0});
  const TraceClassSpectrum s12({1.0, 0.5});
  const Grid state1 = state_grid(s1, 1, 32);

  const Symbol b = random_symbol_on(gamma_symbol_grid(s1, state1), 1, rng);
  CHECK(std::abs(norm(extend_symbol(b, ExtensionKind::beta, s12)) - norm(b)) < 1e-8);

  const Symbol a = random_symbol_on(weyl_symbol_grid(state1), 1, rng);
  CHECK(std::abs(norm(extend_symbol(a, ExtensionKind::alpha, s12)) - norm(a)) < 1e-8);

  const Kernel k = random_kernel_on(kernel_grid(state1), 1, rng);
  const Kernel ek = extend_kernel(k, ExtensionKind::eta, s12);
  CHECK(std::abs(norm(ek) - norm(k)) < 1e-8);

  // eta on the Gaussian pair appends exactly the t_m Gaussian pair factor
  const Kernel vac = gauss_pair_kernel(state1, 1.0);
  const Kernel evac = extend_kernel(vac, ExtensionKind::eta, s12);
  const TraceClassSpectrum stail({0.5});
  const Grid tail_state = state_grid(stail, 1, 32);
  const Kernel tail = gauss_pair_kernel(tail_state, 0.5);
  double worst = 0.0;
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      for (int p = 0; p < 32; ++p)
        for (int q = 0; q < 32; ++q) {
          const cplx want = vac.values[static_cast<std::int64_t>(i) * 32 + p] *
                            tail.values[static_cast<std::int64_t>(j) * 32 + q];
          const std::int64_t idx = ((static_cast<std::int64_t>(i) * 32 + j) * 32 + p) * 32 + q;
          worst = std::max(worst, std::abs(evac.values[idx] - want));
        }
  CHECK(worst < 1e-14);

  // constant extension preserves the probability-tag norm
  const Kernel gk = u_reweight(k, s1, ReweightDirection::lebesgue_to_gaussian);
  const Kernel ik = extend_kernel(gk, ExtensionKind::iota, s12);
  CHECK(std::abs(norm(ik) - norm(gk)) < 1e-8);
  CHECK(ik.measure.kind == MeasureKind::Gaussian);
  CHECK(ik.measure.variances == std::vector<double>{1.0, 0.5, 1.0, 0.5});

  // tag preconditions
  CHECK_THROWS_AS(extend_kernel(gk, ExtensionKind::eta, s12), std::invalid_argument);
  CHECK_THROWS_AS(extend_kernel(k, ExtensionKind::iota, s12), std::invalid_argument);
}

TEST_CASE("extension squares commute with the corrected rescaling") {
  const TraceClassSpectrum s12({1.0, 0.5});
  const TraceClassSpectrum s1({1.0});
  const Grid gamma1 = gamma_symbol_grid(s1, state_grid(s1, 1, 32));

  const Symbol b = excited_gamma_symbol(s1, gamma1, 1, std::vector<int>{0, 0});
  const auto res = diagram_residual(2, b, s12, ScaleVariant::corrected, 64, 12.0);
  CHECK(res.top < 1e-6);
  CHECK(res.middle < 1e-6);
  CHECK(res.bottom < 1e-6);

  const Symbol bh = excited_gamma_symbol(s1, gamma1, 1, std::vector<int>{2, 1});
  const auto resh = diagram_residual(2, bh, s12, ScaleVariant::corrected, 64, 12.0);
  CHECK(resh.top < 1e-6);
  CHECK(resh.middle < 1e-6);
  CHECK(resh.bottom < 1e-6);

  CHECK_THROWS_AS(diagram_residual(4, b, s12), capacity_error);
}

TEST_CASE("printed rescaling breaks the top square") {
  const TraceClassSpectrum halves({0.5, 0.5});
  const TraceClassSpectrum h1({0.5});
  const Grid gamma1 = gamma_symbol_grid(h1, state_grid(h1, 1, 32));
  const Symbol b = excited_gamma_symbol(h1, gamma1, 1, std::vector<int>{0, 0});
  const auto res = diagram_residual(2, b, halves, ScaleVariant::printed, 64, 12.0);
  CHECK(res.top > 0.1);
  // the squares without the rescaling stay intact
  CHECK(res.middle < 1e-6);
  CHECK(res.bottom < 1e-6);
}
