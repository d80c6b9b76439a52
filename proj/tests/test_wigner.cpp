#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "gausswig/verify.hpp"
#include "gausswig/wigner.hpp"

using namespace gausswig;

namespace {

const TraceClassSpectrum kSpec({1.0, 0.5, 0.25});

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

Symbol vacuum_closed_form(const Grid& gamma, double t) {
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

}  // namespace

TEST_CASE("vacuum transform closed form via the kernel chain") {
  for (double t : {0.5, 1.0}) {
    const TraceClassSpectrum st({t});
    const Grid state = state_grid(st, 1, 64);
    const GridFn vac = vacuum_state(st, state);
    const Symbol w = wigner_transform(vac, vac, st);
    CHECK(sup_diff(w, vacuum_closed_form(w.grid, t)) < 1e-6);

    // weighted picture: the constant 1 with unit weighted norm
    const Symbol wg = gamma2_retag(w, st);
    Symbol dev = wg;
    for (auto& z : dev.values) z -= cplx{1.0, 0.0};
    CHECK(norm(dev) < 1e-6);
    CHECK(std::abs(norm(wg) - 1.0) < 1e-6);
  }
}

TEST_CASE("transform norm equals the product of state norms") {
  Rng rng(17);
  const Grid state = state_grid(kSpec, 1, 64, 14.0);
  for (int trial = 0; trial < 20; ++trial) {
    const GridFn phi = random_state(kSpec, state, rng);
    const GridFn psi = random_state(kSpec, state, rng);
    const Symbol w = wigner_transform(phi, psi, kSpec);
    CHECK(std::abs(norm(w) - norm(phi) * norm(psi)) < 1e-6);
  }
}

TEST_CASE("orthogonality relations on the Hermite family, m = 1") {
  const Grid state = state_grid(kSpec, 1, 64, 14.0);
  std::vector<GridFn> basis;
  for (int a = 0; a <= 3; ++a) basis.push_back(hermite_state(kSpec, std::vector<int>{a}, state));
  std::vector<Symbol> w;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      w.push_back(gamma2_retag(wigner_transform(basis[a], basis[b], kSpec), kSpec));
  double fro = 0.0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const cplx got = gamma2_inner(w[i], w[j], kSpec);
      const cplx want = inner_product(basis[i / 4], basis[j / 4]) *
                        std::conj(inner_product(basis[i % 4], basis[j % 4]));
      fro += std::norm(got - want);
    }
  CHECK(std::sqrt(fro) < 1e-6);
}

TEST_CASE("rank-one reconstruction and the inverse pair") {
  Rng rng(19);
  const Grid state = state_grid(kSpec, 1, 64, 14.0);
  for (int trial = 0; trial < 5; ++trial) {
    const GridFn phi = random_state(kSpec, state, rng);
    const GridFn psi = random_state(kSpec, state, rng);
    const Kernel want = rank_one_kernel(phi, psi);
    const Kernel got = op_theta(wigner_transform(phi, psi, kSpec), kSpec);
    CHECK(diff_norm(got, want) / hs_norm(want) < 1e-5);
  }

  // symbols reproduce through Op then the inverse chain
  const Grid gamma = gamma_symbol_grid(kSpec, state);
  Rng rng2(23);
  const Symbol a = random_symbol_on(gamma, 1, rng2);
  const Kernel ka = op_theta(a, kSpec);
  const Symbol back = s_scale_inverse(
      t_inverse(u_reweight(ka, kSpec, ReweightDirection::gaussian_to_lebesgue)), kSpec,
      ScaleVariant::corrected);
  CHECK(diff_norm(back, a) < 1e-6);

  // the quantizer accepts the weighted representative as well
  const Kernel ka2 = op_theta(gamma2_retag(a, kSpec), kSpec);
  CHECK(diff_norm(ka2, ka) < 1e-10);
}

TEST_CASE("quantizer pairing identities") {
  Rng rng(29);
  const Grid state = state_grid(kSpec, 1, 64, 14.0);
  const Grid gamma = gamma_symbol_grid(kSpec, state);
  for (int trial = 0; trial < 5; ++trial) {
    const Symbol a = random_symbol_on(gamma, 1, rng);
    const Symbol b = random_symbol_on(gamma, 1, rng);
    const Kernel ka = op_theta(a, kSpec);
    const Kernel kb = op_theta(b, kSpec);
    // unitarity into the Hilbert-Schmidt space
    const cplx hs = hs_inner(ka, kb);
    const cplx weighted = gamma2_inner(gamma2_retag(a, kSpec), gamma2_retag(b, kSpec), kSpec);
    CHECK(std::abs(hs - weighted) < 1e-6);
    // duality against state pairs
    const GridFn phi = random_state(kSpec, state, rng, 2);
    const GridFn psi = random_state(kSpec, state, rng, 2);
    const cplx lhs = inner_product(apply_kernel(ka, phi), psi);
    const cplx rhs = symbol_dual_pairing(a, wigner_transform(phi, psi, kSpec));
    CHECK(std::abs(lhs - rhs) < 1e-5);
  }
}

TEST_CASE("ambiguity values") {
  Rng rng(31);
  const Grid state = state_grid(kSpec, 1, 64);
  const GridFn phi = random_state(kSpec, state, rng);
  const GridFn psi = random_state(kSpec, state, rng);

  std::vector<PhasePoint> pts;
  pts.push_back(PhasePoint{{0.0}, {0.0}});
  for (int j = 0; j < 10; ++j)
    pts.push_back(PhasePoint{{rng.uniform(-1.0, 1.0)}, {rng.uniform(-2.0, 2.0)}});
  const auto vals = ambiguity(phi, phi, pts, kSpec);
  CHECK(std::abs(vals[0] - cplx{1.0, 0.0}) < 1e-8);
  for (const auto& v : vals) CHECK(std::abs(v) <= 1.0 + 1e-8);

  // sesquilinearity: A(phi + c psi, psi) = A(phi,psi) + c A(psi,psi)
  const cplx c{0.3, -0.6};
  GridFn mix = phi;
  for (std::size_t i = 0; i < mix.values.size(); ++i) mix.values[i] += c * psi.values[i];
  const auto lhs = ambiguity(mix, psi, pts, kSpec);
  const auto a1 = ambiguity(phi, psi, pts, kSpec);
  const auto a2 = ambiguity(psi, psi, pts, kSpec);
  for (std::size_t j = 0; j < pts.size(); ++j)
    CHECK(std::abs(lhs[j] - (a1[j] + c * a2[j])) < 1e-10);

  // vacuum profile: e^{-t xi^2/8 - t eta^2/2}
  const GridFn vac = vacuum_state(kSpec, state);
  for (int j = 1; j < 6; ++j) {
    const auto one = ambiguity(vac, vac, std::vector<PhasePoint>{pts[j]}, kSpec);
    const double want =
        std::exp(-pts[j].xi[0] * pts[j].xi[0] / 8.0 - pts[j].eta[0] * pts[j].eta[0] / 2.0);
    CHECK(std::abs(one[0] - cplx{want, 0.0}) < 1e-6);
  }
  // frozen value at (xi, eta) = (1, 0.5), t = 0.5
  const TraceClassSpectrum half({0.5});
  const Grid sh = state_grid(half, 1, 64);
  const GridFn vh = vacuum_state(half, sh);
  const auto frozen =
      ambiguity(vh, vh, std::vector<PhasePoint>{PhasePoint{{1.0}, {0.5}}}, half);
  CHECK(std::abs(frozen[0] - cplx{0.8824969025845954, 0.0}) < 1e-7);

  // shift-limit propagation
  CHECK_THROWS_AS(ambiguity(phi, phi, std::vector<PhasePoint>{PhasePoint{{9.0}, {0.0}}}, kSpec),
                  std::domain_error);
}

TEST_CASE("both transform routes agree after the one-time calibration") {
  const auto calib = calibrate_fourier_route(kSpec, 64, 14.0);
  CHECK(std::abs(calib.constant - cplx{1.0, 0.0}) < 1e-6);

  const TraceClassSpectrum head({kSpec[0]});
  const Grid state = state_grid(head, 1, 64, 14.0);
  Rng rng(37);
  std::vector<std::pair<GridFn, GridFn>> pairs;
  pairs.emplace_back(hermite_state(head, std::vector<int>{1}, state),
                     hermite_state(head, std::vector<int>{0}, state));
  pairs.emplace_back(hermite_state(head, std::vector<int>{2}, state),
                     hermite_state(head, std::vector<int>{3}, state));
  pairs.emplace_back(random_state(head, state, rng), random_state(head, state, rng));
  for (const auto& [phi, psi] : pairs) {
    const Symbol wa = wigner_transform(phi, psi, head);
    Symbol wb = wigner_via_fourier(phi, psi, head, calib, 14.0);
    CHECK(diff_norm(wa, wb) / norm(wa) < 1e-5);

    // the transform of the symbol at the zero phase point is its total
    // mass under the duality constants, and recovers <phi, psi>
    const cplx mass = integral(wa) * std::sqrt(head[0] / kTwoPi);
    CHECK(std::abs(mass - inner_product(phi, psi)) < 1e-6);
  }
}

TEST_CASE("route agreement at m = 2 on a compact grid") {
  const auto calib = calibrate_fourier_route(kSpec, 64, 14.0);
  const Grid state = state_grid(kSpec, 2, 32);
  const GridFn phi = hermite_state(kSpec, std::vector<int>{1, 0}, state);
  const GridFn psi = hermite_state(kSpec, std::vector<int>{0, 1}, state);
  const Symbol wa = wigner_transform(phi, psi, kSpec);
  const Symbol wb = wigner_via_fourier(phi, psi, kSpec, calib);
  CHECK(diff_norm(wa, wb) / norm(wa) < 1e-5);
}

TEST_CASE("route agreement away from unit variance, including moved vacua") {
  // the calibration constant measured at one eigenvalue applies at any
  // other: the per-axis duality scalings carry all the t dependence
  const auto calib = calibrate_fourier_route(kSpec, 64, 14.0);
  for (double t : {0.25, 2.0}) {
    const TraceClassSpectrum st({t});
    const Grid state = state_grid(st, 1, 64, 14.0);
    const GridFn phi = parse_state_spec("shifted-vacuum:0.6,-0.4", st, state);
    const GridFn psi = hermite_state(st, std::vector<int>{2}, state);
    const Symbol wa = wigner_transform(phi, psi, st);
    const Symbol wb = wigner_via_fourier(phi, psi, st, calib, 14.0);
    CHECK(diff_norm(wa, wb) / norm(wa) < 1e-5);
    // moved vacuum keeps unit weighted norm
    CHECK(std::abs(norm(gamma2_retag(wigner_transform(phi, phi, st), st)) - 1.0) < 1e-6);
  }
}

TEST_CASE("tower structure of the transforms") {
  Rng rng(41);
  const TraceClassSpectrum s1({kSpec[0]});
  const int n = 32;
  const Grid st1 = state_grid(s1, 1, n);
  const GridFn phi = random_state(s1, st1, rng, 2);
  const GridFn psi = random_state(s1, st1, rng, 2);

  const Symbol w1 = wigner_transform(phi, psi, s1);
  const Symbol beta_w1 = extend_symbol(w1, ExtensionKind::beta, kSpec);
  const Symbol w2 = wigner_transform(tower_embed(phi, 2, kSpec),
                                     tower_embed(psi, 2, kSpec), kSpec);
  CHECK(diff_norm(w2, beta_w1) < 1e-6);

  // weighted pairings survive the constant extension
  const Grid gamma1 = gamma_symbol_grid(s1, st1);
  const Symbol a = excited_gamma_symbol(s1, gamma1, 1, std::vector<int>{1, 0});
  const Symbol b = excited_gamma_symbol(s1, gamma1, 1, std::vector<int>{0, 2});
  const cplx before = gamma2_inner(gamma2_retag(a, s1), gamma2_retag(b, s1), s1);
  const TraceClassSpectrum s12({kSpec[0], kSpec[1]});
  const cplx after = gamma2_inner(gamma2_retag(extend_symbol(a, ExtensionKind::beta, s12), s12),
                                  gamma2_retag(extend_symbol(b, ExtensionKind::beta, s12), s12),
                                  s12);
  CHECK(std::abs(after - before) < 1e-6);
}

TEST_CASE("capacity limits and rejected inputs") {
  const Grid s3 = state_grid(kSpec, 3, 16);
  const GridFn v3 = vacuum_state(kSpec, s3);
  CHECK_THROWS_AS(wigner_via_fourier(v3, v3, kSpec, FourierRouteCalibration{}), capacity_error);

  // gamma2 machinery rejects mismatched tags
  const Grid state = state_grid(kSpec, 1, 32);
  const GridFn vac = vacuum_state(kSpec, state);
  const Symbol w = wigner_transform(vac, vac, kSpec);
  CHECK_THROWS_AS(gamma2_inner(w, w, kSpec), std::invalid_argument);
  CHECK_THROWS_AS(gamma2_untag(w, kSpec), std::invalid_argument);

  // the quantizer rejects non-square-integrable (non-finite) symbols
  Symbol broken = w;
  broken.values[7] = cplx{std::numeric_limits<double>::infinity(), 0.0};
  CHECK_THROWS_AS(op_theta(broken, kSpec), std::invalid_argument);
}
