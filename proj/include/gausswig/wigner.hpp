#pragma once

#include <span>

#include "gausswig/grid.hpp"
#include "gausswig/heisenberg.hpp"
#include "gausswig/spectrum.hpp"
#include "gausswig/weyl.hpp"

namespace gausswig {

// Matrix coefficient (pi(exp(theta(p))) phi | psi) at the listed phase
// points.
std::vector<cplx> ambiguity(const GridFn& phi, const GridFn& psi, std::span<const PhasePoint> pts,
                            const TraceClassSpectrum& s, double shift_limit_sigmas = 2.0);

// Phase-space transform of a state pair, realized as the inverse of the
// kernel chain:  Wig = S^{-1} o T^{-1} o U^{-1} applied to the rank-one
// kernel phi (x) conj(psi).  Output is a Lebesgue-tagged symbol on the
// rescaled phase-space grid (position scale 1, frequency scale 1/(2 t_k));
// the weighted representative is obtained with gamma2_retag.
Symbol wigner_transform(const GridFn& phi, const GridFn& psi, const TraceClassSpectrum& s);

// Quantizer: symbol -> Gaussian-tagged Hilbert-Schmidt kernel,
// Op = U o T o S; the inverse of wigner_transform.
Kernel op_theta(const Symbol& a, const TraceClassSpectrum& s);

// Lebesgue symbol <-> density against the product weights
// gamma_{1/2} (positions) and gamma_{1/(8 t_k^2)} (frequencies).
Symbol gamma2_retag(const Symbol& a, const TraceClassSpectrum& s);
Symbol gamma2_untag(const Symbol& a, const TraceClassSpectrum& s);

// Weighted inner product (conjugate-linear in the second argument).
cplx gamma2_inner(const Symbol& a, const Symbol& b, const TraceClassSpectrum& s);

// Bilinear dual pairing <a, W> used by the quantizer identity
// (Op(a) phi | psi) = <a, Wig(phi, psi)>; on Lebesgue representatives it is
// the plain unconjugated integral of a * W.
cplx symbol_dual_pairing(const Symbol& a, const Symbol& w);

// ---- second route through the measure Fourier transform -----------------

// The ambiguity table determines the symbol through a 2m-dimensional
// oscillatory inversion
//
//   W(x, u) = prod_k (2 pi)^{-3/2} t_k^{3/2}
//             intint A(xi, eta) e^{i sum_k (sqrt(t_k) eta_k x_k
//                                           + t_k^{3/2} xi_k u_k)} dxi deta,
//
// the pairing of phase-space points against dual coordinates in the
// eigenbasis; the per-axis scalings come from the duality along theta.  The
// remaining overall constant is not fixed a priori; it is measured once on
// the one-dimensional vacuum pair and reused (with this realization it
// calibrates to 1).
struct FourierRouteCalibration {
  cplx constant{1.0, 0.0};
};

FourierRouteCalibration calibrate_fourier_route(const TraceClassSpectrum& s, int points = 64,
                                                double radius_sigmas = 10.0);

// Dense-table route; m <= 2.  The ambiguity arguments are sampled on the
// FFT conjugates of the output symbol grid.
Symbol wigner_via_fourier(const GridFn& phi, const GridFn& psi, const TraceClassSpectrum& s,
                          const FourierRouteCalibration& calib,
                          double ambiguity_radius_sigmas = 10.0);

// Vacuum state (constant 1) on the given grid.
GridFn vacuum_state(const TraceClassSpectrum& s, const Grid& grid);

}  // namespace gausswig
