#pragma once

#include "gausswig/grid.hpp"
#include "gausswig/spectrum.hpp"

namespace gausswig {

// Symbol -> kernel map of the Weyl calculus,
//
//   (T_m a)(x, y) = (2 pi)^{-m/2} integral a((x+y)/2, xi) e^{i<x-y, xi>} dxi,
//
// and its inverse
//
//   (T_m^{-1} K)(x, xi) = (2 pi)^{-m/2} integral K(x + v/2, x - v/2)
//                         e^{-i<v, xi>} dv.
//
// Discretization: each (x_k, xi_k) axis pair is handled independently.
// Both slice axes are refined 2x by band-limited interpolation so that the
// midpoint (x+y)/2 lands on grid nodes and the v integral covers the full
// difference range without aliasing; the oscillatory sum is then an exact
// centered DFT of length 2n.  Requires the dual coupling
// h_x h_xi n = 2 pi on every axis pair.
Kernel t_forward(const Symbol& a);
Symbol t_inverse(const Kernel& k);

// Reference implementations of the same discretization as plain quadrature
// loops (no FFT path shared); used as the dual-implementation oracle.
Kernel t_forward_direct(const Symbol& a);
Symbol t_inverse_direct(const Kernel& k);

// Diagonal rescaling between phase-space pictures.  The corrected variant
//
//   (S_l b)(x, xi) = (t_1...t_l)^{-1/2} b(x_1/sqrt(t_1), ..., xi_l/sqrt(t_l))
//
// is unitary on Lebesgue L^2 and the remaining arrows force it; the printed
// variant (t_1...t_l)^{-2} b(x/t, xi/t) is kept to keep its failure
// measurable.  On a grid both variants are exact: values scale by a
// constant and the axis spacings absorb the dilation.
Symbol s_scale(const Symbol& b, const TraceClassSpectrum& s, ScaleVariant variant = ScaleVariant::corrected);
Symbol s_scale_inverse(const Symbol& b, const TraceClassSpectrum& s,
                       ScaleVariant variant = ScaleVariant::corrected);

enum class ReweightDirection { lebesgue_to_gaussian, gaussian_to_lebesgue };

// (U_l K)(v, w) = K(v, w) gamma~(v)^{-1/2} gamma~(w)^{-1/2}, the unitary
// from Lebesgue kernels to Gaussian-measure kernels (and back).
Kernel u_reweight(const Kernel& k, const TraceClassSpectrum& s, ReweightDirection direction);

// Coordinate-interleaved tensor products
//   (W(g1 (x) g2))((x1,x2),(xi1,xi2)) = g1(x1,xi1) g2(x2,xi2)
//   (V(f1 (x) f2))((x1,x2),(y1,y2))  = f1(x1,y1) f2(x2,y2).
Symbol tensor_symbols(const Symbol& g1, const Symbol& g2);
Kernel tensor_kernels(const Kernel& f1, const Kernel& f2);

enum class ExtensionKind { alpha, beta, eta, iota };

// One-coordinate extension isometries (appending axis index x.m, which uses
// eigenvalue t = s[x.m]):
//   beta:  b (x) (gamma_{1/2} (x) gamma_{1/(8t^2)})^{1/2}   (symbols, rescaled picture)
//   alpha: a (x) (gamma_{t/2} (x) gamma_{1/(8t)})^{1/2}     (symbols, Weyl picture)
//   eta:   K (x) (gamma_t (x) gamma_t)^{1/2}                (Lebesgue kernels)
//   iota:  constant extension                               (Gaussian kernels)
Symbol extend_symbol(const Symbol& b, ExtensionKind kind, const TraceClassSpectrum& s,
                     double radius_sigmas = 0.0, int points = 0);
Kernel extend_kernel(const Kernel& k, ExtensionKind kind, const TraceClassSpectrum& s,
                     double radius_sigmas = 0.0, int points = 0);

struct DiagramResiduals {
  double top;     // || S_m(beta(b)) - alpha(S_{m-1}(b)) ||
  double middle;  // || T_m(alpha(a)) - eta(T_{m-1}(a)) ||,  a = S_{m-1}(b)
  double bottom;  // || U_m(eta(K)) - iota(U_{m-1}(K)) ||,   K = T_{m-1}(a)
};

// Residuals of the three extension squares at truncation m (2 or 3), for an
// (m-1)-dimensional symbol b in the rescaled picture.  The appended axis
// defaults to the input's resolution; the middle square is limited by the
// fidelity of the forward transform on the appended pair, which wants a
// wide, fine axis (64 points at 12 sigma reaches ~4e-9).
DiagramResiduals diagram_residual(int m, const Symbol& b, const TraceClassSpectrum& s,
                                  ScaleVariant variant = ScaleVariant::corrected,
                                  int new_axis_points = 0, double new_axis_radius = 0.0);

}  // namespace gausswig
