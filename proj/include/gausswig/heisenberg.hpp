#pragma once

#include <vector>

#include "gausswig/grid.hpp"
#include "gausswig/spectrum.hpp"

namespace gausswig {

// Group element (x, y, t) in eigencoordinates: x = sum xi_k v_k,
// y = sum eta_k v_k, center coordinate t.
struct HeisenbergElement {
  std::vector<double> xi;
  std::vector<double> eta;
  double t = 0.0;

  int dims() const { return static_cast<int>(xi.size()); }
};

struct PhasePoint {
  std::vector<double> xi;
  std::vector<double> eta;

  int dims() const { return static_cast<int>(xi.size()); }
};

// (x1,y1,t1) * (x2,y2,t2) = (x1+x2, y1+y2,
//     t1 + t2 + ((A x1 | y2) - (A x2 | y1)) / 2)
// with (A x | y) = sum_k t_k xi_k eta_k in eigencoordinates.
HeisenbergElement compose(const HeisenbergElement& g1, const HeisenbergElement& g2,
                          const TraceClassSpectrum& s);
HeisenbergElement inverse(const HeisenbergElement& g);

// Central element (0, 0, (A x1 | y2) - (A x2 | y1)).
HeisenbergElement commutator(const HeisenbergElement& g1, const HeisenbergElement& g2,
                             const TraceClassSpectrum& s);

// One-parameter subgroups through (x, y, 0) are s -> (sx, sy, st), so the
// exponential is the identity in these coordinates.
HeisenbergElement exp_theta(const PhasePoint& p);

// The Schrodinger representation on L^2 of the product Gaussian, in the
// coordinates fixed in spectrum.hpp:
//
//   (pi(xi, eta, s0) phi)(v) = exp(1/2 sum_k (v_k xi_k - 1/2 t_k xi_k^2))
//       * exp(i (s0 - sum_k v_k eta_k + 1/2 sum_k t_k xi_k eta_k))
//       * phi(v - (t_k xi_k)_k).
//
// The Cameron-Martin square root makes each operator unitary; the sign of
// the modulation term is the one for which pi(g1) pi(g2) = pi(g1 * g2)
// holds with the group law above (the other sign gives a cocycle mismatch
// e^{-2i (A x1 | y2)}; both the unitarity and homomorphism suites pin this
// down).  Translation is done by band-limited phase shift on a 2x padded
// grid; shifts beyond shift_limit_sigmas axis scales are rejected.
GridFn schrodinger_apply(const HeisenbergElement& g, const GridFn& phi,
                         const TraceClassSpectrum& s, double shift_limit_sigmas = 2.0);

// f -> f (x) 1 on appended axes; isometry intertwining consecutive levels.
GridFn tower_embed(const GridFn& phi, int target_m, const TraceClassSpectrum& s,
                   double radius_sigmas = 0.0, int points = 0);

// Pads the element with zero coordinates up to target_m.
HeisenbergElement pad_element(const HeisenbergElement& g, int target_m);

}  // namespace gausswig
