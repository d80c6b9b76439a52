#pragma once

#include <string>

#include "gausswig/report.hpp"
#include "gausswig/rng.hpp"
#include "gausswig/wigner.hpp"

namespace gausswig {

// Runs every identity suite at the configured resolution and tolerances.
// Deterministic for a fixed config and seed; independent checks may run in
// parallel (GAUSSWIG_THREADS) with results assembled in a fixed order.
Report run_verify(const RunConfig& cfg);

// Tower diagnostics: per-level embedding isometry, intertwining, extension
// and weighted-norm conservation, for levels 1..m_max.
Report run_tower(const RunConfig& cfg, int m_max);

struct WignerRun {
  std::string lebesgue_csv;
  std::string gamma2_csv;
  double weighted_norm = 0.0;   // || Wig(phi, psi) || in the weighted space
  double moyal_residual = 0.0;  // | norm - ||phi|| ||psi|| |
  double imag_residual = 0.0;   // max |Im| when phi == psi
  bool self_pair = false;
};

// Computes Wig(phi, psi) for two state specs and writes both pictures as
// CSV grids under out_prefix.  Specs: "hermite:a1,a2,..." or
// "shifted-vacuum:xi1,...,xim,eta1,...,etam".
WignerRun run_wigner(const RunConfig& cfg, const std::string& state_spec,
                     const std::string& state_spec2, const std::string& out_prefix);

// ---- deterministic test inputs (shared with the test suites) ------------

// Normalized random combination of Hermite states of total degree
// <= max_degree.
GridFn random_state(const TraceClassSpectrum& s, const Grid& grid, Rng& rng, int max_degree = 3);

// Normalized random smooth symbol or kernel on a 2m-axis grid: a few
// modulated Gaussian bumps sized so the samples stay resolved and decayed
// at the grid edge.
Symbol random_symbol_on(const Grid& grid, int m, Rng& rng);
Kernel random_kernel_on(const Grid& grid, int m, Rng& rng);

// Phase-space side test symbol with Hermite-polynomial excitation, on the
// rescaled (gamma-side) grid.
Symbol excited_gamma_symbol(const TraceClassSpectrum& s, const Grid& gamma_grid, int m,
                            std::span<const int> degrees);

GridFn parse_state_spec(const std::string& spec, const TraceClassSpectrum& s, const Grid& grid);

}  // namespace gausswig
