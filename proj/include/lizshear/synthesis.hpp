#pragma once

// Shearlet synthesis operator (spatial and frequency forms), the
// analysis/synthesis duality relation, and the reconstruction round-trip
//   f = C_psi^{-1} int S_psi f(b,s,a) S_{b,s,a} psi dmu.

#include "lizshear/shearlet.hpp"

#include <functional>

namespace lizshear {

struct SynthesisResult {
  SampledField2D field;
  double residual = 0.0;  // relative L^2 error on the output grid
  bool degenerate = false;  // zero input
};

struct SynthesizeSpec {
  int threads = 0;
};

/// Haar-weighted sum of atoms: S_psi^t Phi(x) = sum_grid Phi(b,s,a)
/// S_{b,s,a} psi(x) w_b w_s w_a |a|^{-3}, at every (x, y) node.
SampledField2D synthesize(const CoefficientArray& Phi,
                          const AdmissibleVector& psi, const Grid1D& x_grid,
                          const Grid1D& y_grid,
                          const SynthesizeSpec& spec = {});

/// Frequency form: F(S_psi^t Phi)(xi) = sum_{s,a} w_s w_a |a|^{-3}
/// |a|^{3/4} F psi(A_a tS_s xi) FbPhi(xi; s, a), where FbPhi is the 2D
/// transform of the (b1, b2) slab.  Nodes on the line xi_1 = 0 get 0.
SampledField2D synthesize_spectral(const CoefficientArray& Phi,
                                   const AdmissibleVector& psi,
                                   const Grid1D& xi1_grid,
                                   const Grid1D& xi2_grid,
                                   const SynthesizeSpec& spec = {});

/// True when |Phi| on the translation-grid boundary is below 1e-3 of the
/// interior maximum (the synthesis sum is then dominated by interior mass).
bool synthesis_boundary_ok(const CoefficientArray& Phi);

struct ReconstructSpec {
  // Frequency box for the synthesis stage.  Capped at the translation-grid
  // Nyquist frequency 1/(2h): beyond it the b-sum carries only aliases.
  double xi_max = 4.0;
  double xi_step = 0.05;
  Grid1D x_grid{-6.0, 6.0, 121};
  int threads = 0;
};

/// analyze_spectral -> synthesize_spectral -> inverse transform, scaled by
/// 1/C_psi; residual is relative L^2 against f on the x grid.
SynthesisResult reconstruct(const AnalyticFunction2D& f,
                            const AdmissibleVector& psi, const ParamGrid& grid,
                            const ReconstructSpec& spec = {});

/// Samples a smooth coefficient-space test function onto a ParamGrid.
CoefficientArray sample_coefficients(
    const ParamGrid& grid,
    const std::function<Complex(double, double, double, double)>& fn);

struct DualityResult {
  Complex lhs = 0.0;  // int f(x) S_{conj(psi)}^t Phi(x) dx
  Complex rhs = 0.0;  // int S_psi f(b,s,a) Phi(b,s,a) dmu
  double discrepancy = 0.0;
  bool degenerate = false;
};

struct DualitySpec {
  // The left pairing is evaluated in frequency (Plancherel form
  // int F f(-xi) F[S^t Phi](xi) dxi): a spatial grid would have to resolve
  // every oscillation of the smallest-scale atoms.
  Grid1D xi_grid{-6.0, 6.0, 481};
  int threads = 0;
};

/// Two-sided quadrature of the duality relation; the pairing is bilinear
/// (no conjugation) and the left side synthesizes with conj(psi).
DualityResult duality_check(const AnalyticFunction2D& f,
                            const CoefficientArray& Phi,
                            const AdmissibleVector& psi,
                            const DualitySpec& spec = {});

}  // namespace lizshear
