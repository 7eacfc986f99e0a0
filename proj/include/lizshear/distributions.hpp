#pragma once

// Lizorkin distributions and the distributional shearlet transform: the
// duality definition (pair with a synthesized coefficient field), the
// desingularized pointwise form (pair with a single atom), and their
// consistency check.

#include "lizshear/synthesis.hpp"

#include <variant>

namespace lizshear {

struct Dirac {
  Vector2d x0 = Vector2d::Zero();
};

/// sum c(m1, m2) x1^{m1} x2^{m2}, total degree <= 4.
struct Polynomial {
  Eigen::Matrix<double, 5, 5> coeffs = Eigen::Matrix<double, 5, 5>::Zero();
};

/// Pairing (d, phi) = int phi(t, v0 t + c) dt along the line x2 = v0 x1 + c.
struct LineDelta {
  double v0 = 0.0;
  double c = 0.0;
};

/// A classical function of (at most polynomial) growth acting by integration.
struct SampledFunctionD {
  AnalyticFunction2D f;
};

/// g^{(alpha)} pairing by parts: (g^{(alpha)}, phi) =
/// (-1)^{|alpha|} (g, phi^{(alpha)}), alpha <= (2, 2).
struct DerivativeOfFunction {
  AnalyticFunction2D g;
  int a1 = 0;
  int a2 = 0;
};

using LizorkinDistribution =
    std::variant<Dirac, Polynomial, LineDelta, SampledFunctionD,
                 DerivativeOfFunction>;

struct PairSpec {
  double h = 0.05;       // quadrature step for integral pairings
  double line_h = 0.002; // step along LineDelta lines
  double fd_step = 0.01; // finite-difference step for derivative pairings
};

/// Variant dispatch of the dual pairing (bilinear, no conjugation).
Complex pair(const LizorkinDistribution& d, const AnalyticFunction2D& phi,
             const PairSpec& spec = {});

/// Smooth test input on the parameter space with sampled growth control.
struct SlowGrowthFunction4D {
  std::function<Complex(double b1, double b2, double s, double a)> eval;
  double nu1 = 0.0, nu2 = 0.0, nu3 = 0.0;
  double bound_constant = 1.0;

  /// Checks |eval| <= C <b>^{nu1} <s>^{nu2} (|a|^{nu3} + |a|^{-nu3}) on the
  /// grid nodes; returns the worst ratio.
  double growth_ratio(const ParamGrid& grid) const;
};

/// Separable Gaussian bump in (b1, b2, s, log|a|); rapidly decaying on
/// every parameter axis.
SlowGrowthFunction4D gaussian_bump_4d();

struct FieldSpec {
  double xi_max = 6.0;
  int n_xi = 961;
  double x_max = 40.0;  // pairing box for polynomial-growth distributions
  int n_x = 3201;
  int threads = 0;
};

/// The synthesized test function S_{conj(psi)}^t Phi as a function carrier:
/// frequency side from synthesize_spectral, space side a dense inverse-
/// transform table (bicubic off nodes).
AnalyticFunction2D synthesized_field(const CoefficientArray& Phi,
                                     const AdmissibleVector& psi,
                                     const FieldSpec& spec = {});

/// (S_psi d, Phi) = (d, S_{conj(psi)}^t Phi).  Dirac variants are paired by
/// exact single-point inverse transforms of the synthesized spectrum; other
/// variants integrate against the space table.
Complex distributional_shearlet(const LizorkinDistribution& d,
                                const CoefficientArray& Phi,
                                const AdmissibleVector& psi,
                                const FieldSpec& spec = {});

/// Pointwise desingularized form: (d, S_{b,s,a} conj(psi)).  Polynomial variants
/// use the exact affine change of variables against precomputed psi moments.
Complex desingularized_shearlet(const LizorkinDistribution& d,
                                const AdmissibleVector& psi,
                                const GroupElement& g,
                                const PairSpec& spec = {});

struct ConsistencyResult {
  Complex lhs = 0.0;  // duality route
  Complex rhs = 0.0;  // Haar-weighted desingularized route
  double discrepancy = 0.0;
  bool degenerate = false;
};

/// Compares the two routes over Phi's grid.
ConsistencyResult consistency_check(const LizorkinDistribution& d,
                                    const CoefficientArray& Phi,
                                    const AdmissibleVector& psi,
                                    const FieldSpec& spec = {});

}  // namespace lizshear
