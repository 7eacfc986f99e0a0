#pragma once

// The shearlet group, its representation, admissible vectors of factorized
// type, and the analysis transform along three independent evaluation paths
// (direct space quadrature, frequency-domain quadrature, and the
// Radon-then-wavelet factorization), plus the ridgelet transform and its
// relation to shearlet coefficients.
//
// Conventions:
//   S_s = [[1, -s], [0, 1]],  A_a = a * diag(1, |a|^{-1/2}),
//   (b,s,a)(b',s',a') = (b + S_s A_a b', s + |a|^{1/2} s', a a'),
//   S_{b,s,a} psi(x) = |a|^{-3/4} psi(A_a^{-1} S_s^{-1} (x - b)),
//   F S_{b,s,a} psi(xi) = |a|^{3/4} e^{-2 pi i b.xi} F psi(A_a tS_s xi),
//   Haar measure |a|^{-3} db ds da.

#include "lizshear/analytic.hpp"
#include "lizshear/types.hpp"

#include <memory>
#include <vector>

namespace lizshear {

// ---------------------------------------------------------------------------
// Group algebra.
// ---------------------------------------------------------------------------

struct GroupElement {
  Vector2d b = Vector2d::Zero();
  double s = 0.0;
  double a = 1.0;

  GroupElement() = default;
  GroupElement(const Vector2d& b_, double s_, double a_) : b(b_), s(s_), a(a_) {
    if (a == 0.0) throw InvalidArgument("GroupElement: scale must be nonzero");
  }
};

inline Eigen::Matrix2d shear_matrix(double s) {
  Eigen::Matrix2d m;
  m << 1.0, -s, 0.0, 1.0;
  return m;
}

inline Eigen::Matrix2d dilation_matrix(double a) {
  if (a == 0.0) throw InvalidArgument("dilation_matrix: scale must be nonzero");
  Eigen::Matrix2d m;
  m << a, 0.0, 0.0, a / std::sqrt(std::abs(a));
  return m;
}

inline GroupElement group_product(const GroupElement& g, const GroupElement& h) {
  return GroupElement(g.b + shear_matrix(g.s) * dilation_matrix(g.a) * h.b,
                      g.s + std::sqrt(std::abs(g.a)) * h.s, g.a * h.a);
}

inline GroupElement group_inverse(const GroupElement& g) {
  const Eigen::Matrix2d m = shear_matrix(g.s) * dilation_matrix(g.a);
  return GroupElement(-m.inverse() * g.b, -g.s / std::sqrt(std::abs(g.a)),
                      1.0 / g.a);
}

// ---------------------------------------------------------------------------
// Admissible vectors.  psi is factorized: F psi(xi) = F psi_1(xi_1) *
// phi_2(xi_2 / xi_1), with F chi_1(tau) = |tau| F psi_1(tau) and chi_1 in
// S_0(R), phi_2 = F psi_2 a Schwartz window.  The space side of psi is a
// precomputed two-zone table (dense core, coarse far zone) assembled from
//   psi(x_1, x_2) = int F chi_1(tau) Q(tau x_2) e^{2 pi i tau x_1} d tau,
// where Q = F^{-1} phi_2.  Profiles are assumed real and even (true of the
// builtin; custom vectors are complex multiples of real-even profiles).
// ---------------------------------------------------------------------------

struct PsiSpaceTable;  // opaque; defined in shearlet.cpp

class AdmissibleVector {
 public:
  /// Builtin generator: chi_1 = builtin_chi1 profile, phi_2(u) = e^{-pi u^2},
  /// optionally multiplied by a complex constant.  The space table is shared
  /// across all scaled copies.
  static AdmissibleVector builtin(Complex scale = 1.0);

  /// General factorized vector from real-even 1D profiles.
  AdmissibleVector(const AnalyticFunction1D& chi1_profile,
                   const AnalyticFunction1D& phi2_profile,
                   Complex scale = 1.0, std::string label = "custom");

  Complex scale() const { return scale_; }
  const std::string& label() const { return label_; }

  /// Scaled copy (same table).
  AdmissibleVector scaled(Complex c) const;
  /// Complex-conjugate vector conj(psi).
  AdmissibleVector conjugated() const;

  /// F chi_1 including the overall scale.
  Complex Fchi1(double tau) const;
  /// F psi_1(tau) = F chi_1(tau)/|tau| including the scale; 0 at tau = 0.
  Complex Fpsi1(double tau) const;
  /// Unscaled window phi_2(u).
  double phi2(double u) const;
  /// F psi(xi_1, xi_2); 0 on the line xi_1 = 0.
  Complex Fpsi(double xi1, double xi2) const;
  /// Space-side psi(x_1, x_2) from the table (0 outside the far zone).
  Complex psi(double x1, double x2) const;

  /// ||psi||_{L^2}^2 (cached).
  double norm2() const;
  /// Precomputed 2D moments mu_{m1,m2}(psi) for m1 + m2 <= 4 (all of which
  /// vanish up to quadrature error since psi in S_0(R^2)).
  Complex psi_moment(int m1, int m2) const;

  /// chi_1 profile as a 1D wavelet (unscaled), for the factorized path.
  AnalyticFunction1D chi1_function() const;

  double freq_radius() const;   // F chi_1 truncation radius
  double space_radius() const;  // far-zone table radius

 private:
  AdmissibleVector() = default;
  std::shared_ptr<const PsiSpaceTable> table_;
  Complex scale_ = 1.0;
  std::string label_;
};

/// The atom S_{b,s,a} psi as a function carrier with both evaluators.
AnalyticFunction2D rep_apply(const AdmissibleVector& psi, const GroupElement& g);

/// Admissibility constant C_psi = int |F psi(xi)|^2 / xi_1^2 d xi, returned
/// together with the factorized evaluation (product of two 1D integrals via
/// the substitution xi_2 = u xi_1).  Throws NotAdmissible for a vanishing
/// vector and InvalidArgument when the two routes disagree beyond 1e-4.
struct AdmissibilityResult {
  double value = 0.0;       // 2D-quadrature route
  double factorized = 0.0;  // product-of-1D-integrals route
  double rel_diff = 0.0;
};
AdmissibilityResult admissibility_constant(const AdmissibleVector& psi);

// ---------------------------------------------------------------------------
// Parameter grids and coefficient arrays.
// ---------------------------------------------------------------------------

struct ParamGrid {
  Grid1D b1{-4.0, 4.0, 33};
  Grid1D b2{-4.0, 4.0, 33};
  Grid1D s{-3.0, 3.0, 17};
  LogSymmetricGrid a{0.05, 4.0, 16, true};

  int slab_count() const { return s.n * a.size(); }
  long long total_nodes() const {
    return static_cast<long long>(b1.n) * b2.n * s.n * a.size();
  }
};

/// The pinned default desk-scale grid.
inline ParamGrid default_param_grid() { return {}; }

/// Nested refinements for convergence studies: each level widens and
/// densifies the shear and scale axes (the coverage bottlenecks) and
/// densifies the translation window, whose node spacing caps the frequency
/// band a synthesis over the grid can represent (Nyquist 1/(2h)).
inline ParamGrid refined_param_grid(int level) {
  if (level < 0) throw InvalidArgument("refined_param_grid: negative level");
  ParamGrid g;
  switch (level) {
    case 0: break;
    case 1:
      g.b1 = Grid1D(-4.0, 4.0, 49);
      g.b2 = Grid1D(-4.0, 4.0, 49);
      g.s = Grid1D(-3.75, 3.75, 25);
      g.a = LogSymmetricGrid(0.035, 5.0, 24, true);
      break;
    default:
      g.b1 = Grid1D(-4.0, 4.0, 65);
      g.b2 = Grid1D(-4.0, 4.0, 65);
      g.s = Grid1D(-4.5, 4.5, 37);
      g.a = LogSymmetricGrid(0.025, 6.0, 36, true);
      break;
  }
  return g;
}

struct CoefficientArray {
  ParamGrid grid;
  // slabs[is * a.size() + ia](ib1, ib2)
  std::vector<MatrixXcd> slabs;

  CoefficientArray() = default;
  explicit CoefficientArray(const ParamGrid& g) : grid(g) {
    slabs.assign(g.slab_count(), MatrixXcd::Zero(g.b1.n, g.b2.n));
  }
  MatrixXcd& slab(int is, int ia) { return slabs[is * grid.a.size() + ia]; }
  const MatrixXcd& slab(int is, int ia) const {
    return slabs[is * grid.a.size() + ia];
  }
  Complex at(int ib1, int ib2, int is, int ia) const {
    return slab(is, ia)(ib1, ib2);
  }
};

// ---------------------------------------------------------------------------
// Analysis paths.
// ---------------------------------------------------------------------------

struct AnalyzeSpec {
  // frequency-path quadrature (tau, v)
  double tau_max = 6.0;
  int n_tau = 961;
  double v_max = 9.0;
  int n_v = 901;
  // space-path quadrature
  double x_max = 6.0;
  double x_step = 0.05;
  // factorized-path t-sampling of the affine projections
  double t_max = 28.0;
  int n_t = 2801;
  int threads = 0;
};

/// Definition-level path: S_psi f(b,s,a) by 2D space quadrature.
CoefficientArray analyze_direct(const AnalyticFunction2D& f,
                                const AdmissibleVector& psi,
                                const ParamGrid& grid,
                                const AnalyzeSpec& spec = {});

/// Frequency-domain path (production default): the (tau, v) double integral
///   |a|^{-1/4} int int F f(tau, tau v) conj(F chi_1(a tau))
///     e^{2 pi i tau (b_1 + v b_2)} conj(phi_2((v-s)/|a|^{1/2})) d tau d v.
CoefficientArray analyze_spectral(const AnalyticFunction2D& f,
                                  const AdmissibleVector& psi,
                                  const ParamGrid& grid,
                                  const AnalyzeSpec& spec = {});

/// Single-point frequency-path evaluation.
Complex analyze_spectral_point(const AnalyticFunction2D& f,
                               const AdmissibleVector& psi,
                               const Vector2d& b, double s, double a,
                               const AnalyzeSpec& spec = {});

/// Factorized path: affine Radon projection per slope (slice-theorem route
/// through space-side t samples), 1D wavelet transform against chi_1 at
/// (b_1 + v b_2, a), then the v-quadrature against the sheared window.
CoefficientArray analyze_factorized(const AnalyticFunction2D& f,
                                    const AdmissibleVector& psi,
                                    const ParamGrid& grid,
                                    const AnalyzeSpec& spec = {});

/// sup over the grid of <b1>^k1 <b2>^k2 <s>^l (|a|^m + |a|^{-m}) |c|.
double coefficient_seminorm(const CoefficientArray& c, int k1, int k2, int l,
                            int m);

/// Haar-weighted coefficient energy sum_grid |c|^2 dmu.
double coefficient_energy(const CoefficientArray& c);

// ---------------------------------------------------------------------------
// Ridgelets.
// ---------------------------------------------------------------------------

struct RidgeletSpec {
  double q_max = 12.0;
  int n_q = 1201;
  double y_max = 8.0;  // line-integral range for the polar columns
  int n_y = 801;
  int threads = 0;
};

/// Ridgelet coefficients R_psi f(theta, b, a) for a > 0, evaluated as the 1D
/// wavelet transform of the polar Radon column at theta with the ridgelet
/// 1/a normalization folded in as a^{-1/2} relative to W.  result[i] is the
/// (b, a) matrix at theta_i.
std::vector<MatrixXcd> ridgelet_transform(const AnalyticFunction2D& f,
                                          const AnalyticFunction1D& psi,
                                          const Grid1D& theta_grid,
                                          const Grid1D& b_grid,
                                          const LogSymmetricGrid& a_grid,
                                          const RidgeletSpec& spec = {});

/// Single ridgelet coefficient evaluated from scratch (no interpolation).
Complex ridgelet_point(const AnalyticFunction2D& f,
                       const AnalyticFunction1D& psi, double theta, double b,
                       double a, const RidgeletSpec& spec = {});

/// Verifies S_psi f(b,s,a) against the v-integral of interpolated ridgelet
/// coefficients of chi_1; returns the max relative deviation from the
/// spectral path over the given points (all with a > 0).
double ridgelet_shearlet_check(const AnalyticFunction2D& f,
                               const AdmissibleVector& psi,
                               const std::vector<GroupElement>& points);

/// Same identity at a single point with ridgelet values computed exactly at
/// every v node (no interpolation); returns |lhs - rhs| / max(|lhs|, |rhs|).
double ridgelet_shearlet_point_check(const AnalyticFunction2D& f,
                                     const AdmissibleVector& psi,
                                     const GroupElement& g);

}  // namespace lizshear
