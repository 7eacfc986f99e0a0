#pragma once

// Lizorkin test-function machinery: the builtin chi_1 profile with all
// vanishing moments, moment quadrature, the antiderivative construction
// that stays inside S_0, Schwartz seminorms, and directional moment checks.

#include "lizshear/analytic.hpp"

#include <vector>

namespace lizshear {

/// The builtin S_0(R) profile: F chi_1(tau) = exp(-1/tau^2 - tau^2), even,
/// real, flat to infinite order at tau = 0.  The space evaluator is a shared
/// precomputed inverse-Fourier table on [-48, 48] (chi_1 itself decays only
/// stretched-exponentially, ~exp(-3(pi|x|)^{2/3}), so the moment box must be
/// far wider than for Gaussians).
AnalyticFunction1D builtin_chi1();

/// Closed-form frequency profile of chi_1 (kept separate so callers can
/// evaluate it without triggering the space-table build).
inline double chi1_freq(double tau) {
  if (tau == 0.0) return 0.0;
  return std::exp(-1.0 / (tau * tau) - tau * tau);
}

/// mu_m(f) = int x^m f(x) dx by compensated trapezoid quadrature over the
/// function's truncation box.  Works from the space evaluator; if absent,
/// falls back to a space table built by inverse Fourier quadrature.
Complex moment(const AnalyticFunction1D& f, int m);

/// 2D moment with multi-index (m1, m2).
Complex moment(const AnalyticFunction2D& f, int m1, int m2);

/// Schwartz antiderivative: for f in S_0 (mu_0 within tol) returns g
/// with g(x) = int_{-inf}^x f, F g(tau) = F f(tau) / (2 pi i tau).
/// Throws NotAdmissible-style error (InvalidArgument) when mu_0 is too large.
AnalyticFunction1D antiderivative_s0(const AnalyticFunction1D& f,
                                     double mu0_tol = 1e-8);

/// rho_nu(f) = sup_x <x>^nu max_{m <= nu} |f^(m)(x)|, derivatives by 4th
/// order central differences on a dense scan grid.  nu capped at 4.
double schwartz_seminorm(const AnalyticFunction1D& f, int nu);
double schwartz_seminorm(const AnalyticFunction2D& f, int nu);

/// The builtin 2D Lizorkin input chi_1(x_1) e^{-pi x_2^2}: separable, in
/// S_0(R^2) through its first factor, and band-limited enough for the
/// default frequency boxes.
inline AnalyticFunction2D lizorkin_product_2d() {
  const AnalyticFunction1D chi1 = builtin_chi1();
  AnalyticFunction2D f;
  f.space = [chi1](double x, double y) -> Complex {
    return chi1.space(x) * std::exp(-kPi * y * y);
  };
  f.freq = [](double u, double v) -> Complex {
    return chi1_freq(u) * std::exp(-kPi * v * v);
  };
  f.label = "lizorkin_product";
  f.space_radius = 48.0;
  f.freq_radius = 6.0;
  return f;
}

/// max over the given fixed slices of |int x_j^m f dx_j| (axis j in {1,2}).
double directional_moment_check(const AnalyticFunction2D& f, int j, int m,
                                const std::vector<double>& slices);

}  // namespace lizshear
