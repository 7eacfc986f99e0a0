#pragma once

// 1D continuous wavelet transform (frequency-domain evaluation) and the
// Calderon admissibility constant.  Used standalone and inside the
// Radon-then-wavelet factorization of the shearlet transform.

#include "lizshear/analytic.hpp"
#include "lizshear/interp.hpp"
#include "lizshear/quadrature.hpp"

namespace lizshear {

struct WaveletAtomParams {
  double b = 0.0;
  double a = 1.0;
};

struct CalderonOptions {
  double delta = 1e-4;     // excluded symmetric neighborhood of xi = 0
  double xi_max = 0.0;     // 0 = use the profile's frequency radius
  int n_per_side = 4001;   // log-spaced nodes per sign branch
};

/// C_cal(psi) = int |F psi(xi)|^2 / |xi| dxi, quadrature on log-symmetric
/// grids excluding (-delta, delta).  Screens for divergence by comparing
/// shrinking cutoffs (delta, 10*delta, 100*delta): a profile whose integral
/// keeps growing as the cutoff shrinks (F psi(0) != 0) is rejected, as is a
/// profile with no admissible mass at all.
inline double calderon_constant(const AnalyticFunction1D& psi,
                                const CalderonOptions& opt = {}) {
  if (!psi.has_freq()) throw CapabilityError("calderon_constant: needs F psi");
  const double xi_max = opt.xi_max > 0.0 ? opt.xi_max : psi.freq_radius;
  auto integral = [&](double delta, int n_side) {
    const LogSymmetricGrid grid(delta, xi_max, n_side, true);
    const VectorXd x = grid.nodes();
    const VectorXd w = grid.weights();
    KahanSum<long double> acc;
    for (int i = 0; i < x.size(); ++i)
      acc.add(w(i) * std::norm(psi.freq(x(i))) / std::abs(x(i)));
    return static_cast<double>(acc.value());
  };
  const double v0 = integral(opt.delta, opt.n_per_side);
  if (v0 <= 1e-12)
    throw NotAdmissible("calderon_constant: vanishing admissible mass");
  const double v1 = integral(opt.delta * 10.0, opt.n_per_side);
  const double v2 = integral(opt.delta * 100.0, opt.n_per_side);
  // A Calderon-divergent profile gains mass at every cutoff decade; an
  // admissible one has already converged at 100*delta.
  if ((v0 - v1) > 1e-6 * v0 && (v1 - v2) > 1e-6 * v0)
    throw NotAdmissible("calderon_constant: divergent lower-cutoff scan");
  return v0;
}

struct WaveletQuadSpec {
  double xi_max = 0.0;  // 0 = derive from the signal's frequency radius
  int n = 0;            // 0 = derive from the grid extents
};

namespace detail {

inline Grid1D wavelet_xi_grid(double f_radius, double b_extent,
                              const WaveletQuadSpec& spec) {
  const double xi_max = spec.xi_max > 0.0 ? spec.xi_max : f_radius;
  int n = spec.n;
  if (n <= 0) {
    // Oscillation e^{2 pi i b xi} must be resolved: at least ~8 nodes per
    // period at the largest |b| plus headroom for the envelope.
    const double density = 8.0 * (b_extent + 8.0);
    n = std::max(1201, static_cast<int>(2.0 * xi_max * density) | 1);
  }
  return Grid1D(-xi_max, xi_max, n);
}

}  // namespace detail

/// W_psi f(b, a) = |a|^{1/2} int F f(xi) conj(F psi(a xi)) e^{2 pi i b xi}
/// dxi, for all (b, a) pairs from the grids.  Rows index b, columns index a.
inline MatrixXcd wavelet_transform(const AnalyticFunction1D& f,
                                   const AnalyticFunction1D& psi,
                                   const Grid1D& b_grid,
                                   const LogSymmetricGrid& a_grid,
                                   const WaveletQuadSpec& spec = {}) {
  const double b_extent = std::max(std::abs(b_grid.min), std::abs(b_grid.max));
  const Grid1D xi = detail::wavelet_xi_grid(f.freq_radius, b_extent, spec);
  const VectorXd xn = xi.nodes();
  const VectorXd w = xi.trapezoid_weights();
  VectorXcd Ff(xi.n);
  for (int i = 0; i < xi.n; ++i) Ff(i) = f.freq(xn(i));
  const MatrixXcd E = phase_matrix(b_grid.nodes(), xi, +1.0);
  const VectorXd a_nodes = a_grid.nodes();
  MatrixXcd out(b_grid.n, a_nodes.size());
  for (int ja = 0; ja < a_nodes.size(); ++ja) {
    const double a = a_nodes(ja);
    VectorXcd g(xi.n);
    for (int i = 0; i < xi.n; ++i)
      g(i) = Ff(i) * std::conj(psi.freq(a * xn(i))) * w(i);
    out.col(ja) = std::sqrt(std::abs(a)) * (E * g);
  }
  return out;
}

/// Same transform for an already-sampled signal: its spectrum is first
/// obtained by forward quadrature on the sample grid.
inline MatrixXcd wavelet_transform(const SampledSignal1D& f,
                                   const AnalyticFunction1D& psi,
                                   const Grid1D& b_grid,
                                   const LogSymmetricGrid& a_grid,
                                   const WaveletQuadSpec& spec = {}) {
  WaveletQuadSpec s = spec;
  if (s.xi_max <= 0.0) s.xi_max = psi.freq_radius;  // F f decays with F psi
  const double b_extent = std::max(std::abs(b_grid.min), std::abs(b_grid.max));
  const Grid1D xi = detail::wavelet_xi_grid(s.xi_max, b_extent, s);
  const VectorXcd Ff = fourier1d(f, xi.nodes());
  AnalyticFunction1D fa;
  // capture the sampled spectrum through an interpolating closure
  auto grid = std::make_shared<Grid1D>(xi);
  auto vals = std::make_shared<VectorXcd>(Ff);
  fa.freq = [grid, vals](double t) -> Complex {
    if (!grid->contains(t)) return 0.0;
    return interp_cubic(*grid, *vals, t);
  };
  fa.freq_radius = s.xi_max;
  return wavelet_transform(fa, psi, b_grid, a_grid, s);
}

/// Single-point evaluation.
inline Complex wavelet_transform_point(const AnalyticFunction1D& f,
                                       const AnalyticFunction1D& psi,
                                       double b, double a,
                                       const WaveletQuadSpec& spec = {}) {
  if (a == 0.0) throw InvalidArgument("wavelet_transform_point: a must be nonzero");
  const Grid1D xi = detail::wavelet_xi_grid(f.freq_radius, std::abs(b), spec);
  const Complex val = quad_kahan(xi, [&](double x) {
    return f.freq(x) * std::conj(psi.freq(a * x)) *
           std::exp(2.0 * kPi * kI * b * x);
  });
  return std::sqrt(std::abs(a)) * val;
}

}  // namespace lizshear
