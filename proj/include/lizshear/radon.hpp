#pragma once

// Polar and affine Radon transforms.  Two evaluation paths: direct line
// integration and the Fourier slice theorem (the affine projection at slope
// v is the inverse transform of the frequency slice tau -> F f(tau, tau v)),
// plus the polar<->affine coordinate change
//   R^aff f(v, t) = (1+v^2)^{-1/2} R^pol f(arctan v, t / sqrt(1+v^2)).

#include "lizshear/analytic.hpp"
#include "lizshear/interp.hpp"
#include "lizshear/parallel.hpp"
#include "lizshear/quadrature.hpp"

namespace lizshear {

inline constexpr double kMaxAffineSlope = 10.0;  // horizontal lines excluded

struct PolarSinogram {
  Grid1D theta_grid;  // subset of [-pi, pi)
  Grid1D q_grid;
  MatrixXcd values;  // values(i, j) = R^pol f(theta_i, q_j)
};

struct AffineSinogram {
  Grid1D v_grid;
  Grid1D t_grid;
  MatrixXcd values;  // values(i, j) = R^aff f(v_i, t_j)
};

struct LineQuadSpec {
  double y_max = 8.0;
  int n = 801;
  int threads = 0;
};

/// R^pol f(theta, q) = int f(q cos t - y sin t, q sin t + y cos t) dy.
inline PolarSinogram radon_polar(const AnalyticFunction2D& f,
                                 const Grid1D& theta_grid,
                                 const Grid1D& q_grid,
                                 const LineQuadSpec& spec = {}) {
  if (!f.has_space()) throw CapabilityError("radon_polar: needs a space evaluator");
  if (theta_grid.min < -kPi || theta_grid.max >= kPi)
    throw InvalidArgument("radon_polar: theta nodes must lie in [-pi, pi)");
  const Grid1D y(-spec.y_max, spec.y_max, spec.n);
  PolarSinogram out{theta_grid, q_grid, MatrixXcd(theta_grid.n, q_grid.n)};
  parallel_for(theta_grid.n, spec.threads, [&](int i) {
    const double c = std::cos(theta_grid.node(i));
    const double s = std::sin(theta_grid.node(i));
    for (int j = 0; j < q_grid.n; ++j) {
      const double q = q_grid.node(j);
      out.values(i, j) = quad_kahan(y, [&](double t) {
        return f.space(q * c - t * s, q * s + t * c);
      });
    }
  });
  return out;
}

/// R^aff f(v, t) = int f(t - v y, y) dy over the line x + v y = t.
inline AffineSinogram radon_affine_direct(const AnalyticFunction2D& f,
                                          const Grid1D& v_grid,
                                          const Grid1D& t_grid,
                                          const LineQuadSpec& spec = {}) {
  if (!f.has_space())
    throw CapabilityError("radon_affine_direct: needs a space evaluator");
  if (std::max(std::abs(v_grid.min), std::abs(v_grid.max)) > kMaxAffineSlope)
    throw InvalidArgument("radon_affine_direct: |v| exceeds the slope cap");
  const Grid1D y(-spec.y_max, spec.y_max, spec.n);
  AffineSinogram out{v_grid, t_grid, MatrixXcd(v_grid.n, t_grid.n)};
  parallel_for(v_grid.n, spec.threads, [&](int i) {
    const double v = v_grid.node(i);
    for (int j = 0; j < t_grid.n; ++j) {
      const double t = t_grid.node(j);
      out.values(i, j) = quad_kahan(y, [&](double u) {
        return f.space(t - v * u, u);
      });
    }
  });
  return out;
}

struct SliceQuadSpec {
  double tau_max = 0.0;  // 0 = derive from f
  int n = 0;
};

/// Fourier slice path: R^aff f(v, .) = F^{-1}[tau -> F f(tau, tau v)].
inline SampledSignal1D radon_affine_spectral(const AnalyticFunction2D& f,
                                             double v, const Grid1D& t_grid,
                                             const SliceQuadSpec& spec = {}) {
  if (std::abs(v) > kMaxAffineSlope)
    throw InvalidArgument("radon_affine_spectral: |v| exceeds the slope cap");
  const double tau_max = spec.tau_max > 0.0 ? spec.tau_max : f.freq_radius;
  const double t_extent =
      std::max(std::abs(t_grid.min), std::abs(t_grid.max));
  int n = spec.n;
  if (n <= 0)
    n = std::max(1201, static_cast<int>(2.0 * tau_max * 8.0 * (t_extent + 8.0)) | 1);
  const Grid1D tau(-tau_max, tau_max, n);
  VectorXcd out(t_grid.n);
  for (int j = 0; j < t_grid.n; ++j) {
    const double t = t_grid.node(j);
    out(j) = quad_kahan(tau, [&](double x) {
      return f.freq(x, x * v) * std::exp(2.0 * kPi * kI * t * x);
    });
  }
  return {t_grid, std::move(out)};
}

/// Evaluates the affine sinogram at (v, t) from polar data by bicubic
/// interpolation through the coordinate change above.
inline Complex polar_to_affine(const PolarSinogram& p, double v, double t) {
  if (std::abs(v) > kMaxAffineSlope)
    throw InvalidArgument("polar_to_affine: |v| exceeds the slope cap");
  const double root = std::sqrt(1.0 + v * v);
  const double theta = std::atan(v);
  const double q = t / root;
  if (!p.theta_grid.contains(theta) || !p.q_grid.contains(q))
    throw OutOfRange("polar_to_affine: requested polar point outside sinogram");
  return interp_bicubic(p.theta_grid, p.q_grid, p.values, theta, q) / root;
}

}  // namespace lizshear
