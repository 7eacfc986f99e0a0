#pragma once

// Cubic interpolation on uniform grids (Catmull-Rom / 4-point Lagrange
// stencils).  Used for the precomputed wavelet tables, for polar-to-affine
// sinogram resampling (bicubic) and for ridgelet lookup (tricubic).

#include "lizshear/types.hpp"

#include <array>

namespace lizshear {

namespace detail {

/// 4-point Lagrange weights for interpolation at fractional offset t in
/// [0, 1] between the middle two of four equispaced samples.
inline std::array<double, 4> cubic_weights(double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {
      -t3 / 6.0 + t2 / 2.0 - t / 3.0,
      t3 / 2.0 - t2 - t / 2.0 + 1.0,
      -t3 / 2.0 + t2 / 2.0 + t,
      t3 / 6.0 - t / 6.0,
  };
}

/// Stencil base index and fractional offset for point x on grid g, shifted
/// near the boundary so the 4-point stencil stays inside the grid.
inline void cubic_stencil(const Grid1D& g, double x, int& base, double& t) {
  int i = g.cell(x);
  if (i < 1) i = 1;
  if (i > g.n - 3) i = g.n - 3;
  base = i - 1;
  t = (x - g.node(i)) / g.spacing();
}

}  // namespace detail

/// Cubic interpolation of real samples on a uniform grid.  Throws OutOfRange
/// outside [min, max].
inline double interp_cubic(const Grid1D& g, const VectorXd& v, double x) {
  if (!g.contains(x)) throw OutOfRange("interp_cubic: point outside grid");
  int base;
  double t;
  detail::cubic_stencil(g, x, base, t);
  const auto w = detail::cubic_weights(t);
  return w[0] * v(base) + w[1] * v(base + 1) + w[2] * v(base + 2) + w[3] * v(base + 3);
}

inline Complex interp_cubic(const Grid1D& g, const VectorXcd& v, double x) {
  if (!g.contains(x)) throw OutOfRange("interp_cubic: point outside grid");
  int base;
  double t;
  detail::cubic_stencil(g, x, base, t);
  const auto w = detail::cubic_weights(t);
  return w[0] * v(base) + w[1] * v(base + 1) + w[2] * v(base + 2) + w[3] * v(base + 3);
}

/// Bicubic interpolation of a real sample matrix m(i, j) = f(x_i, y_j).
inline double interp_bicubic(const Grid1D& gx, const Grid1D& gy,
                             const MatrixXd& m, double x, double y) {
  if (!gx.contains(x) || !gy.contains(y))
    throw OutOfRange("interp_bicubic: point outside grid");
  int bx, by;
  double tx, ty;
  detail::cubic_stencil(gx, x, bx, tx);
  detail::cubic_stencil(gy, y, by, ty);
  const auto wx = detail::cubic_weights(tx);
  const auto wy = detail::cubic_weights(ty);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    double row = 0.0;
    for (int j = 0; j < 4; ++j) row += wy[j] * m(bx + i, by + j);
    acc += wx[i] * row;
  }
  return acc;
}

inline Complex interp_bicubic(const Grid1D& gx, const Grid1D& gy,
                              const MatrixXcd& m, double x, double y) {
  if (!gx.contains(x) || !gy.contains(y))
    throw OutOfRange("interp_bicubic: point outside grid");
  int bx, by;
  double tx, ty;
  detail::cubic_stencil(gx, x, bx, tx);
  detail::cubic_stencil(gy, y, by, ty);
  const auto wx = detail::cubic_weights(tx);
  const auto wy = detail::cubic_weights(ty);
  Complex acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    Complex row = 0.0;
    for (int j = 0; j < 4; ++j) row += wy[j] * m(bx + i, by + j);
    acc += wx[i] * row;
  }
  return acc;
}

/// Tricubic interpolation over a stack of matrices: stack[k](i, j) is the
/// sample at (x_i, y_j, z_k).
inline Complex interp_tricubic(const Grid1D& gx, const Grid1D& gy,
                               const Grid1D& gz,
                               const std::vector<MatrixXcd>& stack,
                               double x, double y, double z) {
  if (!gz.contains(z)) throw OutOfRange("interp_tricubic: point outside grid");
  int bz;
  double tz;
  detail::cubic_stencil(gz, z, bz, tz);
  const auto wz = detail::cubic_weights(tz);
  Complex acc = 0.0;
  for (int k = 0; k < 4; ++k)
    acc += wz[k] * interp_bicubic(gx, gy, stack[bz + k], x, y);
  return acc;
}

}  // namespace lizshear
