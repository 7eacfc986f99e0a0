#pragma once

// Quadrature Fourier transforms.  Convention throughout the library:
//
//   Ff(xi) = \int f(x) e^{-2 pi i xi x} dx,
//   f(x)   = \int Ff(xi) e^{+2 pi i x xi} dxi.
//
// Transforms are evaluated at arbitrary target frequencies (not tied to an
// FFT lattice) via dense phase matrices; along a uniform source grid the
// phase factors are generated by a stabilized complex-exponential recurrence
// and the transform itself is an Eigen matrix product.

#include "lizshear/quadrature.hpp"
#include "lizshear/types.hpp"

namespace lizshear {

/// Phase matrix E(i, j) = exp(sign * 2 pi i * targets(i) * grid.node(j)).
/// Built row-by-row with a multiplicative recurrence along the uniform grid;
/// the phase is re-anchored every few hundred steps to keep |E| = 1 exact.
inline MatrixXcd phase_matrix(const VectorXd& targets, const Grid1D& grid,
                              double sign) {
  const int rows = static_cast<int>(targets.size());
  MatrixXcd E(rows, grid.n);
  const double h = grid.spacing();
  constexpr int kAnchorStride = 256;
  for (int i = 0; i < rows; ++i) {
    const double omega = sign * 2.0 * kPi * targets(i);
    const Complex step = std::polar(1.0, omega * h);
    Complex cur = std::polar(1.0, omega * grid.min);
    for (int j = 0; j < grid.n; ++j) {
      if (j % kAnchorStride == 0)
        cur = std::polar(1.0, omega * grid.node(j));
      E(i, j) = cur;
      cur *= step;
    }
  }
  return E;
}

/// Ff at the given frequencies, by trapezoid quadrature over f's grid.
inline VectorXcd fourier1d(const SampledSignal1D& f, const VectorXd& xi) {
  const MatrixXcd E = phase_matrix(xi, f.grid, -1.0);
  const VectorXcd weighted =
      f.values.array() * f.grid.trapezoid_weights().cast<Complex>().array();
  return E * weighted;
}

/// Inverse transform of sampled frequency data at the given positions.
inline VectorXcd inverse_fourier1d(const SampledSignal1D& F, const VectorXd& x) {
  const MatrixXcd E = phase_matrix(x, F.grid, +1.0);
  const VectorXcd weighted =
      F.values.array() * F.grid.trapezoid_weights().cast<Complex>().array();
  return E * weighted;
}

/// 2D transform: Ff(xi_i, eta_j) for all pairs from the target grids.
/// Separable phase factorization: result = E_x * (W .* f) * E_y^T.
inline MatrixXcd fourier2d(const SampledField2D& f, const VectorXd& xi,
                           const VectorXd& eta) {
  const MatrixXcd Ex = phase_matrix(xi, f.grid_x, -1.0);
  const MatrixXcd Ey = phase_matrix(eta, f.grid_y, -1.0);
  const VectorXcd wx = f.grid_x.trapezoid_weights().cast<Complex>();
  const VectorXcd wy = f.grid_y.trapezoid_weights().cast<Complex>();
  const MatrixXcd weighted = wx.asDiagonal() * f.values * wy.asDiagonal();
  return Ex * weighted * Ey.transpose();
}

inline MatrixXcd inverse_fourier2d(const SampledField2D& F, const VectorXd& x,
                                   const VectorXd& y) {
  const MatrixXcd Ex = phase_matrix(x, F.grid_x, +1.0);
  const MatrixXcd Ey = phase_matrix(y, F.grid_y, +1.0);
  const VectorXcd wx = F.grid_x.trapezoid_weights().cast<Complex>();
  const VectorXcd wy = F.grid_y.trapezoid_weights().cast<Complex>();
  const MatrixXcd weighted = wx.asDiagonal() * F.values * wy.asDiagonal();
  return Ex * weighted * Ey.transpose();
}

}  // namespace lizshear
