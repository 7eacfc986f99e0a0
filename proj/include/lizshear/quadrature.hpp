#pragma once

// Quadrature helpers: composite trapezoid over the uniform/log grids, with a
// compensated (Kahan) accumulator for the long alternating sums that appear
// in moment computations.

#include "lizshear/types.hpp"

namespace lizshear {

/// Compensated accumulator.  Keeps a running error term so that sums of many
/// small alternating contributions do not lose the cancellation structure.
template <typename T>
class KahanSum {
 public:
  void add(T value) {
    const T y = value - comp_;
    const T t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  T value() const { return sum_; }

 private:
  T sum_{};
  T comp_{};
};

/// Trapezoid integral of sampled values over their grid.
inline Complex quad(const SampledSignal1D& f) {
  // dot() conjugates its first argument; the weights are real so this is a
  // plain weighted sum.
  return f.grid.trapezoid_weights().cast<Complex>().dot(f.values);
}

/// Trapezoid integral of a 2D sampled field (tensor-product weights).
inline Complex quad(const SampledField2D& f) {
  const VectorXd wx = f.grid_x.trapezoid_weights();
  const VectorXd wy = f.grid_y.trapezoid_weights();
  return (wx.cast<Complex>().transpose() * f.values * wy.cast<Complex>())(0);
}

/// Trapezoid integral of fn over grid, evaluated with compensated summation.
template <typename Fn>
Complex quad_kahan(const Grid1D& grid, Fn&& fn) {
  const double h = grid.spacing();
  KahanSum<long double> re, im;
  for (int i = 0; i < grid.n; ++i) {
    const double w = (i == 0 || i == grid.n - 1) ? 0.5 * h : h;
    const Complex v = fn(grid.node(i));
    re.add(static_cast<long double>(w) * v.real());
    im.add(static_cast<long double>(w) * v.imag());
  }
  return {static_cast<double>(re.value()), static_cast<double>(im.value())};
}

}  // namespace lizshear
