#pragma once

// Core dense types and grid descriptions shared by every module.
//
// Everything numerical is carried in Eigen containers.  Grids are uniform
// (Grid1D) or logarithmic-symmetric (LogSymmetricGrid, used for the scale
// axis where the Haar measure concentrates near a = 0).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lizshear {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr Complex kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// Error taxonomy.  All precondition violations throw; numerical soft failures
// (tolerance misses) are reported through check results, never exceptions.
// ---------------------------------------------------------------------------

/// Invalid argument or malformed configuration.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operand lacks a required evaluator (e.g. no space-side callable).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested point lies outside a sampled/interpolated domain.
struct OutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// A vector failed the admissibility screen (divergent Calderon integral).
struct NotAdmissible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Grid1D: closed uniform grid on [min, max] with n nodes.
// ---------------------------------------------------------------------------

struct Grid1D {
  double min = 0.0;
  double max = 1.0;
  int n = 2;

  Grid1D() = default;
  Grid1D(double min_, double max_, int n_) : min(min_), max(max_), n(n_) {
    if (!(max > min)) throw InvalidArgument("Grid1D: max must exceed min");
    if (n < 2) throw InvalidArgument("Grid1D: need at least two nodes");
  }

  double spacing() const { return (max - min) / (n - 1); }
  double node(int i) const { return min + spacing() * i; }

  VectorXd nodes() const {
    return VectorXd::LinSpaced(n, min, max);
  }

  /// Composite-trapezoid weights for integration over [min, max].
  VectorXd trapezoid_weights() const {
    VectorXd w = VectorXd::Constant(n, spacing());
    w(0) *= 0.5;
    w(n - 1) *= 0.5;
    return w;
  }

  /// Index of the cell containing x, clamped so that cubic stencils fit.
  int cell(double x) const {
    int i = static_cast<int>(std::floor((x - min) / spacing()));
    if (i < 0) i = 0;
    if (i > n - 2) i = n - 2;
    return i;
  }

  bool contains(double x) const { return x >= min && x <= max; }
};

// ---------------------------------------------------------------------------
// LogSymmetricGrid: two logarithmically spaced branches +/-[a_min, a_max],
// ordered ascending (negative branch first when present).  Quadrature weights
// are per-branch trapezoid in log|a| scaled by |a|, so that sums over nodes
// approximate the plain da integral; measure factors such as |a|^{-3} are
// applied by the caller.
// ---------------------------------------------------------------------------

struct LogSymmetricGrid {
  double a_min = 0.05;
  double a_max = 4.0;
  int n_per_side = 8;
  bool include_negative = true;

  LogSymmetricGrid() = default;
  LogSymmetricGrid(double a_min_, double a_max_, int n_per_side_,
                   bool include_negative_ = true)
      : a_min(a_min_), a_max(a_max_), n_per_side(n_per_side_),
        include_negative(include_negative_) {
    if (!(a_min > 0.0)) throw InvalidArgument("LogSymmetricGrid: a_min must be positive");
    if (!(a_max > a_min)) throw InvalidArgument("LogSymmetricGrid: a_max must exceed a_min");
    if (n_per_side < 2) throw InvalidArgument("LogSymmetricGrid: need at least two nodes per side");
  }

  int size() const { return include_negative ? 2 * n_per_side : n_per_side; }

  /// Ascending nodes: -a_max .. -a_min, then a_min .. a_max.
  VectorXd nodes() const {
    VectorXd pos(n_per_side);
    const double ratio = std::log(a_max / a_min) / (n_per_side - 1);
    for (int i = 0; i < n_per_side; ++i) pos(i) = a_min * std::exp(ratio * i);
    pos(n_per_side - 1) = a_max;  // kill rounding drift at the endpoint
    if (!include_negative) return pos;
    VectorXd all(2 * n_per_side);
    for (int i = 0; i < n_per_side; ++i) all(i) = -pos(n_per_side - 1 - i);
    all.tail(n_per_side) = pos;
    return all;
  }

  /// Quadrature weights for the plain da integral, branch by branch.
  /// Trapezoid rule in the substitution a = +/- e^u (da = |a| du), which is
  /// the natural rule on geometric nodes: it is exact for c/|a| integrands
  /// and unbiased for integrands that are smooth in log|a|, where linear
  /// trapezoid would systematically overshoot at this spacing.
  VectorXd weights() const {
    const VectorXd x = nodes();
    const double h = std::log(a_max / a_min) / (n_per_side - 1);
    VectorXd w(x.size());
    for (int i = 0; i < x.size(); ++i) w(i) = std::abs(x(i)) * h;
    auto halve_ends = [&](int lo, int hi) {
      w(lo) *= 0.5;
      w(hi) *= 0.5;
    };
    if (include_negative) {
      halve_ends(0, n_per_side - 1);
      halve_ends(n_per_side, 2 * n_per_side - 1);
    } else {
      halve_ends(0, n_per_side - 1);
    }
    return w;
  }
};

// ---------------------------------------------------------------------------
// Sampled containers: values bound to a grid.
// ---------------------------------------------------------------------------

struct SampledSignal1D {
  Grid1D grid;
  VectorXcd values;

  SampledSignal1D() = default;
  SampledSignal1D(Grid1D g, VectorXcd v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n)
      throw InvalidArgument("SampledSignal1D: value count does not match grid");
  }
};

struct SampledField2D {
  Grid1D grid_x;
  Grid1D grid_y;
  MatrixXcd values;  // values(i, j) = f(x_i, y_j)

  SampledField2D() = default;
  SampledField2D(Grid1D gx, Grid1D gy, MatrixXcd v)
      : grid_x(gx), grid_y(gy), values(std::move(v)) {
    if (values.rows() != grid_x.n || values.cols() != grid_y.n)
      throw InvalidArgument("SampledField2D: value shape does not match grids");
  }
};

}  // namespace lizshear
