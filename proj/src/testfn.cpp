#include "lizshear/testfn.hpp"

#include "lizshear/interp.hpp"
#include "lizshear/quadrature.hpp"

#include <mutex>

namespace lizshear {

namespace {

// ---------------------------------------------------------------------------
// Shared space-side table for chi_1.  chi_1 decays only stretched-
// exponentially, so the table spans [-48, 48]; the frequency profile is
// below 1e-15 outside [-6, 6], which bounds the quadrature truncation.
// ---------------------------------------------------------------------------

struct Chi1Table {
  Grid1D grid{-48.0, 48.0, 48001};
  VectorXd values;

  Chi1Table() {
    AnalyticFunction1D f;
    f.freq = [](double t) -> Complex { return chi1_freq(t); };
    const Grid1D tau(-6.0, 6.0, 3001);
    values = inverse_fourier_stream(f, grid.nodes(), tau).real();
  }

  double eval(double x) const {
    if (!grid.contains(x)) return 0.0;
    return interp_cubic(grid, values, x);
  }
};

const Chi1Table& chi1_table() {
  static const Chi1Table table;
  return table;
}

/// Space table for a function that only has a frequency evaluator.
VectorXd real_space_table(const AnalyticFunction1D& f, const Grid1D& grid) {
  const double fr = f.freq_radius;
  const int n = std::max(1201, static_cast<int>(fr * 400) | 1);
  const Grid1D tau(-fr, fr, n);
  return inverse_fourier_stream(f, grid.nodes(), tau).real();
}

/// Strided 4th-order central-difference derivative of sampled values.
/// order in 0..4; stride sets the effective step.
double fd_derivative(const VectorXcd& v, int i, int order, int stride,
                     double step, bool imag_part) {
  auto s = [&](int k) {
    const Complex c = v(i + k * stride);
    return imag_part ? c.imag() : c.real();
  };
  const double h = step * stride;
  switch (order) {
    case 0:
      return s(0);
    case 1:
      return (-s(2) + 8 * s(1) - 8 * s(-1) + s(-2)) / (12 * h);
    case 2:
      return (-s(2) + 16 * s(1) - 30 * s(0) + 16 * s(-1) - s(-2)) / (12 * h * h);
    case 3:
      return (s(3) - 8 * s(2) + 13 * s(1) - 13 * s(-1) + 8 * s(-2) - s(-3)) /
             (8 * h * h * h);
    case 4:
      return (-s(3) + 12 * s(2) - 39 * s(1) + 56 * s(0) - 39 * s(-1) +
              12 * s(-2) - s(-3)) /
             (6 * h * h * h * h);
    default:
      throw InvalidArgument("fd_derivative: order above 4");
  }
}

}  // namespace

AnalyticFunction1D builtin_chi1() {
  AnalyticFunction1D f;
  f.space = [](double x) -> Complex { return chi1_table().eval(x); };
  f.freq = [](double t) -> Complex { return chi1_freq(t); };
  f.label = "chi1";
  f.space_radius = 48.0;
  f.freq_radius = 6.0;
  return f;
}

Complex moment(const AnalyticFunction1D& f, int m) {
  if (m < 0) throw InvalidArgument("moment: negative order");
  if (!f.has_space() && !f.has_freq())
    throw CapabilityError("moment: function has no evaluator");
  const double R = f.space_radius;
  const int n = 2 * static_cast<int>(std::ceil(R / 0.005)) + 1;
  const Grid1D grid(-R, R, n);
  if (f.has_space()) {
    return quad_kahan(grid, [&](double x) {
      return std::pow(x, m) * f.space(x);
    });
  }
  const VectorXd table = real_space_table(f, grid);
  KahanSum<long double> acc;
  const double h = grid.spacing();
  for (int i = 0; i < grid.n; ++i) {
    const double w = (i == 0 || i == grid.n - 1) ? 0.5 * h : h;
    acc.add(static_cast<long double>(w) * std::pow(grid.node(i), m) * table(i));
  }
  return {static_cast<double>(acc.value()), 0.0};
}

Complex moment(const AnalyticFunction2D& f, int m1, int m2) {
  if (m1 < 0 || m2 < 0) throw InvalidArgument("moment: negative order");
  if (!f.has_space())
    throw CapabilityError("moment: 2D moment needs a space evaluator");
  const double R = f.space_radius;
  const double target = std::max(0.005, 2.0 * R / 9600.0);
  const int n = 2 * static_cast<int>(std::ceil(R / target)) + 1;
  const Grid1D grid(-R, R, n);
  const double h = grid.spacing();
  // Row-by-row compensated reduction, deterministic order.
  KahanSum<long double> re, im;
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.node(i);
    const double wx = ((i == 0 || i == grid.n - 1) ? 0.5 * h : h) * std::pow(x, m1);
    KahanSum<long double> row_re, row_im;
    for (int j = 0; j < grid.n; ++j) {
      const double y = grid.node(j);
      const double wy = ((j == 0 || j == grid.n - 1) ? 0.5 * h : h) * std::pow(y, m2);
      const Complex v = f.space(x, y);
      row_re.add(wy * v.real());
      row_im.add(wy * v.imag());
    }
    re.add(wx * row_re.value());
    im.add(wx * row_im.value());
  }
  return {static_cast<double>(re.value()), static_cast<double>(im.value())};
}

AnalyticFunction1D antiderivative_s0(const AnalyticFunction1D& f,
                                     double mu0_tol) {
  const Complex mu0 = moment(f, 0);
  if (std::abs(mu0) > mu0_tol)
    throw InvalidArgument("antiderivative_s0: mu_0 exceeds tolerance, input not in S_0");

  const double R = f.space_radius;
  const int n = 2 * static_cast<int>(std::ceil(R / 0.002)) + 1;
  const Grid1D grid(-R, R, n);
  const double h = grid.spacing();
  auto samples = std::make_shared<VectorXcd>(grid.n);
  if (f.has_space()) {
    for (int i = 0; i < grid.n; ++i) (*samples)(i) = f.space(grid.node(i));
  } else {
    *samples = real_space_table(f, grid).cast<Complex>();
  }

  // Cumulative trapezoid with Euler-Maclaurin endpoint correction
  //   int_{x_0}^{x_k} f = trapz + h^2/12 (f'(x_0) - f'(x_k)),
  // which upgrades the midspan accuracy from O(h^2) to O(h^4).
  auto deriv = [&](int i) -> Complex {
    if (i < 2) i = 2;
    if (i > grid.n - 3) i = grid.n - 3;
    return (-(*samples)(i + 2) + 8.0 * (*samples)(i + 1) -
            8.0 * (*samples)(i - 1) + (*samples)(i - 2)) /
           (12.0 * h);
  };
  auto cum = std::make_shared<VectorXcd>(grid.n);
  const Complex d0 = deriv(0);
  Complex trapz = 0.0;
  (*cum)(0) = 0.0;
  for (int i = 1; i < grid.n; ++i) {
    trapz += 0.5 * h * ((*samples)(i - 1) + (*samples)(i));
    (*cum)(i) = trapz + h * h / 12.0 * (d0 - deriv(i));
  }

  AnalyticFunction1D g;
  g.space = [grid, cum](double x) -> Complex {
    if (x < grid.min) return 0.0;
    if (x > grid.max) return (*cum)(grid.n - 1);
    return interp_cubic(grid, *cum, x);
  };
  g.freq = [fr = f.freq](double t) -> Complex {
    if (t == 0.0) return 0.0;
    return fr(t) / (2.0 * kPi * kI * t);
  };
  g.label = "antiderivative(" + f.label + ")";
  g.space_radius = f.space_radius;
  g.freq_radius = f.freq_radius;
  return g;
}

double schwartz_seminorm(const AnalyticFunction1D& f, int nu) {
  if (nu < 0 || nu > 4)
    throw InvalidArgument("schwartz_seminorm: order must be in 0..4");
  if (!f.has_space())
    throw CapabilityError("schwartz_seminorm: needs a space evaluator");
  const double R = f.space_radius;
  const double step = 1e-3;
  const int stride = 5;  // effective finite-difference step 5e-3
  const int pad = 3 * stride;
  const int n = 2 * static_cast<int>(std::ceil(R / step)) + 1 + 2 * pad;
  VectorXcd v(n);
  const double x0 = -R - pad * step;
  for (int i = 0; i < n; ++i) v(i) = f.space(x0 + i * step);
  double sup = 0.0;
  for (int i = pad; i < n - pad; ++i) {
    const double x = x0 + i * step;
    const double w = std::pow(1.0 + x * x, 0.5 * nu);
    for (int m = 0; m <= nu; ++m) {
      const double dr = fd_derivative(v, i, m, stride, step, false);
      const double di = fd_derivative(v, i, m, stride, step, true);
      sup = std::max(sup, w * std::hypot(dr, di));
    }
  }
  return sup;
}

double schwartz_seminorm(const AnalyticFunction2D& f, int nu) {
  if (nu < 0 || nu > 4)
    throw InvalidArgument("schwartz_seminorm: order must be in 0..4");
  if (!f.has_space())
    throw CapabilityError("schwartz_seminorm: needs a space evaluator");
  const double R = f.space_radius;
  const double step = 0.01;
  const int stride = 1;
  const int pad = 3;
  const int half = static_cast<int>(std::ceil(R / step));
  const int n = 2 * half + 1 + 2 * pad;
  const double x0 = -R - pad * step;
  MatrixXcd v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = f.space(x0 + i * step, x0 + j * step);
  double sup = 0.0;
  for (int mx = 0; mx <= nu; ++mx) {
    for (int my = 0; mx + my <= nu; ++my) {
      for (int i = pad; i < n - pad; ++i) {
        for (int j = pad; j < n - pad; ++j) {
          // mixed partial: x-stencil applied to y-stencil values
          auto row_val = [&](int di) {
            VectorXcd strip(7);
            for (int dj = -3; dj <= 3; ++dj) strip(dj + 3) = v(i + di, j + dj);
            return Complex(fd_derivative(strip, 3, my, stride, step, false),
                           fd_derivative(strip, 3, my, stride, step, true));
          };
          VectorXcd col(7);
          for (int di = -3; di <= 3; ++di) col(di + 3) = row_val(di);
          const Complex d(fd_derivative(col, 3, mx, stride, step, false),
                          fd_derivative(col, 3, mx, stride, step, true));
          const double x = x0 + i * step;
          const double y = x0 + j * step;
          const double w = std::pow(1.0 + x * x + y * y, 0.5 * nu);
          sup = std::max(sup, w * std::abs(d));
        }
      }
    }
  }
  return sup;
}

double directional_moment_check(const AnalyticFunction2D& f, int j, int m,
                                const std::vector<double>& slices) {
  if (j != 1 && j != 2)
    throw InvalidArgument("directional_moment_check: axis must be 1 or 2");
  if (!f.has_space())
    throw CapabilityError("directional_moment_check: needs a space evaluator");
  const double R = f.space_radius;
  const int n = 2 * static_cast<int>(std::ceil(R / 0.005)) + 1;
  const Grid1D grid(-R, R, n);
  double worst = 0.0;
  for (double c : slices) {
    const Complex val = quad_kahan(grid, [&](double t) {
      const Complex v = (j == 1) ? f.space(t, c) : f.space(c, t);
      return std::pow(t, m) * v;
    });
    worst = std::max(worst, std::abs(val));
  }
  return worst;
}

}  // namespace lizshear
