#pragma once

// AnalyticFunction carriers: a function known through a frequency evaluator
// (always) and optionally a space evaluator, with truncation radii recording
// where each side has decayed to negligible size.  These are the working
// representation of Lizorkin/Schwartz test functions; every transform in the
// library consumes and produces them.

#include "lizshear/fourier.hpp"
#include "lizshear/parallel.hpp"
#include "lizshear/types.hpp"

#include <functional>
#include <memory>
#include <utility>

namespace lizshear {

struct AnalyticFunction1D {
  std::function<Complex(double)> space;  // optional
  std::function<Complex(double)> freq;   // required
  std::string label;
  double space_radius = 6.0;  // |f(x)| negligible for |x| > space_radius
  double freq_radius = 6.0;   // |Ff(tau)| negligible beyond this

  bool has_space() const { return static_cast<bool>(space); }
  bool has_freq() const { return static_cast<bool>(freq); }
};

struct AnalyticFunction2D {
  std::function<Complex(double, double)> space;  // optional
  std::function<Complex(double, double)> freq;   // required
  std::string label;
  double space_radius = 6.0;
  double freq_radius = 6.0;

  bool has_space() const { return static_cast<bool>(space); }
  bool has_freq() const { return static_cast<bool>(freq); }
};

// ---------------------------------------------------------------------------
// Builtins.
// ---------------------------------------------------------------------------

/// Standard Gaussian e^{-pi x^2}; its own Fourier transform.
inline AnalyticFunction1D gaussian1d() {
  AnalyticFunction1D f;
  f.space = [](double x) -> Complex { return std::exp(-kPi * x * x); };
  f.freq = [](double t) -> Complex { return std::exp(-kPi * t * t); };
  f.label = "gaussian1d";
  return f;
}

/// Isotropic 2D Gaussian e^{-pi |x|^2}.
inline AnalyticFunction2D gaussian2d() {
  AnalyticFunction2D f;
  f.space = [](double x, double y) -> Complex {
    return std::exp(-kPi * (x * x + y * y));
  };
  f.freq = [](double u, double v) -> Complex {
    return std::exp(-kPi * (u * u + v * v));
  };
  f.label = "gaussian2d";
  return f;
}

// ---------------------------------------------------------------------------
// Elementary operators: T_b f(x) = f(x-b), D_a f(x) = |a|^{-1/2} f(x/a).
// ---------------------------------------------------------------------------

inline AnalyticFunction1D translate(const AnalyticFunction1D& f, double b) {
  AnalyticFunction1D g;
  if (f.has_space()) {
    g.space = [sp = f.space, b](double x) { return sp(x - b); };
  }
  g.freq = [fr = f.freq, b](double t) {
    return std::exp(-2.0 * kPi * kI * b * t) * fr(t);
  };
  g.label = "translate(" + f.label + ")";
  g.space_radius = f.space_radius + std::abs(b);
  g.freq_radius = f.freq_radius;
  return g;
}

inline AnalyticFunction2D translate(const AnalyticFunction2D& f,
                                    const Vector2d& b) {
  AnalyticFunction2D g;
  if (f.has_space()) {
    g.space = [sp = f.space, b](double x, double y) {
      return sp(x - b.x(), y - b.y());
    };
  }
  g.freq = [fr = f.freq, b](double u, double v) {
    return std::exp(-2.0 * kPi * kI * (b.x() * u + b.y() * v)) * fr(u, v);
  };
  g.label = "translate(" + f.label + ")";
  g.space_radius = f.space_radius + b.cwiseAbs().maxCoeff();
  g.freq_radius = f.freq_radius;
  return g;
}

inline AnalyticFunction1D dilate(const AnalyticFunction1D& f, double a) {
  if (a == 0.0) throw InvalidArgument("dilate: scale must be nonzero");
  AnalyticFunction1D g;
  const double root = std::sqrt(std::abs(a));
  if (f.has_space()) {
    g.space = [sp = f.space, a, root](double x) { return sp(x / a) / root; };
  }
  g.freq = [fr = f.freq, a, root](double t) { return root * fr(a * t); };
  g.label = "dilate(" + f.label + ")";
  g.space_radius = f.space_radius * std::abs(a);
  g.freq_radius = f.freq_radius / std::abs(a);
  return g;
}

// ---------------------------------------------------------------------------
// Sampling and consistency helpers.
// ---------------------------------------------------------------------------

inline SampledSignal1D sample_space(const AnalyticFunction1D& f,
                                    const Grid1D& grid) {
  if (!f.has_space()) throw CapabilityError("sample_space: no space evaluator");
  VectorXcd v(grid.n);
  for (int i = 0; i < grid.n; ++i) v(i) = f.space(grid.node(i));
  return {grid, std::move(v)};
}

inline SampledField2D sample_space(const AnalyticFunction2D& f,
                                   const Grid1D& gx, const Grid1D& gy) {
  if (!f.has_space()) throw CapabilityError("sample_space: no space evaluator");
  MatrixXcd m(gx.n, gy.n);
  for (int i = 0; i < gx.n; ++i)
    for (int j = 0; j < gy.n; ++j) m(i, j) = f.space(gx.node(i), gy.node(j));
  return {gx, gy, std::move(m)};
}

/// Evaluates inverse Fourier quadrature of f.freq at the given positions
/// without materializing a phase matrix (streaming, thread-parallel rows).
inline VectorXcd inverse_fourier_stream(const AnalyticFunction1D& f,
                                        const VectorXd& x, const Grid1D& tau,
                                        int threads = 0) {
  VectorXcd F(tau.n);
  for (int j = 0; j < tau.n; ++j) F(j) = f.freq(tau.node(j));
  const VectorXcd weighted =
      F.array() * tau.trapezoid_weights().cast<Complex>().array();
  VectorXcd out(x.size());
  const double h = tau.spacing();
  parallel_for(static_cast<int>(x.size()), threads, [&](int i) {
    const double omega = 2.0 * kPi * x(i);
    const Complex step = std::polar(1.0, omega * h);
    Complex cur = std::polar(1.0, omega * tau.min);
    Complex acc = 0.0;
    for (int j = 0; j < tau.n; ++j) {
      if (j % 256 == 0) cur = std::polar(1.0, omega * tau.node(j));
      acc += weighted(j) * cur;
      cur *= step;
    }
    out(i) = acc;
  });
  return out;
}

/// Max-abs mismatch between the space evaluator and the inverse transform of
/// the frequency evaluator, over probe points inside [-radius, radius].
inline double fourier_consistency(const AnalyticFunction1D& f,
                                  double radius = 6.0, int n_probe = 101) {
  if (!f.has_space()) throw CapabilityError("fourier_consistency: no space evaluator");
  const Grid1D tau(-f.freq_radius, f.freq_radius,
                   std::max(1201, static_cast<int>(f.freq_radius * 200) | 1));
  const VectorXd probes = VectorXd::LinSpaced(n_probe, -radius, radius);
  const VectorXcd rec = inverse_fourier_stream(f, probes, tau);
  double worst = 0.0;
  for (int i = 0; i < n_probe; ++i)
    worst = std::max(worst, std::abs(rec(i) - f.space(probes(i))));
  return worst;
}

}  // namespace lizshear
