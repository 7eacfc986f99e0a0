#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lizshear/analytic.hpp"
#include "lizshear/fourier.hpp"

using namespace lizshear;

TEST_CASE("1D transform of a Gaussian matches the closed form") {
  const AnalyticFunction1D g = gaussian1d();
  const Grid1D x(-10.0, 10.0, 2001);
  const SampledSignal1D s = sample_space(g, x);
  VectorXd xi(5);
  xi << -2.0, -0.37, 0.0, 1.234, 3.0;
  const VectorXcd F = fourier1d(s, xi);
  for (int i = 0; i < xi.size(); ++i) {
    CHECK(std::abs(F(i) - std::exp(-kPi * xi(i) * xi(i))) < 1e-12);
  }
}

TEST_CASE("translation turns into modulation") {
  const AnalyticFunction1D g = translate(gaussian1d(), 0.7);
  const Grid1D x(-10.0, 10.0, 2001);
  const VectorXcd F = fourier1d(sample_space(g, x), VectorXd::Constant(1, 1.3));
  const Complex expect =
      std::exp(-2.0 * kPi * kI * 1.3 * 0.7) * std::exp(-kPi * 1.3 * 1.3);
  CHECK(std::abs(F(0) - expect) < 1e-12);
}

TEST_CASE("inverse transform undoes the forward transform") {
  const AnalyticFunction1D g = gaussian1d();
  const Grid1D xi(-8.0, 8.0, 1601);
  SampledSignal1D F{xi, VectorXcd(xi.n)};
  for (int i = 0; i < xi.n; ++i) F.values(i) = g.freq(xi.node(i));
  VectorXd x(3);
  x << -1.5, 0.0, 0.25;
  const VectorXcd back = inverse_fourier1d(F, x);
  for (int i = 0; i < x.size(); ++i)
    CHECK(std::abs(back(i) - g.space(x(i))) < 1e-12);
}

TEST_CASE("phase_matrix equals direct exponentials") {
  const Grid1D g(-3.0, 3.0, 701);
  VectorXd t(3);
  t << -2.1, 0.4, 2.9;
  const MatrixXcd E = phase_matrix(t, g, -1.0);
  for (int i = 0; i < t.size(); ++i)
    for (int j : {0, 137, 350, 699}) {
      const Complex direct = std::exp(-2.0 * kPi * kI * t(i) * g.node(j));
      CHECK(std::abs(E(i, j) - direct) < 1e-13);
    }
}

TEST_CASE("2D transform of a separable Gaussian") {
  const AnalyticFunction2D g = gaussian2d();
  const Grid1D x(-8.0, 8.0, 641);
  const SampledField2D s = sample_space(g, x, x);
  VectorXd xi(3);
  xi << -1.0, 0.3, 2.0;
  const MatrixXcd F = fourier2d(s, xi, xi);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(F(i, j) - g.freq(xi(i), xi(j))) < 1e-10);
}

TEST_CASE("2D inverse transform recovers space samples") {
  const AnalyticFunction2D g = gaussian2d();
  const Grid1D xi(-6.0, 6.0, 481);
  SampledField2D F{xi, xi, MatrixXcd(xi.n, xi.n)};
  for (int i = 0; i < xi.n; ++i)
    for (int j = 0; j < xi.n; ++j) F.values(i, j) = g.freq(xi.node(i), xi.node(j));
  VectorXd x(2);
  x << -0.8, 1.1;
  const MatrixXcd back = inverse_fourier2d(F, x, x);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(back(i, j) - g.space(x(i), x(j))) < 1e-10);
}

TEST_CASE("streamed inverse transform matches the dense one") {
  const AnalyticFunction1D g = gaussian1d();
  const Grid1D tau(-6.0, 6.0, 1201);
  VectorXd x(4);
  x << -2.0, -0.1, 0.9, 3.3;
  const VectorXcd v = inverse_fourier_stream(g, x, tau, 2);
  for (int i = 0; i < x.size(); ++i)
    CHECK(std::abs(v(i) - g.space(x(i))) < 1e-12);
}

TEST_CASE("fourier_consistency is small for a consistent pair") {
  CHECK(fourier_consistency(gaussian1d(), 4.0, 33) < 1e-10);
}
