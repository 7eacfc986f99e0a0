#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lizshear/radon.hpp"

using namespace lizshear;

namespace {

// closed form: R^aff of the unit Gaussian along x + v y = t
double gaussian_affine(double v, double t) {
  return std::exp(-kPi * t * t / (1.0 + v * v)) / std::sqrt(1.0 + v * v);
}

}  // namespace

TEST_CASE("polar projections of the Gaussian are rotation invariant") {
  const AnalyticFunction2D g = gaussian2d();
  const Grid1D theta(-1.2, 1.2, 7);
  const Grid1D q(-3.0, 3.0, 13);
  const PolarSinogram p = radon_polar(g, theta, q);
  for (int i = 0; i < theta.n; ++i)
    for (int j = 0; j < q.n; ++j) {
      const double expect = std::exp(-kPi * q.node(j) * q.node(j));
      CHECK(std::abs(p.values(i, j) - expect) < 1e-8);
    }
}

TEST_CASE("affine direct quadrature matches the closed form") {
  const AnalyticFunction2D g = gaussian2d();
  const Grid1D v(-3.0, 3.0, 7);
  const Grid1D t(-2.0, 2.0, 9);
  const AffineSinogram s = radon_affine_direct(g, v, t);
  for (int i = 0; i < v.n; ++i)
    for (int j = 0; j < t.n; ++j)
      CHECK(std::abs(s.values(i, j) -
                     gaussian_affine(v.node(i), t.node(j))) < 1e-8);
}

TEST_CASE("spectral slice path agrees with direct line integration") {
  const AnalyticFunction2D g = gaussian2d();
  const Grid1D t(-2.0, 2.0, 33);
  for (double v : {-3.0, -0.7, 0.0, 1.5, 3.0}) {
    const SampledSignal1D s = radon_affine_spectral(g, v, t);
    for (int j = 0; j < t.n; ++j)
      CHECK(std::abs(s.values(j) - gaussian_affine(v, t.node(j))) < 1e-7);
  }
}

TEST_CASE("polar to affine coordinate change") {
  const AnalyticFunction2D g = gaussian2d();
  const Grid1D theta(-1.5, 1.5, 241);
  const Grid1D q(-4.0, 4.0, 321);
  const PolarSinogram p = radon_polar(g, theta, q);
  for (double v : {-2.0, -0.4, 0.0, 0.9, 2.2})
    for (double t : {-1.5, 0.0, 0.8}) {
      const Complex a = polar_to_affine(p, v, t);
      CHECK(std::abs(a - gaussian_affine(v, t)) < 1e-5);
    }
}

TEST_CASE("domain guards") {
  const AnalyticFunction2D g = gaussian2d();
  const Grid1D t(-1.0, 1.0, 5);
  CHECK_THROWS_AS(radon_affine_direct(g, Grid1D(-12.0, 12.0, 5), t),
                  InvalidArgument);
  CHECK_THROWS_AS(radon_affine_spectral(g, 11.0, t), InvalidArgument);
  CHECK_THROWS_AS(radon_polar(g, Grid1D(0.0, 3.5, 5), t), InvalidArgument);
  const PolarSinogram p =
      radon_polar(g, Grid1D(-0.5, 0.5, 9), Grid1D(-1.0, 1.0, 9));
  CHECK_THROWS_AS(polar_to_affine(p, 3.0, 0.0), OutOfRange);  // theta outside
  AnalyticFunction2D nospace;
  nospace.freq = [](double, double) -> Complex { return 0.0; };
  CHECK_THROWS_AS(radon_polar(nospace, Grid1D(-0.5, 0.5, 3), t),
                  CapabilityError);
}
