#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lizshear/testfn.hpp"

using namespace lizshear;

// Reference values below were frozen from high-precision quadrature of the
// closed-form frequency profile F chi_1(tau) = exp(-1/tau^2 - tau^2).

TEST_CASE("chi1 frequency profile closed form") {
  CHECK(chi1_freq(0.0) == 0.0);
  CHECK(chi1_freq(1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(chi1_freq(-1.0) == chi1_freq(1.0));
  CHECK(chi1_freq(0.05) < 1e-170);  // flat to infinite order at 0
}

TEST_CASE("chi1 space table against frozen point values") {
  const AnalyticFunction1D chi1 = builtin_chi1();
  CHECK(chi1.space(0.0).real() ==
        doctest::Approx(0.239875543936124).epsilon(1e-10));
  CHECK(chi1.space(0.0).imag() == doctest::Approx(0.0).epsilon(1e-14));
  // stretched-exponential tail samples
  CHECK(chi1.space(6.0).real() == doctest::Approx(5.9203e-6).epsilon(1e-3));
  CHECK(chi1.space(10.0).real() == doctest::Approx(-8.31e-9).epsilon(5e-3));
  CHECK(std::abs(chi1.space(49.0)) == 0.0);  // outside the table
  // evenness
  CHECK(std::abs(chi1.space(-3.3) - chi1.space(3.3)) < 1e-12);
}

TEST_CASE("chi1 has vanishing moments") {
  const AnalyticFunction1D chi1 = builtin_chi1();
  for (int m = 0; m <= 6; ++m) CHECK(std::abs(moment(chi1, m)) < 1e-8);
}

TEST_CASE("Gaussian moments match closed forms") {
  const AnalyticFunction1D g = gaussian1d();
  CHECK(moment(g, 0).real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(moment(g, 1)) < 1e-12);
  // int x^2 e^{-pi x^2} dx = 1 / (2 pi)
  CHECK(moment(g, 2).real() ==
        doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-9));
}

TEST_CASE("2D moments of the separable Gaussian") {
  const AnalyticFunction2D g = gaussian2d();
  CHECK(moment(g, 0, 0).real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(moment(g, 1, 0)) < 1e-11);
  CHECK(moment(g, 2, 2).real() ==
        doctest::Approx(1.0 / (4.0 * kPi * kPi)).epsilon(1e-8));
}

TEST_CASE("antiderivative of an S_0 profile stays in S_0") {
  const AnalyticFunction1D chi1 = builtin_chi1();
  const AnalyticFunction1D g = antiderivative_s0(chi1);
  // frequency relation F f = 2 pi i tau F g at a few frequencies
  for (double tau : {0.5, 1.0, 2.0}) {
    const Complex lhs = chi1.freq(tau);
    const Complex rhs = 2.0 * kPi * kI * tau * g.freq(tau);
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
  // the antiderivative has vanishing moments again
  for (int m = 0; m <= 3; ++m) CHECK(std::abs(moment(g, m)) < 1e-7);
  // a Gaussian (mu_0 = 1) is rejected
  CHECK_THROWS_AS(antiderivative_s0(gaussian1d()), InvalidArgument);
}

TEST_CASE("Schwartz seminorms are finite and ordered") {
  const AnalyticFunction1D g = gaussian1d();
  const double r0 = schwartz_seminorm(g, 0);
  const double r2 = schwartz_seminorm(g, 2);
  CHECK(r0 == doctest::Approx(1.0).epsilon(1e-6));  // sup |e^{-pi x^2}|
  CHECK(r2 >= r0);
  CHECK(r2 < 50.0);
}

TEST_CASE("directional moment check on a separable product") {
  // f(x, y) = chi1(x) e^{-pi y^2}: x-moments vanish on every slice,
  // the zeroth y-moment does not.
  const AnalyticFunction1D chi1 = builtin_chi1();
  AnalyticFunction2D f;
  f.space = [chi1](double x, double y) {
    return chi1.space(x) * std::exp(-kPi * y * y);
  };
  f.space_radius = 48.0;
  f.freq_radius = 6.0;
  CHECK(directional_moment_check(f, 1, 0, {0.0, 0.5}) < 1e-8);
  CHECK(directional_moment_check(f, 1, 2, {0.0, 0.5}) < 1e-7);
  CHECK(directional_moment_check(f, 2, 0, {0.0}) > 0.1);
}
