#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lizshear/distributions.hpp"
#include "lizshear/testfn.hpp"

using namespace lizshear;

TEST_CASE("pairing against a Gaussian carrier: closed forms") {
  const AnalyticFunction2D g = gaussian2d();

  SUBCASE("Dirac evaluates the test function") {
    const Dirac d{Vector2d(0.3, -0.6)};
    const Complex expect = g.space(0.3, -0.6);
    CHECK(std::abs(pair(d, g) - expect) < 1e-14);
  }

  SUBCASE("polynomial moments") {
    Polynomial p;  // x1^2
    p.coeffs(2, 0) = 1.0;
    CHECK(pair(p, g).real() ==
          doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-9));
    Polynomial q;  // 2 + x1 x2^2
    q.coeffs(0, 0) = 2.0;
    q.coeffs(1, 2) = 1.0;
    CHECK(pair(q, g).real() == doctest::Approx(2.0).epsilon(1e-9));
  }

  SUBCASE("line delta along x2 = v0 x1 + c") {
    const LineDelta d{0.75, 0.4};
    // int e^{-pi(t^2 + (v0 t + c)^2)} dt
    const double v0 = d.v0, c = d.c;
    const double expect =
        std::exp(-kPi * c * c / (1.0 + v0 * v0)) / std::sqrt(1.0 + v0 * v0);
    CHECK(pair(d, g).real() == doctest::Approx(expect).epsilon(1e-8));
  }

  SUBCASE("derivative pairs by parts") {
    // (d^2/dx1^2 g, g) = int g * d^2 g / dx1^2 = -pi / 2
    const DerivativeOfFunction d{g, 2, 0};
    CHECK(pair(d, g).real() == doctest::Approx(-kPi / 2.0).epsilon(1e-6));
    // first derivative of an even function against itself integrates to 0
    const DerivativeOfFunction d1{g, 1, 0};
    CHECK(std::abs(pair(d1, g)) < 1e-10);
    CHECK_THROWS_AS(pair(DerivativeOfFunction{g, 3, 0}, g), CapabilityError);
  }

  SUBCASE("sampled function reduces to an integral product") {
    const SampledFunctionD d{g};
    // int e^{-2 pi (x^2 + y^2)} = 1/2
    CHECK(pair(d, g).real() == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("desingularized transform: polynomial annihilation") {
  const AdmissibleVector psi = AdmissibleVector::builtin();
  Polynomial p;
  p.coeffs(0, 0) = 1.0;
  p.coeffs(1, 0) = -2.0;
  p.coeffs(2, 2) = 0.7;
  p.coeffs(0, 3) = 1.3;
  p.coeffs(4, 0) = -0.1;
  for (const GroupElement& g :
       {GroupElement(Vector2d(0.5, -1.0), 0.8, 0.3),
        GroupElement(Vector2d(-2.0, 1.5), -1.2, 2.0),
        GroupElement(Vector2d(0.0, 0.0), 0.0, -0.7)}) {
    CHECK(std::abs(desingularized_shearlet(p, psi, g)) < 1e-6);
  }
}

TEST_CASE("desingularized Dirac is the conjugate atom value") {
  const AdmissibleVector psi = AdmissibleVector::builtin();
  const GroupElement g(Vector2d(0.4, -0.2), 0.6, 0.5);
  const Dirac d{Vector2d(0.9, 0.3)};
  const Complex lhs = desingularized_shearlet(d, psi, g);
  const Complex rhs = rep_apply(psi.conjugated(), g).space(0.9, 0.3);
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("desingularized transform of a classical function matches analysis") {
  // for real psi the bilinear pairing (f, S_g conj(psi)) equals <f, S_g psi>
  const AdmissibleVector psi = AdmissibleVector::builtin();
  const AnalyticFunction2D f = gaussian2d();
  const GroupElement g(Vector2d(0.5, 0.25), -0.4, 0.8);
  const Complex lhs = desingularized_shearlet(SampledFunctionD{f}, psi, g);
  const Complex rhs = analyze_spectral_point(f, psi, g.b, g.s, g.a);
  CHECK(std::abs(lhs - rhs) < 1e-6);
}

TEST_CASE("slow-growth bound holds for the builtin bump") {
  const SlowGrowthFunction4D phi = gaussian_bump_4d();
  ParamGrid g;
  g.b1 = Grid1D(-3.0, 3.0, 9);
  g.b2 = Grid1D(-3.0, 3.0, 9);
  g.s = Grid1D(-2.0, 2.0, 5);
  g.a = LogSymmetricGrid(0.2, 2.0, 4, true);
  CHECK(phi.growth_ratio(g) <= 1.0);
}

TEST_CASE("distributional and desingularized routes are consistent") {
  const AdmissibleVector psi = AdmissibleVector::builtin();
  const SlowGrowthFunction4D bump = gaussian_bump_4d();
  ParamGrid g;
  g.b1 = Grid1D(-3.0, 3.0, 13);
  g.b2 = Grid1D(-3.0, 3.0, 13);
  g.s = Grid1D(-1.5, 1.5, 5);
  g.a = LogSymmetricGrid(0.4, 1.6, 3, true);
  const CoefficientArray Phi = sample_coefficients(
      g, [&](double b1, double b2, double s, double a) {
        return bump.eval(b1, b2, s, a);
      });
  FieldSpec spec;
  spec.xi_max = 6.0 / 0.4 + 1.0;  // cover the smallest-scale atoms
  spec.n_xi = 1281;
  const Dirac d{Vector2d(0.25, -0.5)};
  const ConsistencyResult r = consistency_check(d, Phi, psi, spec);
  CHECK(!r.degenerate);
  CHECK(r.discrepancy < 1e-3);
}
