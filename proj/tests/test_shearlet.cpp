#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lizshear/shearlet.hpp"
#include "lizshear/testfn.hpp"

using namespace lizshear;

TEST_CASE("group algebra") {
  const GroupElement e;  // identity
  const GroupElement g(Vector2d(0.3, -1.1), 0.7, -0.6);
  const GroupElement h(Vector2d(-2.0, 0.4), -1.3, 2.5);

  auto close = [](const GroupElement& p, const GroupElement& q) {
    return (p.b - q.b).norm() < 1e-12 && std::abs(p.s - q.s) < 1e-12 &&
           std::abs(p.a - q.a) < 1e-12;
  };
  CHECK(close(group_product(e, g), g));
  CHECK(close(group_product(g, e), g));
  CHECK(close(group_product(g, group_inverse(g)), e));
  CHECK(close(group_product(group_inverse(g), g), e));
  // associativity
  const GroupElement k(Vector2d(1.0, 1.0), 0.2, 0.5);
  CHECK(close(group_product(group_product(g, h), k),
              group_product(g, group_product(h, k))));
  CHECK_THROWS_AS(GroupElement(Vector2d::Zero(), 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(dilation_matrix(0.0), InvalidArgument);
}

TEST_CASE("dilation matrix anisotropy") {
  const Eigen::Matrix2d m = dilation_matrix(4.0);
  CHECK(m(0, 0) == doctest::Approx(4.0));
  CHECK(m(1, 1) == doctest::Approx(2.0));
  const Eigen::Matrix2d n = dilation_matrix(-0.25);
  CHECK(n(0, 0) == doctest::Approx(-0.25));
  CHECK(n(1, 1) == doctest::Approx(-0.5));
}

TEST_CASE("builtin vector: frozen scalar oracles") {
  const AdmissibleVector psi = AdmissibleVector::builtin();
  CHECK(psi.Fchi1(1.0).real() ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(psi.Fpsi1(0.5).real() ==
        doctest::Approx(chi1_freq(0.5) / 0.5).epsilon(1e-14));
  CHECK(psi.Fpsi1(0.0) == Complex(0.0));
  CHECK(psi.phi2(0.0) == doctest::Approx(1.0));
  CHECK(psi.psi(0.0, 0.0).real() ==
        doctest::Approx(0.239875543936124).epsilon(1e-9));
  CHECK(psi.norm2() == doctest::Approx(0.0162318123400659).epsilon(1e-9));
}

TEST_CASE("builtin vector: factorized frequency structure") {
  const AdmissibleVector psi = AdmissibleVector::builtin();
  for (double xi1 : {0.4, -1.3})
    for (double xi2 : {-0.9, 0.2}) {
      const Complex expect = psi.Fpsi1(xi1) * psi.phi2(xi2 / xi1);
      CHECK(std::abs(psi.Fpsi(xi1, xi2) - expect) < 1e-14);
    }
  CHECK(psi.Fpsi(0.0, 1.7) == Complex(0.0));
}

TEST_CASE("all low-order moments of psi vanish") {
  const AdmissibleVector psi = AdmissibleVector::builtin();
  for (int m1 = 0; m1 <= 4; ++m1)
    for (int m2 = 0; m1 + m2 <= 4; ++m2)
      CHECK(std::abs(psi.psi_moment(m1, m2)) < 1e-9);
}

TEST_CASE("admissibility constant: frozen oracle, both routes") {
  const AdmissibilityResult r =
      admissibility_constant(AdmissibleVector::builtin());
  CHECK(r.factorized == doctest::Approx(0.0176543334322444).epsilon(1e-10));
  CHECK(r.rel_diff < 1e-6);
}

TEST_CASE("admissibility homogeneity and rejection") {
  const AdmissibleVector psi = AdmissibleVector::builtin();
  const Complex c(2.0, -1.0);
  const AdmissibilityResult r1 = admissibility_constant(psi);
  const AdmissibilityResult r2 = admissibility_constant(psi.scaled(c));
  CHECK(r2.factorized ==
        doctest::Approx(std::norm(c) * r1.factorized).epsilon(1e-10));
  CHECK_THROWS_AS(admissibility_constant(psi.scaled(0.0)), NotAdmissible);
}

TEST_CASE("representation: space and frequency forms agree with the table") {
  const AdmissibleVector psi = AdmissibleVector::builtin();
  const GroupElement g(Vector2d(0.4, -0.7), 0.9, 0.5);
  const AnalyticFunction2D atom = rep_apply(psi, g);
  const Eigen::Matrix2d minv =
      (shear_matrix(g.s) * dilation_matrix(g.a)).inverse();
  const double pref = std::pow(std::abs(g.a), -0.75);
  for (double x : {-0.8, 0.3})
    for (double y : {-0.2, 1.1}) {
      const Vector2d z = minv * (Vector2d(x, y) - g.b);
      CHECK(std::abs(atom.space(x, y) - pref * psi.psi(z.x(), z.y())) < 1e-13);
    }
  // F S_g psi(xi) = |a|^{3/4} e^{-2 pi i b.xi} F psi(A_a tS_s xi)
  const Eigen::Matrix2d mt =
      dilation_matrix(g.a) * shear_matrix(g.s).transpose();
  for (double u : {0.6, -1.2}) {
    const Vector2d xi(u, 0.3);
    const Vector2d w = mt * xi;
    const Complex expect = std::pow(std::abs(g.a), 0.75) *
                           std::exp(-2.0 * kPi * kI * g.b.dot(xi)) *
                           psi.Fpsi(w.x(), w.y());
    CHECK(std::abs(atom.freq(xi.x(), xi.y()) - expect) < 1e-13);
  }
}

TEST_CASE("spectral grid analysis agrees with pointwise evaluation") {
  const AdmissibleVector psi = AdmissibleVector::builtin();
  const AnalyticFunction2D f = gaussian2d();
  ParamGrid grid;
  grid.b1 = Grid1D(-1.0, 1.0, 3);
  grid.b2 = Grid1D(-1.0, 1.0, 3);
  grid.s = Grid1D(-1.0, 1.0, 3);
  grid.a = LogSymmetricGrid(0.3, 1.2, 2, true);
  const CoefficientArray c = analyze_spectral(f, psi, grid);
  for (int is : {0, 2})
    for (int ia : {0, 3})
      for (int i : {0, 1}) {
        const Complex p = analyze_spectral_point(
            f, psi, Vector2d(grid.b1.node(i), grid.b2.node(2)),
            grid.s.node(is), grid.a.nodes()(ia));
        CHECK(std::abs(c.at(i, 2, is, ia) - p) < 1e-10);
      }
}

TEST_CASE("coefficient covariance under translation") {
  const AdmissibleVector psi = AdmissibleVector::builtin();
  const AnalyticFunction2D f = gaussian2d();
  const Vector2d c(0.6, -0.4);
  const Complex lhs = analyze_spectral_point(translate(f, c), psi,
                                             Vector2d(0.9, 0.1) + c, 0.5, 0.7);
  const Complex rhs =
      analyze_spectral_point(f, psi, Vector2d(0.9, 0.1), 0.5, 0.7);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("coefficient seminorms and energy") {
  ParamGrid grid;
  grid.b1 = Grid1D(-2.0, 2.0, 5);
  grid.b2 = Grid1D(-2.0, 2.0, 5);
  grid.s = Grid1D(-1.0, 1.0, 3);
  grid.a = LogSymmetricGrid(0.5, 2.0, 3, true);
  CoefficientArray zero(grid);
  CHECK(coefficient_energy(zero) == 0.0);
  CHECK(coefficient_seminorm(zero, 2, 2, 1, 1) == 0.0);
  CoefficientArray one(grid);
  for (auto& s : one.slabs) s.setConstant(1.0);
  CHECK(coefficient_energy(one) > 0.0);
  // seminorms grow with the weight orders
  CHECK(coefficient_seminorm(one, 1, 0, 0, 0) >=
        coefficient_seminorm(one, 0, 0, 0, 0));
  CHECK(coefficient_seminorm(one, 0, 0, 0, 2) >=
        coefficient_seminorm(one, 0, 0, 0, 1));
}

TEST_CASE("refined grids are strictly larger and wider") {
  const ParamGrid g0 = default_param_grid();
  const ParamGrid g1 = refined_param_grid(1);
  const ParamGrid g2 = refined_param_grid(2);
  CHECK(g1.total_nodes() > g0.total_nodes());
  CHECK(g2.total_nodes() > g1.total_nodes());
  CHECK(g1.s.max > g0.s.max);
  CHECK(g2.a.a_max > g1.a.a_max);
  CHECK(g2.a.a_min < g1.a.a_min);
}

TEST_CASE("ridgelet grid transform agrees with pointwise evaluation") {
  const AnalyticFunction2D f = gaussian2d();
  const AnalyticFunction1D chi1 = builtin_chi1();
  const Grid1D theta(-0.8, 0.8, 5);
  const Grid1D b(-1.0, 1.0, 5);
  const LogSymmetricGrid a(0.4, 1.5, 3, false);
  const auto r = ridgelet_transform(f, chi1, theta, b, a);
  const VectorXd an = a.nodes();
  for (int it : {0, 2, 4})
    for (int ib : {1, 3})
      for (int ia : {0, 2}) {
        const Complex p =
            ridgelet_point(f, chi1, theta.node(it), b.node(ib), an(ia));
        CHECK(std::abs(r[it](ib, ia) - p) < 1e-10);
      }
}

TEST_CASE("ridgelet transform rejects signed scale grids") {
  CHECK_THROWS_AS(
      ridgelet_transform(gaussian2d(), builtin_chi1(), Grid1D(-0.5, 0.5, 3),
                         Grid1D(-1.0, 1.0, 3), LogSymmetricGrid(0.5, 1.0, 2, true)),
      InvalidArgument);
}

TEST_CASE("shearlet coefficients factor through the ridgelet transform") {
  const AnalyticFunction2D f = gaussian2d();
  const AdmissibleVector psi = AdmissibleVector::builtin();
  const GroupElement g(Vector2d(0.5, -0.3), 0.4, 0.6);
  const double rel = ridgelet_shearlet_point_check(f, psi, g);
  CHECK(rel < 1e-3);
}
