#include "lizshear/distributions.hpp"

#include "lizshear/fourier.hpp"
#include "lizshear/interp.hpp"
#include "lizshear/parallel.hpp"
#include "lizshear/quadrature.hpp"

namespace lizshear {

namespace {

using Coeffs = Eigen::Matrix<double, 5, 5>;

double poly_eval(const Coeffs& c, double x, double y) {
  // Horner in x1 with inner Horner in x2
  double acc = 0.0;
  for (int m1 = 4; m1 >= 0; --m1) {
    double inner = 0.0;
    for (int m2 = 4; m2 >= 0; --m2) inner = inner * y + c(m1, m2);
    acc = acc * x + inner;
  }
  return acc;
}

/// Product of two polynomials whose combined total degree stays <= 4.
Coeffs poly_mul(const Coeffs& a, const Coeffs& b) {
  Coeffs out = Coeffs::Zero();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (a(i, j) == 0.0) continue;
      for (int k = 0; k + i < 5; ++k)
        for (int l = 0; l + j < 5; ++l) out(i + k, j + l) += a(i, j) * b(k, l);
    }
  return out;
}

/// Coefficients of p(b + M y) as a polynomial in y, for p of degree <= 4.
Coeffs poly_compose_affine(const Coeffs& c, const Vector2d& b,
                           const Eigen::Matrix2d& m) {
  Coeffs lin1 = Coeffs::Zero();  // b1 + m00 y1 + m01 y2
  lin1(0, 0) = b.x();
  lin1(1, 0) = m(0, 0);
  lin1(0, 1) = m(0, 1);
  Coeffs lin2 = Coeffs::Zero();  // b2 + m10 y1 + m11 y2
  lin2(0, 0) = b.y();
  lin2(1, 0) = m(1, 0);
  lin2(0, 1) = m(1, 1);
  Coeffs out = Coeffs::Zero();
  for (int m1 = 0; m1 < 5; ++m1) {
    for (int m2 = 0; m2 + m1 < 5; ++m2) {
      if (c(m1, m2) == 0.0) continue;
      Coeffs term = Coeffs::Zero();
      term(0, 0) = c(m1, m2);
      for (int k = 0; k < m1; ++k) term = poly_mul(term, lin1);
      for (int k = 0; k < m2; ++k) term = poly_mul(term, lin2);
      out += term;
    }
  }
  return out;
}

/// 4th-order central-difference stencil for derivative `order` (0..2).
void fd_weights(int order, double h, double w[5]) {
  switch (order) {
    case 0:
      w[0] = w[1] = w[3] = w[4] = 0.0;
      w[2] = 1.0;
      return;
    case 1:
      w[0] = 1.0 / (12 * h);
      w[1] = -8.0 / (12 * h);
      w[2] = 0.0;
      w[3] = 8.0 / (12 * h);
      w[4] = -1.0 / (12 * h);
      return;
    case 2:
      w[0] = -1.0 / (12 * h * h);
      w[1] = 16.0 / (12 * h * h);
      w[2] = -30.0 / (12 * h * h);
      w[3] = 16.0 / (12 * h * h);
      w[4] = -1.0 / (12 * h * h);
      return;
    default:
      throw CapabilityError("pair: derivative order above 2 per axis");
  }
}

Grid1D pairing_grid(double radius, double h) {
  const int n = 2 * static_cast<int>(std::ceil(radius / h)) + 1;
  return Grid1D(-radius, radius, n);
}

Complex quad2d_kahan(const Grid1D& g,
                     const std::function<Complex(double, double)>& fn) {
  const double h = g.spacing();
  KahanSum<long double> re, im;
  for (int i = 0; i < g.n; ++i) {
    const double wx = (i == 0 || i == g.n - 1) ? 0.5 * h : h;
    KahanSum<long double> rre, rim;
    for (int j = 0; j < g.n; ++j) {
      const double wy = (j == 0 || j == g.n - 1) ? 0.5 * h : h;
      const Complex v = fn(g.node(i), g.node(j));
      rre.add(wy * v.real());
      rim.add(wy * v.imag());
    }
    re.add(wx * rre.value());
    im.add(wx * rim.value());
  }
  return {static_cast<double>(re.value()), static_cast<double>(im.value())};
}

}  // namespace

Complex pair(const LizorkinDistribution& d, const AnalyticFunction2D& phi,
             const PairSpec& spec) {
  if (!phi.has_space())
    throw CapabilityError("pair: test function needs a space evaluator");
  return std::visit(
      [&](const auto& v) -> Complex {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Dirac>) {
          return phi.space(v.x0.x(), v.x0.y());
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          const Grid1D g = pairing_grid(phi.space_radius, spec.h);
          return quad2d_kahan(g, [&](double x, double y) {
            return poly_eval(v.coeffs, x, y) * phi.space(x, y);
          });
        } else if constexpr (std::is_same_v<T, LineDelta>) {
          const double T_line = phi.space_radius;
          const Grid1D g = pairing_grid(T_line, spec.line_h);
          return quad_kahan(g, [&](double t) {
            const double y = v.v0 * t + v.c;
            if (std::abs(y) > phi.space_radius) return Complex(0.0, 0.0);
            return phi.space(t, y);
          });
        } else if constexpr (std::is_same_v<T, SampledFunctionD>) {
          if (!v.f.has_space())
            throw CapabilityError("pair: sampled-function variant needs space data");
          const double R = std::min(v.f.space_radius, phi.space_radius);
          const Grid1D g = pairing_grid(R, spec.h);
          return quad2d_kahan(g, [&](double x, double y) {
            return v.f.space(x, y) * phi.space(x, y);
          });
        } else {  // DerivativeOfFunction
          if (v.a1 < 0 || v.a1 > 2 || v.a2 < 0 || v.a2 > 2)
            throw CapabilityError("pair: derivative multi-index capped at (2,2)");
          if (!v.g.has_space())
            throw CapabilityError("pair: derivative variant needs space data");
          double w1[5], w2[5];
          fd_weights(v.a1, spec.fd_step, w1);
          fd_weights(v.a2, spec.fd_step, w2);
          const double R = std::min(v.g.space_radius, phi.space_radius - 3.0);
          const Grid1D g = pairing_grid(R, spec.h);
          const double sign = ((v.a1 + v.a2) % 2 == 0) ? 1.0 : -1.0;
          return sign * quad2d_kahan(g, [&](double x, double y) {
            Complex acc = 0.0;
            for (int i = -2; i <= 2; ++i) {
              if (w1[i + 2] == 0.0) continue;
              Complex inner = 0.0;
              for (int j = -2; j <= 2; ++j) {
                if (w2[j + 2] == 0.0) continue;
                inner += w2[j + 2] *
                         phi.space(x + i * spec.fd_step, y + j * spec.fd_step);
              }
              acc += w1[i + 2] * inner;
            }
            return v.g.space(x, y) * acc;
          });
        }
      },
      d);
}

double SlowGrowthFunction4D::growth_ratio(const ParamGrid& grid) const {
  const VectorXd an = grid.a.nodes();
  const VectorXd sn = grid.s.nodes();
  double worst = 0.0;
  for (int is = 0; is < grid.s.n; ++is)
    for (int ia = 0; ia < grid.a.size(); ++ia)
      for (int i = 0; i < grid.b1.n; ++i)
        for (int j = 0; j < grid.b2.n; ++j) {
          const double b1 = grid.b1.node(i);
          const double b2 = grid.b2.node(j);
          const double bnorm2 = 1.0 + b1 * b1 + b2 * b2;
          const double aa = std::abs(an(ia));
          const double bound =
              bound_constant * std::pow(bnorm2, 0.5 * nu1) *
              std::pow(1.0 + sn(is) * sn(is), 0.5 * nu2) *
              (std::pow(aa, nu3) + std::pow(aa, -nu3));
          worst = std::max(worst,
                           std::abs(eval(b1, b2, sn(is), an(ia))) / bound);
        }
  return worst;
}

SlowGrowthFunction4D gaussian_bump_4d() {
  SlowGrowthFunction4D f;
  f.eval = [](double b1, double b2, double s, double a) -> Complex {
    const double la = std::log(std::abs(a));
    return std::exp(-kPi * (b1 * b1 + b2 * b2) / 4.0) *
           std::exp(-kPi * s * s / 2.0) * std::exp(-2.0 * la * la);
  };
  f.nu1 = f.nu2 = f.nu3 = 0.0;
  f.bound_constant = 2.0;  // the (|a|^0 + |a|^0) bound is 2
  return f;
}

namespace {

/// Dense space table of the inverse transform of a sampled spectrum.
AnalyticFunction2D field_from_spectrum(const SampledField2D& F,
                                       const FieldSpec& spec) {
  const Grid1D xg(-spec.x_max, spec.x_max, spec.n_x);
  const MatrixXcd Ey = phase_matrix(xg.nodes(), F.grid_y, +1.0);
  const VectorXcd w1 = F.grid_x.trapezoid_weights().cast<Complex>();
  const VectorXcd w2 = F.grid_y.trapezoid_weights().cast<Complex>();
  const MatrixXcd weighted = w1.asDiagonal() * F.values * w2.asDiagonal();
  // half transform in blocks (parallel), then the x side
  auto half = std::make_shared<MatrixXcd>(F.grid_x.n, xg.n);
  {
    const int block = 256;
    const int nb = (xg.n + block - 1) / block;
    parallel_for(nb, spec.threads, [&](int bi) {
      const int c0 = bi * block;
      const int nc = std::min(block, xg.n - c0);
      half->middleCols(c0, nc) =
          weighted * Ey.middleRows(c0, nc).transpose();
    });
  }
  auto table = std::make_shared<MatrixXcd>(xg.n, xg.n);
  {
    const MatrixXcd Ex = phase_matrix(xg.nodes(), F.grid_x, +1.0);
    const int block = 256;
    const int nb = (xg.n + block - 1) / block;
    parallel_for(nb, spec.threads, [&](int bi) {
      const int r0 = bi * block;
      const int nr = std::min(block, xg.n - r0);
      table->middleRows(r0, nr) = Ex.middleRows(r0, nr) * (*half);
    });
  }
  AnalyticFunction2D out;
  auto grid = std::make_shared<Grid1D>(xg);
  out.space = [grid, table](double x, double y) -> Complex {
    if (!grid->contains(x) || !grid->contains(y)) return 0.0;
    return interp_bicubic(*grid, *grid, *table, x, y);
  };
  auto fgx = std::make_shared<Grid1D>(F.grid_x);
  auto fgy = std::make_shared<Grid1D>(F.grid_y);
  auto fv = std::make_shared<MatrixXcd>(F.values);
  out.freq = [fgx, fgy, fv](double u, double v) -> Complex {
    if (!fgx->contains(u) || !fgy->contains(v)) return 0.0;
    return interp_bicubic(*fgx, *fgy, *fv, u, v);
  };
  out.label = "synthesized_field";
  out.space_radius = spec.x_max;
  out.freq_radius = spec.xi_max;
  return out;
}

}  // namespace

AnalyticFunction2D synthesized_field(const CoefficientArray& Phi,
                                     const AdmissibleVector& psi,
                                     const FieldSpec& spec) {
  const Grid1D xi(-spec.xi_max, spec.xi_max, spec.n_xi);
  const SampledField2D F = synthesize_spectral(Phi, psi.conjugated(), xi, xi,
                                               SynthesizeSpec{spec.threads});
  return field_from_spectrum(F, spec);
}

Complex distributional_shearlet(const LizorkinDistribution& d,
                                const CoefficientArray& Phi,
                                const AdmissibleVector& psi,
                                const FieldSpec& spec) {
  const Grid1D xi(-spec.xi_max, spec.xi_max, spec.n_xi);
  const SampledField2D F = synthesize_spectral(Phi, psi.conjugated(), xi, xi,
                                               SynthesizeSpec{spec.threads});
  if (const Dirac* p = std::get_if<Dirac>(&d)) {
    // exact single-point inverse transform of the synthesized spectrum
    const VectorXd wx = F.grid_x.trapezoid_weights();
    const VectorXd wy = F.grid_y.trapezoid_weights();
    KahanSum<long double> re, im;
    for (int i = 0; i < F.grid_x.n; ++i) {
      const Complex ex =
          std::exp(2.0 * kPi * kI * F.grid_x.node(i) * p->x0.x());
      Complex row = 0.0;
      for (int j = 0; j < F.grid_y.n; ++j)
        row += wy(j) * F.values(i, j) *
               std::exp(2.0 * kPi * kI * F.grid_y.node(j) * p->x0.y());
      const Complex term = wx(i) * ex * row;
      re.add(term.real());
      im.add(term.imag());
    }
    return {static_cast<double>(re.value()), static_cast<double>(im.value())};
  }
  const AnalyticFunction2D field = field_from_spectrum(F, spec);
  PairSpec ps;
  // align polynomial pairing nodes with the table (interpolation-free)
  ps.h = field.space_radius * 2.0 / (spec.n_x - 1);
  return pair(d, field, ps);
}

Complex desingularized_shearlet(const LizorkinDistribution& d,
                                const AdmissibleVector& psi,
                                const GroupElement& g, const PairSpec& spec) {
  if (const Polynomial* p = std::get_if<Polynomial>(&d)) {
    // exact change of variables x = b + S_s A_a y against psi's moments
    const Eigen::Matrix2d m = shear_matrix(g.s) * dilation_matrix(g.a);
    const Coeffs shifted = poly_compose_affine(p->coeffs, g.b, m);
    const AdmissibleVector conj_psi = psi.conjugated();
    Complex acc = 0.0;
    for (int m1 = 0; m1 < 5; ++m1)
      for (int m2 = 0; m2 + m1 < 5; ++m2)
        if (shifted(m1, m2) != 0.0)
          acc += shifted(m1, m2) * conj_psi.psi_moment(m1, m2);
    return std::pow(std::abs(g.a), 0.75) * acc;
  }
  return pair(d, rep_apply(psi.conjugated(), g), spec);
}

ConsistencyResult consistency_check(const LizorkinDistribution& d,
                                    const CoefficientArray& Phi,
                                    const AdmissibleVector& psi,
                                    const FieldSpec& spec) {
  ConsistencyResult r;
  r.lhs = distributional_shearlet(d, Phi, psi, spec);

  const ParamGrid& grid = Phi.grid;
  const VectorXd ws = grid.s.trapezoid_weights();
  const VectorXd wa = grid.a.weights();
  const VectorXd an = grid.a.nodes();
  const VectorXd sn = grid.s.nodes();
  const VectorXd wb1 = grid.b1.trapezoid_weights();
  const VectorXd wb2 = grid.b2.trapezoid_weights();
  std::vector<Complex> slab_sums(grid.slab_count());
  parallel_for(grid.slab_count(), spec.threads, [&](int idx) {
    const int is = idx / grid.a.size();
    const int ia = idx % grid.a.size();
    const double haar = ws(is) * wa(ia) / std::pow(std::abs(an(ia)), 3);
    Complex acc = 0.0;
    for (int i = 0; i < grid.b1.n; ++i)
      for (int j = 0; j < grid.b2.n; ++j) {
        const Complex phi_val = Phi.slab(is, ia)(i, j);
        if (phi_val == Complex(0.0, 0.0)) continue;
        const GroupElement g(Vector2d(grid.b1.node(i), grid.b2.node(j)),
                             sn(is), an(ia));
        acc += wb1(i) * wb2(j) * phi_val * desingularized_shearlet(d, psi, g);
      }
    slab_sums[idx] = haar * acc;
  });
  KahanSum<long double> re, im;
  for (const Complex& v : slab_sums) {
    re.add(v.real());
    im.add(v.imag());
  }
  r.rhs = {static_cast<double>(re.value()), static_cast<double>(im.value())};

  const double denom = std::max(std::abs(r.lhs), std::abs(r.rhs));
  if (denom <= 1e-6) {
    r.degenerate = true;
    r.discrepancy = 0.0;
  } else {
    r.discrepancy = std::abs(r.lhs - r.rhs) / denom;
  }
  return r;
}

}  // namespace lizshear
