#include "lizshear/synthesis.hpp"

#include "lizshear/fourier.hpp"
#include "lizshear/parallel.hpp"
#include "lizshear/quadrature.hpp"

namespace lizshear {

namespace {

/// Per-slab Haar factor w_s w_a |a|^{-3}.
VectorXd slab_haar(const ParamGrid& g) {
  const VectorXd ws = g.s.trapezoid_weights();
  const VectorXd wa = g.a.weights();
  const VectorXd an = g.a.nodes();
  VectorXd out(g.slab_count());
  for (int is = 0; is < g.s.n; ++is)
    for (int ia = 0; ia < g.a.size(); ++ia)
      out(is * g.a.size() + ia) =
          ws(is) * wa(ia) / std::pow(std::abs(an(ia)), 3);
  return out;
}

}  // namespace

SampledField2D synthesize(const CoefficientArray& Phi,
                          const AdmissibleVector& psi, const Grid1D& x_grid,
                          const Grid1D& y_grid, const SynthesizeSpec& spec) {
  const ParamGrid& g = Phi.grid;
  const VectorXd haar = slab_haar(g);
  const VectorXd wb1 = g.b1.trapezoid_weights();
  const VectorXd wb2 = g.b2.trapezoid_weights();
  const VectorXd an = g.a.nodes();
  const VectorXd sn = g.s.nodes();

  // per-slab geometry, precomputed once
  struct SlabGeom {
    Eigen::Matrix2d minv;
    double pref;
  };
  std::vector<SlabGeom> geom(g.slab_count());
  for (int idx = 0; idx < g.slab_count(); ++idx) {
    const double a = an(idx % g.a.size());
    const double s = sn(idx / g.a.size());
    geom[idx].minv = (shear_matrix(s) * dilation_matrix(a)).inverse();
    geom[idx].pref = std::pow(std::abs(a), -0.75) * haar(idx);
  }

  MatrixXcd out = MatrixXcd::Zero(x_grid.n, y_grid.n);
  // parallel over x rows: each point reduces over (slab, b) in fixed order
  parallel_for(x_grid.n, spec.threads, [&](int ix) {
    const double x = x_grid.node(ix);
    for (int iy = 0; iy < y_grid.n; ++iy) {
      const double y = y_grid.node(iy);
      Complex acc = 0.0;
      for (int idx = 0; idx < g.slab_count(); ++idx) {
        const SlabGeom& sg = geom[idx];
        const MatrixXcd& slab = Phi.slabs[idx];
        const double yx1 = sg.minv(0, 0) * x + sg.minv(0, 1) * y;
        const double yx2 = sg.minv(1, 0) * x + sg.minv(1, 1) * y;
        Complex slab_acc = 0.0;
        for (int i = 0; i < g.b1.n; ++i) {
          const double c1 = sg.minv(0, 0) * g.b1.node(i);
          for (int j = 0; j < g.b2.n; ++j) {
            const Complex p = slab(i, j);
            if (p == Complex(0.0, 0.0)) continue;
            const double c2v =
                sg.minv(1, 0) * g.b1.node(i) + sg.minv(1, 1) * g.b2.node(j);
            const double c1v = c1 + sg.minv(0, 1) * g.b2.node(j);
            const Complex atom = psi.psi(yx1 - c1v, yx2 - c2v);
            if (atom != Complex(0.0, 0.0))
              slab_acc += wb1(i) * wb2(j) * p * atom;
          }
        }
        acc += sg.pref * slab_acc;
      }
      out(ix, iy) = acc;
    }
  });
  return {x_grid, y_grid, std::move(out)};
}

SampledField2D synthesize_spectral(const CoefficientArray& Phi,
                                   const AdmissibleVector& psi,
                                   const Grid1D& xi1_grid,
                                   const Grid1D& xi2_grid,
                                   const SynthesizeSpec& spec) {
  const ParamGrid& g = Phi.grid;
  const VectorXd haar = slab_haar(g);
  const VectorXd an = g.a.nodes();
  const VectorXd sn = g.s.nodes();
  const VectorXd wb1 = g.b1.trapezoid_weights();
  const VectorXd wb2 = g.b2.trapezoid_weights();
  const MatrixXcd E1 = phase_matrix(xi1_grid.nodes(), g.b1, -1.0);
  const MatrixXcd E2 = phase_matrix(xi2_grid.nodes(), g.b2, -1.0);

  // stage A: per-slab half transform P = (W .* slab) * E2^T  (nb1 x nxi2)
  std::vector<MatrixXcd> P(g.slab_count());
  parallel_for(g.slab_count(), spec.threads, [&](int idx) {
    const MatrixXcd weighted =
        wb1.cast<Complex>().asDiagonal() * Phi.slabs[idx] *
        wb2.cast<Complex>().asDiagonal();
    P[idx] = weighted * E2.transpose();
  });

  // stage B: rows of the output; deterministic slab order per row
  MatrixXcd out = MatrixXcd::Zero(xi1_grid.n, xi2_grid.n);
  parallel_for(xi1_grid.n, spec.threads, [&](int i1) {
    const double xi1 = xi1_grid.node(i1);
    if (xi1 == 0.0) return;  // assigned 0: the S_0 factor vanishes there
    Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(xi2_grid.n);
    for (int idx = 0; idx < g.slab_count(); ++idx) {
      const double a = an(idx % g.a.size());
      const double s = sn(idx / g.a.size());
      const Complex fp1 = psi.Fpsi1(a * xi1);
      if (std::abs(fp1) < 1e-18) continue;
      const double pref = haar(idx) * std::pow(std::abs(a), 0.75);
      const double inv_root_a = 1.0 / std::sqrt(std::abs(a));
      const Eigen::RowVectorXcd fb = E1.row(i1) * P[idx];
      for (int j = 0; j < xi2_grid.n; ++j) {
        const double ratio = xi2_grid.node(j) / xi1;
        const double win = psi.phi2((ratio - s) * inv_root_a);
        if (win != 0.0) row(j) += pref * fp1 * win * fb(j);
      }
    }
    out.row(i1) = row;
  });
  return {xi1_grid, xi2_grid, std::move(out)};
}

bool synthesis_boundary_ok(const CoefficientArray& Phi) {
  const ParamGrid& g = Phi.grid;
  double interior = 0.0, boundary = 0.0;
  for (const MatrixXcd& slab : Phi.slabs) {
    interior = std::max(interior, slab.cwiseAbs().maxCoeff());
    boundary = std::max({boundary, slab.row(0).cwiseAbs().maxCoeff(),
                         slab.row(g.b1.n - 1).cwiseAbs().maxCoeff(),
                         slab.col(0).cwiseAbs().maxCoeff(),
                         slab.col(g.b2.n - 1).cwiseAbs().maxCoeff()});
  }
  return interior == 0.0 || boundary <= 1e-3 * interior;
}

SynthesisResult reconstruct(const AnalyticFunction2D& f,
                            const AdmissibleVector& psi, const ParamGrid& grid,
                            const ReconstructSpec& spec) {
  AnalyzeSpec aspec;
  aspec.threads = spec.threads;
  const CoefficientArray Phi = analyze_spectral(f, psi, grid, aspec);

  const double nyquist =
      0.5 / std::max(grid.b1.spacing(), grid.b2.spacing());
  const double xi_max = std::min(spec.xi_max, nyquist);
  const int n_xi =
      2 * static_cast<int>(std::round(xi_max / spec.xi_step)) + 1;
  const Grid1D xi(-xi_max, xi_max, n_xi);
  SampledField2D F = synthesize_spectral(Phi, psi, xi, xi,
                                         SynthesizeSpec{spec.threads});
  const double C = admissibility_constant(psi).factorized;
  F.values /= C;
  // Anti-alias roll-off near the b-sampling Nyquist edge.  The discrete
  // b-transform periodizes the slab spectra, so bins near the band edge hold
  // the true value plus its mirrored alias copy (a factor ~2 at the edge for
  // real fields).  A raised-cosine taper from 0.8*Nyquist down to gain 0.6 at
  // the edge trades a small in-band attenuation for that alias energy.
  auto taper = [&](double u) {
    const double q = 0.8 * nyquist;
    if (u <= q) return 1.0;
    const double t = (u - q) / (nyquist - q);
    return 1.0 - 0.4 * 0.5 * (1.0 - std::cos(kPi * std::min(t, 1.0)));
  };
  for (int i = 0; i < xi.n; ++i)
    for (int j = 0; j < xi.n; ++j)
      F.values(i, j) *= taper(std::abs(xi.node(i))) *
                        taper(std::abs(xi.node(j)));
  const MatrixXcd rec =
      inverse_fourier2d(F, spec.x_grid.nodes(), spec.x_grid.nodes());

  const VectorXd w = spec.x_grid.trapezoid_weights();
  long double num = 0.0L, den = 0.0L;
  MatrixXcd field(spec.x_grid.n, spec.x_grid.n);
  for (int i = 0; i < spec.x_grid.n; ++i) {
    for (int j = 0; j < spec.x_grid.n; ++j) {
      const Complex truth = f.space
          ? f.space(spec.x_grid.node(i), spec.x_grid.node(j))
          : Complex(0.0, 0.0);
      field(i, j) = rec(i, j);
      num += w(i) * w(j) * std::norm(rec(i, j) - truth);
      den += w(i) * w(j) * std::norm(truth);
    }
  }
  SynthesisResult result{{spec.x_grid, spec.x_grid, std::move(field)}, 0.0,
                         false};
  if (den <= 1e-24) {
    result.degenerate = true;
    result.residual = 0.0;
  } else {
    result.residual = std::sqrt(static_cast<double>(num / den));
  }
  return result;
}

CoefficientArray sample_coefficients(
    const ParamGrid& grid,
    const std::function<Complex(double, double, double, double)>& fn) {
  CoefficientArray out(grid);
  const VectorXd an = grid.a.nodes();
  const VectorXd sn = grid.s.nodes();
  for (int is = 0; is < grid.s.n; ++is)
    for (int ia = 0; ia < grid.a.size(); ++ia) {
      MatrixXcd& slab = out.slab(is, ia);
      for (int i = 0; i < grid.b1.n; ++i)
        for (int j = 0; j < grid.b2.n; ++j)
          slab(i, j) = fn(grid.b1.node(i), grid.b2.node(j), sn(is), an(ia));
    }
  return out;
}

DualityResult duality_check(const AnalyticFunction2D& f,
                            const CoefficientArray& Phi,
                            const AdmissibleVector& psi,
                            const DualitySpec& spec) {
  if (!f.has_freq())
    throw CapabilityError("duality_check: f needs a frequency evaluator");
  // left side in Plancherel form: int F f(-xi) F[S_{conj(psi)}^t Phi](xi) dxi
  const Grid1D& xi = spec.xi_grid;
  const SampledField2D FG = synthesize_spectral(Phi, psi.conjugated(), xi, xi,
                                                SynthesizeSpec{spec.threads});
  const VectorXd w = xi.trapezoid_weights();
  KahanSum<long double> lre, lim;
  for (int i = 0; i < xi.n; ++i)
    for (int j = 0; j < xi.n; ++j) {
      const Complex term = w(i) * w(j) * FG.values(i, j) *
                           f.freq(-xi.node(i), -xi.node(j));
      lre.add(term.real());
      lim.add(term.imag());
    }
  const Complex lhs(static_cast<double>(lre.value()),
                    static_cast<double>(lim.value()));

  // right side: Haar-weighted bilinear pairing of coefficients
  AnalyzeSpec aspec;
  aspec.threads = spec.threads;
  const CoefficientArray c = analyze_spectral(f, psi, Phi.grid, aspec);
  const VectorXd haar = slab_haar(Phi.grid);
  const VectorXd wb1 = Phi.grid.b1.trapezoid_weights();
  const VectorXd wb2 = Phi.grid.b2.trapezoid_weights();
  KahanSum<long double> rre, rim;
  for (int idx = 0; idx < Phi.grid.slab_count(); ++idx) {
    const MatrixXcd prod = c.slabs[idx].cwiseProduct(Phi.slabs[idx]);
    const Complex term =
        haar(idx) *
        (wb1.cast<Complex>().transpose() * prod * wb2.cast<Complex>())(0);
    rre.add(term.real());
    rim.add(term.imag());
  }
  const Complex rhs(static_cast<double>(rre.value()),
                    static_cast<double>(rim.value()));

  DualityResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  const double denom = std::max(std::abs(lhs), std::abs(rhs));
  if (denom < 1e-12) {
    r.degenerate = true;
    r.discrepancy = 0.0;
  } else {
    r.discrepancy = std::abs(lhs - rhs) / denom;
  }
  return r;
}

}  // namespace lizshear
