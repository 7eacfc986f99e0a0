#include "lizshear/shearlet.hpp"

#include "lizshear/fourier.hpp"
#include "lizshear/interp.hpp"
#include "lizshear/parallel.hpp"
#include "lizshear/quadrature.hpp"
#include "lizshear/testfn.hpp"
#include "lizshear/wavelet.hpp"

#include <mutex>

namespace lizshear {

// ===========================================================================
// PsiSpaceTable: precomputed space-side data for one (chi_1, phi_2) profile.
// ===========================================================================

struct PsiSpaceTable {
  std::function<double(double)> fchi1;  // real even F chi_1
  std::function<double(double)> phi2;   // real even window
  double tau_radius = 6.0;
  double u_radius = 6.0;
  std::string label;

  // Q = F^{-1} phi_2 on a dense 1D grid.
  Grid1D q_grid{-8.0, 8.0, 8001};
  VectorXd q_values;

  // psi(x1, x2): dense core plus coarse far zone (psi decays only
  // stretched-exponentially along x1, like chi_1).
  Grid1D core_grid{-16.0, 16.0, 3201};
  MatrixXd core_values;
  Grid1D far_grid{-48.0, 48.0, 1201};
  MatrixXd far_values;

  double norm2 = 0.0;
  Eigen::Matrix<double, 5, 5> moments;  // mu_{m1,m2}, m1+m2 <= 4 meaningful

  PsiSpaceTable(std::function<double(double)> fchi1_,
                std::function<double(double)> phi2_, double tau_radius_,
                double u_radius_, std::string label_)
      : fchi1(std::move(fchi1_)),
        phi2(std::move(phi2_)),
        tau_radius(tau_radius_),
        u_radius(u_radius_),
        label(std::move(label_)) {
    build_q();
    build_zone(core_grid, core_values);
    build_zone(far_grid, far_values);
    build_norm();
    build_moments();
  }

  double q_eval(double y) const {
    if (!q_grid.contains(y)) return 0.0;
    return interp_cubic(q_grid, q_values, y);
  }

  double psi_eval(double x1, double x2) const {
    if (core_grid.contains(x1) && core_grid.contains(x2))
      return interp_bicubic(core_grid, core_grid, core_values, x1, x2);
    if (far_grid.contains(x1) && far_grid.contains(x2))
      return interp_bicubic(far_grid, far_grid, far_values, x1, x2);
    return 0.0;
  }

 private:
  void build_q() {
    AnalyticFunction1D w;
    w.freq = [this](double u) -> Complex { return phi2(u); };
    const int n = std::max(2401, static_cast<int>(u_radius * 400) | 1);
    const Grid1D u(-u_radius, u_radius, n);
    q_values = inverse_fourier_stream(w, q_grid.nodes(), u).real();
  }

  // psi(x1, x2) = 2 int_0^inf F chi_1(tau) Q(tau x2) cos(2 pi tau x1) d tau,
  // assembled zone-by-zone as a cosине matrix times a weight matrix.
  void build_zone(const Grid1D& g, MatrixXd& out) {
    const int n_tau = 1201;
    const Grid1D tau(0.0, tau_radius, n_tau);
    const VectorXd tn = tau.nodes();
    VectorXd tw = tau.trapezoid_weights() * 2.0;  // even integrand, half axis
    MatrixXd C(g.n, n_tau);
    for (int i = 0; i < g.n; ++i) {
      const double x1 = g.node(i);
      for (int j = 0; j < n_tau; ++j) C(i, j) = std::cos(2.0 * kPi * tn(j) * x1);
    }
    VectorXd fw(n_tau);
    for (int j = 0; j < n_tau; ++j) fw(j) = fchi1(tn(j)) * tw(j);
    out.resize(g.n, g.n);
    const int block = 128;
    const int n_blocks = (g.n + block - 1) / block;
    parallel_for(n_blocks, 0, [&](int bi) {
      const int c0 = bi * block;
      const int nc = std::min(block, g.n - c0);
      MatrixXd M(n_tau, nc);
      for (int c = 0; c < nc; ++c) {
        const double x2 = g.node(c0 + c);
        for (int j = 0; j < n_tau; ++j) M(j, c) = fw(j) * q_eval(tn(j) * x2);
      }
      out.middleCols(c0, nc) = C * M;
    });
  }

  void build_norm() {
    // ||psi||^2 = int |F psi_1|^2 d tau * int phi_2^2 du (unit-Jacobian
    // change of variables xi_2 = u xi_1 in the 2D Plancherel integral).
    const Grid1D tau(-tau_radius, tau_radius,
                     2 * static_cast<int>(tau_radius * 500) + 1);
    KahanSum<long double> i1;
    const double ht = tau.spacing();
    for (int i = 0; i < tau.n; ++i) {
      const double t = tau.node(i);
      if (t == 0.0) continue;
      const double w = (i == 0 || i == tau.n - 1) ? 0.5 * ht : ht;
      const double p = fchi1(t) / std::abs(t);
      i1.add(w * p * p);
    }
    const Grid1D u(-u_radius, u_radius, 2 * static_cast<int>(u_radius * 500) + 1);
    KahanSum<long double> i2;
    const double hu = u.spacing();
    for (int i = 0; i < u.n; ++i) {
      const double w = (i == 0 || i == u.n - 1) ? 0.5 * hu : hu;
      const double p = phi2(u.node(i));
      i2.add(w * p * p);
    }
    norm2 = static_cast<double>(i1.value() * i2.value());
  }

  // mu_{m1,m2}(psi).  The x2 integral reduces exactly under y = tau x2:
  //   int x2^{m2} Q(tau x2) dx2 = kappa_{m2} tau^{-m2} / |tau|,
  // kappa_{m2} = int y^{m2} Q(y) dy, leaving a 1D row-integral table
  //   R_{m2}(x1) = kappa_{m2} int F chi_1(tau) tau^{-m2} |tau|^{-1}
  //                e^{2 pi i tau x1} d tau
  // whose x1 moments are computed by long compensated quadrature.
  void build_moments() {
    moments.setZero();
    const double hq = q_grid.spacing();
    for (int m2 = 0; m2 <= 4; ++m2) {
      KahanSum<long double> kap;
      for (int i = 0; i < q_grid.n; ++i) {
        const double w = (i == 0 || i == q_grid.n - 1) ? 0.5 * hq : hq;
        kap.add(w * std::pow(q_grid.node(i), m2) * q_values(i));
      }
      const double kappa = static_cast<double>(kap.value());
      if (std::abs(kappa) < 1e-13) continue;  // odd-m2 rows vanish exactly
      AnalyticFunction1D row;
      row.freq = [this, m2, kappa](double t) -> Complex {
        if (t == 0.0) return 0.0;
        return kappa * fchi1(t) * std::pow(t, -m2) / std::abs(t);
      };
      const Grid1D x1(-48.0, 48.0, 19201);
      const Grid1D tau(-tau_radius, tau_radius, 3001);
      const VectorXd R = inverse_fourier_stream(row, x1.nodes(), tau).real();
      const double hx = x1.spacing();
      for (int m1 = 0; m1 + m2 <= 4; ++m1) {
        KahanSum<long double> acc;
        for (int i = 0; i < x1.n; ++i) {
          const double w = (i == 0 || i == x1.n - 1) ? 0.5 * hx : hx;
          acc.add(w * std::pow(x1.node(i), m1) * R(i));
        }
        moments(m1, m2) = static_cast<double>(acc.value());
      }
    }
  }
};

namespace {

const std::shared_ptr<const PsiSpaceTable>& builtin_table() {
  static const std::shared_ptr<const PsiSpaceTable> table =
      std::make_shared<const PsiSpaceTable>(
          [](double t) { return chi1_freq(t); },
          [](double u) { return std::exp(-kPi * u * u); }, 6.0, 6.0, "builtin");
  return table;
}

}  // namespace

// ===========================================================================
// AdmissibleVector.
// ===========================================================================

AdmissibleVector AdmissibleVector::builtin(Complex scale) {
  AdmissibleVector v;
  v.table_ = builtin_table();
  v.scale_ = scale;
  v.label_ = "builtin";
  return v;
}

AdmissibleVector::AdmissibleVector(const AnalyticFunction1D& chi1_profile,
                                   const AnalyticFunction1D& phi2_profile,
                                   Complex scale, std::string label) {
  if (!chi1_profile.has_freq())
    throw CapabilityError("AdmissibleVector: chi_1 profile needs F chi_1");
  if (!phi2_profile.has_space())
    throw CapabilityError("AdmissibleVector: phi_2 profile needs a direct evaluator");
  table_ = std::make_shared<const PsiSpaceTable>(
      [fr = chi1_profile.freq](double t) { return fr(t).real(); },
      [sp = phi2_profile.space](double u) { return sp(u).real(); },
      chi1_profile.freq_radius, phi2_profile.space_radius, label);
  scale_ = scale;
  label_ = std::move(label);
}

AdmissibleVector AdmissibleVector::scaled(Complex c) const {
  AdmissibleVector v = *this;
  v.scale_ *= c;
  return v;
}

AdmissibleVector AdmissibleVector::conjugated() const {
  // profiles are real; conjugation only flips the scalar factor
  AdmissibleVector v = *this;
  v.scale_ = std::conj(v.scale_);
  return v;
}

Complex AdmissibleVector::Fchi1(double tau) const {
  return scale_ * table_->fchi1(tau);
}

Complex AdmissibleVector::Fpsi1(double tau) const {
  if (tau == 0.0) return 0.0;
  return scale_ * table_->fchi1(tau) / std::abs(tau);
}

double AdmissibleVector::phi2(double u) const { return table_->phi2(u); }

Complex AdmissibleVector::Fpsi(double xi1, double xi2) const {
  if (xi1 == 0.0) return 0.0;
  return Fpsi1(xi1) * table_->phi2(xi2 / xi1);
}

Complex AdmissibleVector::psi(double x1, double x2) const {
  return scale_ * table_->psi_eval(x1, x2);
}

double AdmissibleVector::norm2() const {
  return std::norm(scale_) * table_->norm2;
}

Complex AdmissibleVector::psi_moment(int m1, int m2) const {
  if (m1 < 0 || m2 < 0 || m1 + m2 > 4)
    throw InvalidArgument("psi_moment: total degree capped at 4");
  return scale_ * table_->moments(m1, m2);
}

AnalyticFunction1D AdmissibleVector::chi1_function() const {
  AnalyticFunction1D f;
  f.freq = [t = table_](double tau) -> Complex { return t->fchi1(tau); };
  f.label = "chi1(" + label_ + ")";
  f.space_radius = 48.0;
  f.freq_radius = table_->tau_radius;
  return f;
}

double AdmissibleVector::freq_radius() const { return table_->tau_radius; }
double AdmissibleVector::space_radius() const { return table_->far_grid.max; }

// ===========================================================================
// Representation.
// ===========================================================================

AnalyticFunction2D rep_apply(const AdmissibleVector& psi,
                             const GroupElement& g) {
  const Eigen::Matrix2d m = shear_matrix(g.s) * dilation_matrix(g.a);
  const Eigen::Matrix2d minv = m.inverse();
  const Eigen::Matrix2d mt_freq =
      (dilation_matrix(g.a) * shear_matrix(g.s).transpose());
  const double pref_space = std::pow(std::abs(g.a), -0.75);
  const double pref_freq = std::pow(std::abs(g.a), 0.75);
  const Vector2d b = g.b;
  AnalyticFunction2D atom;
  auto vec = std::make_shared<AdmissibleVector>(psi);
  atom.space = [vec, minv, b, pref_space](double x, double y) -> Complex {
    const Vector2d arg = minv * (Vector2d(x, y) - b);
    return pref_space * vec->psi(arg.x(), arg.y());
  };
  atom.freq = [vec, mt_freq, b, pref_freq](double u, double v) -> Complex {
    const Vector2d arg = mt_freq * Vector2d(u, v);
    return pref_freq * std::exp(-2.0 * kPi * kI * (b.x() * u + b.y() * v)) *
           vec->Fpsi(arg.x(), arg.y());
  };
  atom.label = "atom(" + psi.label() + ")";
  atom.space_radius =
      b.cwiseAbs().maxCoeff() + m.cwiseAbs().maxCoeff() * psi.space_radius() * 2.0;
  atom.freq_radius =
      psi.freq_radius() * minv.cwiseAbs().maxCoeff() * 2.0 + 1.0;
  return atom;
}

// ===========================================================================
// Admissibility constant.
// ===========================================================================

AdmissibilityResult admissibility_constant(const AdmissibleVector& psi) {
  const double tau_r = psi.freq_radius() + 2.0;
  // 2D quadrature route: log-symmetric xi_1, uniform xi_2.
  const LogSymmetricGrid xi1(1e-4, tau_r, 16001, true);
  const Grid1D xi2(-36.0, 36.0, 2881);
  const VectorXd x1 = xi1.nodes();
  const VectorXd w1 = xi1.weights();
  const VectorXd x2 = xi2.nodes();
  const VectorXd w2 = xi2.trapezoid_weights();
  KahanSum<long double> acc2d;
  for (int i = 0; i < x1.size(); ++i) {
    const double p1 = std::abs(psi.Fpsi1(x1(i)));
    if (p1 * p1 < 1e-40) continue;
    KahanSum<long double> row;
    for (int j = 0; j < x2.size(); ++j) {
      const double p2 = psi.phi2(x2(j) / x1(i));
      row.add(w2(j) * p2 * p2);
    }
    acc2d.add(w1(i) * p1 * p1 / (x1(i) * x1(i)) * row.value());
  }
  const double value2d = static_cast<double>(acc2d.value());

  // Factorized route: C_psi = int |F psi_1|^2/|tau| d tau * int phi_2^2 du.
  const Grid1D tau(-tau_r, tau_r, 2 * static_cast<int>(tau_r * 1000) + 1);
  KahanSum<long double> i1;
  const double ht = tau.spacing();
  for (int i = 0; i < tau.n; ++i) {
    const double t = tau.node(i);
    if (t == 0.0) continue;
    const double w = (i == 0 || i == tau.n - 1) ? 0.5 * ht : ht;
    i1.add(w * std::norm(psi.Fpsi1(t)) / std::abs(t));
  }
  const Grid1D u(-12.0, 12.0, 24001);
  KahanSum<long double> i2;
  const double hu = u.spacing();
  for (int i = 0; i < u.n; ++i) {
    const double w = (i == 0 || i == u.n - 1) ? 0.5 * hu : hu;
    const double p = psi.phi2(u.node(i));
    i2.add(w * p * p);
  }
  const double factorized = static_cast<double>(i1.value() * i2.value());

  if (value2d <= 1e-12 || factorized <= 1e-12)
    throw NotAdmissible("admissibility_constant: vanishing admissible mass");
  AdmissibilityResult r;
  r.value = value2d;
  r.factorized = factorized;
  r.rel_diff = std::abs(value2d - factorized) / factorized;
  if (r.rel_diff > 1e-4)
    throw InvalidArgument(
        "admissibility_constant: quadrature routes disagree beyond 1e-4");
  return r;
}

// ===========================================================================
// Analysis paths.
// ===========================================================================

namespace {

/// sum_k h(k) e^{i omega v_k} along a uniform grid, phase by recurrence.
Complex modulated_sum(const VectorXcd& h, double omega, double v0, double dv) {
  const Complex step = std::polar(1.0, omega * dv);
  Complex cur = std::polar(1.0, omega * v0);
  Complex acc = 0.0;
  const int n = static_cast<int>(h.size());
  for (int k = 0; k < n; ++k) {
    if (k % 256 == 0) cur = std::polar(1.0, omega * (v0 + k * dv));
    acc += h(k) * cur;
    cur *= step;
  }
  return acc;
}

}  // namespace

CoefficientArray analyze_spectral(const AnalyticFunction2D& f,
                                  const AdmissibleVector& psi,
                                  const ParamGrid& grid,
                                  const AnalyzeSpec& spec) {
  const Grid1D tau(-spec.tau_max, spec.tau_max, spec.n_tau);
  const Grid1D v(-spec.v_max, spec.v_max, spec.n_v);
  const VectorXd tn = tau.nodes();
  const VectorXd tw = tau.trapezoid_weights();
  const VectorXd vn = v.nodes();
  const VectorXd vw = v.trapezoid_weights();

  // F f on the slice lattice (tau_i, tau_i v_j), shared by every slab.
  MatrixXcd Ffs(tau.n, v.n);
  parallel_for(tau.n, spec.threads, [&](int i) {
    for (int j = 0; j < v.n; ++j) Ffs(i, j) = f.freq(tn(i), tn(i) * vn(j));
  });
  const double maxF = Ffs.cwiseAbs().maxCoeff();

  const MatrixXcd E1 = phase_matrix(grid.b1.nodes(), tau, +1.0);  // (nb1 x ntau)
  const VectorXd an = grid.a.nodes();
  const VectorXd sn = grid.s.nodes();
  const VectorXd b2n = grid.b2.nodes();

  CoefficientArray out(grid);
  parallel_for(grid.slab_count(), spec.threads, [&](int slab_idx) {
    const int is = slab_idx / grid.a.size();
    const int ia = slab_idx % grid.a.size();
    const double a = an(ia);
    const double s = sn(is);
    const double root_a = std::sqrt(std::abs(a));
    VectorXcd window(v.n);
    for (int j = 0; j < v.n; ++j)
      window(j) = psi.phi2((vn(j) - s) / root_a) * vw(j);
    VectorXcd r(tau.n);
    const double pref = std::pow(std::abs(a), -0.25);
    for (int i = 0; i < tau.n; ++i)
      r(i) = pref * std::conj(psi.Fchi1(a * tn(i))) * tw(i);
    MatrixXcd K = MatrixXcd::Zero(tau.n, grid.b2.n);
    VectorXcd h(v.n);
    for (int i = 0; i < tau.n; ++i) {
      if (std::abs(r(i)) * maxF < 1e-15) continue;
      for (int j = 0; j < v.n; ++j) h(j) = Ffs(i, j) * window(j);
      for (int jb = 0; jb < grid.b2.n; ++jb) {
        const double omega = 2.0 * kPi * tn(i) * b2n(jb);
        K(i, jb) = modulated_sum(h, omega, v.min, v.spacing());
      }
    }
    out.slab(is, ia) = E1 * (r.asDiagonal() * K);
  });
  return out;
}

Complex analyze_spectral_point(const AnalyticFunction2D& f,
                               const AdmissibleVector& psi, const Vector2d& b,
                               double s, double a, const AnalyzeSpec& spec) {
  if (a == 0.0) throw InvalidArgument("analyze_spectral_point: a must be nonzero");
  const Grid1D tau(-spec.tau_max, spec.tau_max, spec.n_tau);
  const Grid1D v(-spec.v_max, spec.v_max, spec.n_v);
  const double root_a = std::sqrt(std::abs(a));
  const double pref = std::pow(std::abs(a), -0.25);
  KahanSum<long double> re, im;
  const double ht = tau.spacing();
  const double hv = v.spacing();
  for (int i = 0; i < tau.n; ++i) {
    const double t = tau.node(i);
    const Complex rt = pref * std::conj(psi.Fchi1(a * t)) *
                       ((i == 0 || i == tau.n - 1) ? 0.5 * ht : ht);
    if (std::abs(rt) < 1e-22) continue;
    Complex acc = 0.0;
    for (int j = 0; j < v.n; ++j) {
      const double vv = v.node(j);
      const double w = (j == 0 || j == v.n - 1) ? 0.5 * hv : hv;
      const double win = psi.phi2((vv - s) / root_a);
      if (win == 0.0) continue;
      acc += w * win * f.freq(t, t * vv) *
             std::exp(2.0 * kPi * kI * t * (b.x() + vv * b.y()));
    }
    const Complex term = rt * acc;
    re.add(term.real());
    im.add(term.imag());
  }
  return {static_cast<double>(re.value()), static_cast<double>(im.value())};
}

CoefficientArray analyze_direct(const AnalyticFunction2D& f,
                                const AdmissibleVector& psi,
                                const ParamGrid& grid,
                                const AnalyzeSpec& spec) {
  if (!f.has_space())
    throw CapabilityError("analyze_direct: needs a space evaluator");
  const int nx = 2 * static_cast<int>(std::ceil(spec.x_max / spec.x_step)) + 1;
  const Grid1D xg(-spec.x_max, spec.x_max, nx);
  const VectorXd xn = xg.nodes();
  const VectorXd xw = xg.trapezoid_weights();

  // weighted samples of f, with negligible nodes compacted away
  struct Node {
    double x, y;
    Complex fw;
  };
  std::vector<Node> nodes;
  nodes.reserve(static_cast<size_t>(nx) * nx);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j) {
      const Complex val = f.space(xn(i), xn(j)) * (xw(i) * xw(j));
      if (std::abs(val) > 1e-18) nodes.push_back({xn(i), xn(j), val});
    }

  const VectorXd an = grid.a.nodes();
  const VectorXd sn = grid.s.nodes();

  CoefficientArray out(grid);
  parallel_for(grid.slab_count(), spec.threads, [&](int slab_idx) {
    const int is = slab_idx / grid.a.size();
    const int ia = slab_idx % grid.a.size();
    const double a = an(ia);
    const double s = sn(is);
    const Eigen::Matrix2d minv =
        (shear_matrix(s) * dilation_matrix(a)).inverse();
    const double pref = std::pow(std::abs(a), -0.75);
    // precompute M^{-1} x for all retained nodes
    std::vector<double> y1(nodes.size()), y2(nodes.size());
    for (size_t k = 0; k < nodes.size(); ++k) {
      y1[k] = minv(0, 0) * nodes[k].x + minv(0, 1) * nodes[k].y;
      y2[k] = minv(1, 0) * nodes[k].x + minv(1, 1) * nodes[k].y;
    }
    MatrixXcd& slab = out.slab(is, ia);
    for (int ib1 = 0; ib1 < grid.b1.n; ++ib1) {
      for (int ib2 = 0; ib2 < grid.b2.n; ++ib2) {
        const double bx = grid.b1.node(ib1);
        const double by = grid.b2.node(ib2);
        const double c1 = minv(0, 0) * bx + minv(0, 1) * by;
        const double c2 = minv(1, 0) * bx + minv(1, 1) * by;
        Complex acc = 0.0;
        for (size_t k = 0; k < nodes.size(); ++k) {
          const Complex t = std::conj(psi.psi(y1[k] - c1, y2[k] - c2));
          if (t != 0.0) acc += nodes[k].fw * t;
        }
        slab(ib1, ib2) = pref * acc;
      }
    }
  });
  return out;
}

CoefficientArray analyze_factorized(const AnalyticFunction2D& f,
                                    const AdmissibleVector& psi,
                                    const ParamGrid& grid,
                                    const AnalyzeSpec& spec) {
  const Grid1D tau(-spec.tau_max, spec.tau_max, spec.n_tau);
  const Grid1D v(-spec.v_max, spec.v_max, spec.n_v);
  const Grid1D tg(-spec.t_max, spec.t_max, spec.n_t);
  const VectorXd tn = tau.nodes();
  const VectorXd tw = tau.trapezoid_weights();
  const VectorXd vn = v.nodes();
  const VectorXd vw = v.trapezoid_weights();
  const VectorXd an = grid.a.nodes();
  const VectorXd sn = grid.s.nodes();
  const VectorXd b2n = grid.b2.nodes();
  const int na = grid.a.size();

  const MatrixXcd E1 = phase_matrix(grid.b1.nodes(), tau, +1.0);
  CoefficientArray out(grid);

  const int chunk = 64;
  std::vector<std::vector<MatrixXcd>> Kv(chunk,
                                         std::vector<MatrixXcd>(na));
  for (int v0 = 0; v0 < v.n; v0 += chunk) {
    const int nv_chunk = std::min(chunk, v.n - v0);
    parallel_for(nv_chunk, spec.threads, [&](int dv) {
      const int jv = v0 + dv;
      const double slope = vn(jv);
      // affine projection at this slope, via the slice theorem, sampled in t
      VectorXcd slice(tau.n);
      for (int k = 0; k < tau.n; ++k)
        slice(k) = f.freq(tn(k), tn(k) * slope) * tw(k);
      VectorXcd g(tg.n);
      for (int it = 0; it < tg.n; ++it)
        g(it) = modulated_sum(slice, 2.0 * kPi * tg.node(it), tau.min,
                              tau.spacing());
      // forward transform of the t samples (streamed; a phase matrix per
      // slope would allocate tens of MB and dominate the runtime)
      g.array() *= tg.trapezoid_weights().cast<Complex>().array();
      VectorXcd Fg(tau.n);
      for (int k = 0; k < tau.n; ++k)
        Fg(k) = modulated_sum(g, -2.0 * kPi * tn(k), tg.min, tg.spacing());
      // wavelet coefficients at b = b1 + slope*b2 for every scale
      for (int ia = 0; ia < na; ++ia) {
        const double a = an(ia);
        VectorXcd G(tau.n);
        const double root_a = std::sqrt(std::abs(a));
        for (int k = 0; k < tau.n; ++k)
          G(k) = root_a * Fg(k) * std::conj(psi.Fchi1(a * tn(k))) * tw(k);
        MatrixXcd K(grid.b1.n, grid.b2.n);
        VectorXcd Gp(tau.n);
        for (int jb = 0; jb < grid.b2.n; ++jb) {
          const double shift = slope * b2n(jb);
          const Complex step = std::polar(1.0, 2.0 * kPi * shift * tau.spacing());
          Complex cur = std::polar(1.0, 2.0 * kPi * shift * tau.min);
          for (int k = 0; k < tau.n; ++k) {
            if (k % 256 == 0) cur = std::polar(1.0, 2.0 * kPi * shift * tn(k));
            Gp(k) = G(k) * cur;
            cur *= step;
          }
          K.col(jb) = E1 * Gp;
        }
        Kv[dv][ia] = std::move(K);
      }
    });
    // deterministic accumulation over the chunk
    for (int dv = 0; dv < nv_chunk; ++dv) {
      const int jv = v0 + dv;
      for (int is = 0; is < grid.s.n; ++is) {
        for (int ia = 0; ia < na; ++ia) {
          const double a = an(ia);
          const double win =
              psi.phi2((vn(jv) - sn(is)) / std::sqrt(std::abs(a)));
          if (win == 0.0) continue;
          out.slab(is, ia) +=
              (std::pow(std::abs(a), -0.75) * win * vw(jv)) * Kv[dv][ia];
        }
      }
    }
  }
  // wavelet path above used unscaled F chi_1 only through psi.Fchi1, which
  // already carries the scale; conjugation there matches conj(psi).
  return out;
}

double coefficient_seminorm(const CoefficientArray& c, int k1, int k2, int l,
                            int m) {
  if (k1 < 0 || k2 < 0 || l < 0 || m < 0)
    throw InvalidArgument("coefficient_seminorm: negative order");
  const ParamGrid& g = c.grid;
  const VectorXd an = g.a.nodes();
  const VectorXd sn = g.s.nodes();
  double sup = 0.0;
  for (int is = 0; is < g.s.n; ++is) {
    const double ws = std::pow(1.0 + sn(is) * sn(is), 0.5 * l);
    for (int ia = 0; ia < g.a.size(); ++ia) {
      const double aa = std::abs(an(ia));
      const double wa = std::pow(aa, m) + std::pow(aa, -m);
      const MatrixXcd& slab = c.slab(is, ia);
      for (int i = 0; i < g.b1.n; ++i) {
        const double w1 = std::pow(1.0 + g.b1.node(i) * g.b1.node(i), 0.5 * k1);
        for (int j = 0; j < g.b2.n; ++j) {
          const double w2 =
              std::pow(1.0 + g.b2.node(j) * g.b2.node(j), 0.5 * k2);
          sup = std::max(sup, ws * wa * w1 * w2 * std::abs(slab(i, j)));
        }
      }
    }
  }
  return sup;
}

double coefficient_energy(const CoefficientArray& c) {
  const ParamGrid& g = c.grid;
  const VectorXd w1 = g.b1.trapezoid_weights();
  const VectorXd w2 = g.b2.trapezoid_weights();
  const VectorXd ws = g.s.trapezoid_weights();
  const VectorXd wa = g.a.weights();
  const VectorXd an = g.a.nodes();
  KahanSum<long double> acc;
  for (int is = 0; is < g.s.n; ++is) {
    for (int ia = 0; ia < g.a.size(); ++ia) {
      const double haar = ws(is) * wa(ia) / std::pow(std::abs(an(ia)), 3);
      const MatrixXcd& slab = c.slab(is, ia);
      long double slab_sum = 0.0L;
      for (int i = 0; i < g.b1.n; ++i)
        for (int j = 0; j < g.b2.n; ++j)
          slab_sum += w1(i) * w2(j) * std::norm(slab(i, j));
      acc.add(haar * slab_sum);
    }
  }
  return static_cast<double>(acc.value());
}

// ===========================================================================
// Ridgelets.
// ===========================================================================

namespace {

VectorXcd polar_column(const AnalyticFunction2D& f, double theta,
                       const Grid1D& q_grid, const RidgeletSpec& spec) {
  if (!f.has_space()) throw CapabilityError("ridgelet: f needs a space evaluator");
  const Grid1D y(-spec.y_max, spec.y_max, spec.n_y);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  VectorXcd col(q_grid.n);
  for (int j = 0; j < q_grid.n; ++j) {
    const double q = q_grid.node(j);
    col(j) = quad_kahan(y, [&](double t) {
      return f.space(q * c - t * s, q * s + t * c);
    });
  }
  return col;
}

}  // namespace

std::vector<MatrixXcd> ridgelet_transform(const AnalyticFunction2D& f,
                                          const AnalyticFunction1D& psi,
                                          const Grid1D& theta_grid,
                                          const Grid1D& b_grid,
                                          const LogSymmetricGrid& a_grid,
                                          const RidgeletSpec& spec) {
  if (a_grid.include_negative)
    throw InvalidArgument("ridgelet_transform: scale axis must be positive");
  const Grid1D q(-spec.q_max, spec.q_max, spec.n_q);
  const double tau_max = psi.freq_radius;
  const Grid1D tau(-tau_max, tau_max, 961);
  const VectorXd tn = tau.nodes();
  const VectorXd tw = tau.trapezoid_weights();
  const MatrixXcd Eb = phase_matrix(b_grid.nodes(), tau, +1.0);
  const VectorXd an = a_grid.nodes();
  std::vector<MatrixXcd> out(theta_grid.n);
  parallel_for(theta_grid.n, spec.threads, [&](int i) {
    const VectorXcd col = polar_column(f, theta_grid.node(i), q, spec);
    const VectorXcd Fcol = fourier1d(SampledSignal1D{q, col}, tn);
    MatrixXcd m(b_grid.n, an.size());
    for (int ja = 0; ja < an.size(); ++ja) {
      // ridgelet 1/a normalization: a^{-1/2} * (|a|^{1/2} wavelet kernel)
      VectorXcd g(tau.n);
      for (int k = 0; k < tau.n; ++k)
        g(k) = Fcol(k) * std::conj(psi.freq(an(ja) * tn(k))) * tw(k);
      m.col(ja) = Eb * g;
    }
    out[i] = std::move(m);
  });
  return out;
}

Complex ridgelet_point(const AnalyticFunction2D& f,
                       const AnalyticFunction1D& psi, double theta, double b,
                       double a, const RidgeletSpec& spec) {
  if (a <= 0.0) throw InvalidArgument("ridgelet_point: scale must be positive");
  const Grid1D q(-spec.q_max, spec.q_max, spec.n_q);
  const VectorXcd col = polar_column(f, theta, q, spec);
  const double tau_max = psi.freq_radius;
  const Grid1D tau(-tau_max, tau_max, 961);
  const VectorXcd Fcol = fourier1d(SampledSignal1D{q, col}, tau.nodes());
  const VectorXd tw = tau.trapezoid_weights();
  Complex acc = 0.0;
  for (int k = 0; k < tau.n; ++k)
    acc += Fcol(k) * std::conj(psi.freq(a * tau.node(k))) * tw(k) *
           std::exp(2.0 * kPi * kI * b * tau.node(k));
  return acc;
}

namespace {

/// Right-hand side of the ridgelet route to a shearlet coefficient:
///   |a|^{-3/4} a^{1/2} int (1+v^2)^{-1/2}
///       R_{chi1} f(arctan v, (b1+v b2)/sqrt(1+v^2), a/sqrt(1+v^2))
///       conj(phi_2((v-s)/sqrt(a))) dv,
/// with ridgelet values supplied by the callback.
Complex ridgelet_route_value(
    const AdmissibleVector& psi, const GroupElement& g, const Grid1D& v,
    const std::function<Complex(double, double, double)>& ridgelet) {
  const double root_a = std::sqrt(g.a);
  KahanSum<long double> re, im;
  const double hv = v.spacing();
  for (int j = 0; j < v.n; ++j) {
    const double slope = v.node(j);
    const double w = (j == 0 || j == v.n - 1) ? 0.5 * hv : hv;
    const double win = psi.phi2((slope - g.s) / root_a);
    if (std::abs(win) < 1e-18) continue;
    const double root_v = std::sqrt(1.0 + slope * slope);
    const Complex rv = ridgelet(std::atan(slope),
                                (g.b.x() + slope * g.b.y()) / root_v,
                                g.a / root_v);
    const Complex term = w * win / root_v * rv;
    re.add(term.real());
    im.add(term.imag());
  }
  const Complex pref = std::conj(psi.scale()) * std::pow(g.a, -0.75) * root_a;
  return pref * Complex(static_cast<double>(re.value()),
                        static_cast<double>(im.value()));
}

}  // namespace

double ridgelet_shearlet_check(const AnalyticFunction2D& f,
                               const AdmissibleVector& psi,
                               const std::vector<GroupElement>& points) {
  for (const auto& g : points)
    if (g.a <= 0.0)
      throw InvalidArgument("ridgelet_shearlet_check: points need a > 0");
  const AnalyticFunction1D chi1 = psi.chi1_function();
  // precomputed ridgelet stack, interpolated tricubically in (b, log a, theta)
  const Grid1D theta(-1.49, 1.49, 121);
  const Grid1D bg(-2.5, 2.5, 101);
  const LogSymmetricGrid ag(0.04, 2.6, 28, false);
  const Grid1D ug(std::log(0.04), std::log(2.6), 28);
  const std::vector<MatrixXcd> stack =
      ridgelet_transform(f, chi1, theta, bg, ag);
  auto lookup = [&](double th, double b, double a) -> Complex {
    return interp_tricubic(bg, ug, theta, stack, b, std::log(a), th);
  };
  const Grid1D v(-9.0, 9.0, 721);
  double worst = 0.0;
  for (const auto& g : points) {
    const Complex rhs = ridgelet_route_value(psi, g, v, lookup);
    const Complex lhs = analyze_spectral_point(f, psi, g.b, g.s, g.a);
    const double denom = std::max(std::abs(lhs), std::abs(rhs));
    if (denom > 1e-14)
      worst = std::max(worst, std::abs(lhs - rhs) / denom);
  }
  return worst;
}

double ridgelet_shearlet_point_check(const AnalyticFunction2D& f,
                                     const AdmissibleVector& psi,
                                     const GroupElement& g) {
  if (g.a <= 0.0)
    throw InvalidArgument("ridgelet_shearlet_point_check: needs a > 0");
  const AnalyticFunction1D chi1 = psi.chi1_function();
  const Grid1D v(-4.0, 4.0, 161);
  auto exact = [&](double th, double b, double a) -> Complex {
    return ridgelet_point(f, chi1, th, b, a);
  };
  const Complex rhs = ridgelet_route_value(psi, g, v, exact);
  const Complex lhs = analyze_spectral_point(f, psi, g.b, g.s, g.a);
  const double denom = std::max(std::abs(lhs), std::abs(rhs));
  return denom > 1e-14 ? std::abs(lhs - rhs) / denom : 0.0;
}

}  // namespace lizshear
