// lizshear: command-line front end for the shearlet/Lizorkin library.
//
// Subcommands: admissibility, analyze, synthesize, roundtrip, radon,
// verify, decay.  Configuration is a single JSON document; outputs are
// CSV (17 significant digits), PGM P5 heatmaps, and a JSON report.
// Exit codes: 0 pass, 1 check failure, 2 usage/config/IO error.

#include <CLI11.hpp>
#include <json.hpp>

#include "lizshear/distributions.hpp"
#include "lizshear/fourier.hpp"
#include "lizshear/radon.hpp"
#include "lizshear/synthesis.hpp"
#include "lizshear/testfn.hpp"
#include "lizshear/wavelet.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lizshear;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Configuration.
// ---------------------------------------------------------------------------

struct RunConfig {
  ParamGrid grid;
  Complex vector_scale{1.0, 0.0};
  std::string input = "builtin:lizorkin";
  std::string out_dir = "out";
  int threads = 0;
  std::map<std::string, double> tolerances;
  json canonical;  // defaulted config document, for the digest
};

Grid1D parse_axis(const json& j, const Grid1D& fallback) {
  const double mn = j.value("min", fallback.min);
  const double mx = j.value("max", fallback.max);
  const int n = j.value("n", fallback.n);
  if (n < 2) throw UsageError("config: grid counts must be >= 2");
  return Grid1D(mn, mx, n);
}

RunConfig parse_config(const std::string& path) {
  json j = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open " + path);
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw UsageError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config: top level must be an object");
  }
  RunConfig c;
  try {
    const json g = j.value("grid", json::object());
    c.grid.b1 = parse_axis(g.value("b1", json::object()), c.grid.b1);
    c.grid.b2 = parse_axis(g.value("b2", json::object()), c.grid.b2);
    c.grid.s = parse_axis(g.value("s", json::object()), c.grid.s);
    const json a = g.value("a", json::object());
    const double amin = a.value("min", c.grid.a.a_min);
    const double amax = a.value("max", c.grid.a.a_max);
    const int nps = a.value("n_per_side", c.grid.a.n_per_side);
    const bool neg = a.value("include_negative", true);
    if (nps < 2) throw UsageError("config: grid counts must be >= 2");
    c.grid.a = LogSymmetricGrid(amin, amax, nps, neg);

    const json v = j.value("vector", json::object());
    c.vector_scale =
        Complex(v.value("scale_re", 1.0), v.value("scale_im", 0.0));
    c.input = j.value("input", c.input);
    c.out_dir = j.value("out", c.out_dir);
    c.threads = j.value("threads", 0);
    const json tols = j.value("tolerances", json::object());
    for (const auto& [k, val] : tols.items()) {
      const double t = val.get<double>();
      if (t <= 0.0) throw UsageError("config: tolerances must be positive");
      c.tolerances[k] = t;
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("config: ") + e.what());
  }

  json canon;
  canon["grid"] = {
      {"b1", {{"min", c.grid.b1.min}, {"max", c.grid.b1.max}, {"n", c.grid.b1.n}}},
      {"b2", {{"min", c.grid.b2.min}, {"max", c.grid.b2.max}, {"n", c.grid.b2.n}}},
      {"s", {{"min", c.grid.s.min}, {"max", c.grid.s.max}, {"n", c.grid.s.n}}},
      {"a",
       {{"min", c.grid.a.a_min},
        {"max", c.grid.a.a_max},
        {"n_per_side", c.grid.a.n_per_side},
        {"include_negative", c.grid.a.include_negative}}}};
  canon["vector"] = {{"scale_re", c.vector_scale.real()},
                     {"scale_im", c.vector_scale.imag()}};
  canon["input"] = c.input;
  canon["out"] = c.out_dir;
  canon["threads"] = c.threads;
  canon["tolerances"] = c.tolerances;
  c.canonical = std::move(canon);
  return c;
}

double tolerance(const RunConfig& c, const std::string& name, double dflt) {
  const auto it = c.tolerances.find(name);
  return it == c.tolerances.end() ? dflt : it->second;
}

std::string config_digest(const RunConfig& c) {
  const std::string s = c.canonical.dump();
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  for (const unsigned char b : s) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Input loading.
// ---------------------------------------------------------------------------

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

Grid1D infer_grid(std::vector<double> coords) {
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  if (coords.size() < 2) throw UsageError("field CSV: degenerate grid");
  const int n = static_cast<int>(coords.size());
  const double h = (coords.back() - coords.front()) / (n - 1);
  const double scale = std::max(std::abs(coords.front()),
                                std::abs(coords.back()));
  for (int i = 0; i < n; ++i)
    if (std::abs(coords[i] - (coords.front() + i * h)) > 1e-9 * scale)
      throw UsageError("field CSV: coordinates are not uniform within 1e-9");
  return Grid1D(coords.front(), coords.back(), n);
}

AnalyticFunction2D field_from_samples(SampledField2D samples, int threads) {
  // frequency side: dense spectrum table, bicubic off nodes
  const Grid1D xi(-6.0, 6.0, 241);
  auto spec = std::make_shared<MatrixXcd>(
      fourier2d(samples, xi.nodes(), xi.nodes()));
  (void)threads;
  auto gx = std::make_shared<Grid1D>(samples.grid_x);
  auto gy = std::make_shared<Grid1D>(samples.grid_y);
  auto vals = std::make_shared<MatrixXcd>(std::move(samples.values));
  auto xig = std::make_shared<Grid1D>(xi);
  AnalyticFunction2D f;
  f.space = [gx, gy, vals](double x, double y) -> Complex {
    if (!gx->contains(x) || !gy->contains(y)) return 0.0;
    return interp_bicubic(*gx, *gy, *vals, x, y);
  };
  f.freq = [xig, spec](double u, double v) -> Complex {
    if (!xig->contains(u) || !xig->contains(v)) return 0.0;
    return interp_bicubic(*xig, *xig, *spec, u, v);
  };
  f.label = "sampled";
  f.space_radius = std::min({-gx->min, gx->max, -gy->min, gy->max});
  f.freq_radius = 6.0;
  return f;
}

AnalyticFunction2D load_input(const std::string& spec, int threads) {
  if (spec.rfind("builtin:", 0) == 0) {
    const std::string name = spec.substr(8);
    if (name == "gaussian") return gaussian2d();
    if (name == "lizorkin") return lizorkin_product_2d();
    if (name == "zero") {
      AnalyticFunction2D z;
      z.space = [](double, double) -> Complex { return 0.0; };
      z.freq = [](double, double) -> Complex { return 0.0; };
      z.label = "zero";
      return z;
    }
    throw UsageError("unknown builtin input: " + name);
  }
  std::ifstream in(spec);
  if (!in) throw UsageError("cannot open input: " + spec);
  std::string line;
  if (!std::getline(in, line) || split_line(line) !=
      std::vector<std::string>{"x", "y", "re", "im"})
    throw UsageError("field CSV: expected header x,y,re,im");
  std::vector<double> xs, ys;
  std::vector<std::array<double, 4>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto parts = split_line(line);
    if (parts.size() != 4) throw UsageError("field CSV: bad row");
    std::array<double, 4> r{};
    try {
      for (int k = 0; k < 4; ++k) r[k] = std::stod(parts[k]);
    } catch (const std::exception&) {
      throw UsageError("field CSV: non-numeric entry");
    }
    xs.push_back(r[0]);
    ys.push_back(r[1]);
    rows.push_back(r);
  }
  if (rows.empty()) throw UsageError("field CSV: no data rows");
  const Grid1D gx = infer_grid(xs);
  const Grid1D gy = infer_grid(ys);
  if (static_cast<long long>(rows.size()) !=
      static_cast<long long>(gx.n) * gy.n)
    throw UsageError("field CSV: row count does not match the grid");
  SampledField2D field{gx, gy, MatrixXcd::Zero(gx.n, gy.n)};
  for (const auto& r : rows) {
    const int i = static_cast<int>(std::lround((r[0] - gx.min) / gx.spacing()));
    const int j = static_cast<int>(std::lround((r[1] - gy.min) / gy.spacing()));
    field.values(i, j) = Complex(r[2], r[3]);
  }
  return field_from_samples(std::move(field), threads);
}

// ---------------------------------------------------------------------------
// Output writers.
// ---------------------------------------------------------------------------

void ensure_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory " + dir);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_coefficients_csv(const std::string& path,
                            const CoefficientArray& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << "b1,b2,s,a,re,im\n";
  const VectorXd an = c.grid.a.nodes();
  for (int i = 0; i < c.grid.b1.n; ++i)
    for (int j = 0; j < c.grid.b2.n; ++j)
      for (int is = 0; is < c.grid.s.n; ++is)
        for (int ia = 0; ia < c.grid.a.size(); ++ia) {
          const Complex v = c.at(i, j, is, ia);
          out << num(c.grid.b1.node(i)) << ',' << num(c.grid.b2.node(j))
              << ',' << num(c.grid.s.node(is)) << ',' << num(an(ia)) << ','
              << num(v.real()) << ',' << num(v.imag()) << '\n';
        }
}

void write_field_csv(const std::string& path, const SampledField2D& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << "x,y,re,im\n";
  for (int i = 0; i < f.grid_x.n; ++i)
    for (int j = 0; j < f.grid_y.n; ++j)
      out << num(f.grid_x.node(i)) << ',' << num(f.grid_y.node(j)) << ','
          << num(f.values(i, j).real()) << ',' << num(f.values(i, j).imag())
          << '\n';
}

void write_pgm(const std::string& path, const MatrixXcd& slab) {
  // rows of the image run over b2, columns over b1; linear min-max scale
  const Eigen::MatrixXd mag = slab.cwiseAbs();
  const double lo = mag.minCoeff();
  const double hi = mag.maxCoeff();
  const double span = hi > lo ? hi - lo : 1.0;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << "P5\n" << slab.rows() << " " << slab.cols() << "\n255\n";
  for (int j = 0; j < slab.cols(); ++j)
    for (int i = 0; i < slab.rows(); ++i) {
      const int v =
          static_cast<int>(std::lround(255.0 * (mag(i, j) - lo) / span));
      out.put(static_cast<char>(std::clamp(v, 0, 255)));
    }
}

// ---------------------------------------------------------------------------
// Verification suite.
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  std::string anchor;  // one-line statement of the identity under test
  double lhs = 0.0;
  double rhs = 0.0;
  double error = 0.0;
  double tol = 0.0;
  bool pass = false;
};

double loglog_slope(const std::vector<double>& a,
                    const std::vector<double>& v) {
  // least-squares slope of ln|v| against ln(a)
  const int n = static_cast<int>(a.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(a[i]);
    const double y = std::log(std::max(std::abs(v[i]), 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<CheckResult> run_checks(const RunConfig& cfg,
                                    const std::string& only) {
  const AdmissibleVector psi =
      AdmissibleVector::builtin().scaled(cfg.vector_scale);
  const AnalyticFunction2D gauss = gaussian2d();
  const AnalyticFunction2D liz = lizorkin_product_2d();
  std::vector<CheckResult> results;

  auto want = [&](const std::string& name) {
    return only.empty() || only == name;
  };
  auto push = [&](CheckResult r) { results.push_back(std::move(r)); };

  if (want("admissibility")) {
    CheckResult r{"admissibility",
                  "the 2D quadrature of C_psi agrees with the factorized "
                  "product of 1D integrals"};
    const AdmissibilityResult a = admissibility_constant(psi);
    r.lhs = a.value;
    r.rhs = a.factorized;
    r.error = a.rel_diff;
    r.tol = tolerance(cfg, "admissibility", 1e-6);
    r.pass = r.error <= r.tol;
    push(r);
  }
  if (want("homogeneity")) {
    CheckResult r{"homogeneity",
                  "scaling the vector by c multiplies C_psi by |c|^2"};
    const Complex c(0.8, -0.6);
    const double base = admissibility_constant(psi).factorized;
    const double scaled = admissibility_constant(psi.scaled(c)).factorized;
    r.lhs = scaled;
    r.rhs = std::norm(c) * base;
    r.error = std::abs(r.lhs - r.rhs) / r.rhs;
    r.tol = tolerance(cfg, "homogeneity", 1e-10);
    r.pass = r.error <= r.tol;
    push(r);
  }
  if (want("slice-theorem")) {
    CheckResult r{"slice-theorem",
                  "the affine Radon projection equals the inverse transform "
                  "of the matching frequency slice"};
    const Grid1D t(-4.0, 4.0, 33);
    double worst = 0.0;
    for (double v : {-3.0, -1.0, 0.0, 0.5, 2.0, 3.0}) {
      const SampledSignal1D s = radon_affine_spectral(gauss, v, t);
      const AffineSinogram d =
          radon_affine_direct(gauss, Grid1D(v, v + 1.0, 2), t);
      for (int j = 0; j < t.n; ++j)
        worst = std::max(worst, std::abs(s.values(j) - d.values(0, j)));
    }
    r.error = worst;
    r.tol = tolerance(cfg, "slice-theorem", 1e-7);
    r.pass = r.error <= r.tol;
    push(r);
  }
  if (want("polar-affine")) {
    CheckResult r{"polar-affine",
                  "the affine sinogram is the polar one after the "
                  "slope-to-angle change of coordinates"};
    const PolarSinogram p = radon_polar(gauss, Grid1D(-1.5, 1.5, 241),
                                        Grid1D(-4.0, 4.0, 321));
    const Grid1D vg(-3.0, 3.0, 9);
    const Grid1D tg(-2.0, 2.0, 9);
    const AffineSinogram d = radon_affine_direct(gauss, vg, tg);
    double worst = 0.0;
    for (int i = 0; i < vg.n; ++i)
      for (int j = 0; j < tg.n; ++j)
        worst = std::max(worst, std::abs(polar_to_affine(p, vg.node(i),
                                                         tg.node(j)) -
                                         d.values(i, j)));
    r.error = worst;
    r.tol = tolerance(cfg, "polar-affine", 1e-5);
    r.pass = r.error <= r.tol;
    push(r);
  }
  if (want("three-path")) {
    CheckResult r{"three-path",
                  "space-side, frequency-side and Radon-wavelet evaluations "
                  "of the shearlet coefficients coincide"};
    ParamGrid g;
    g.b1 = Grid1D(-2.0, 2.0, 6);
    g.b2 = Grid1D(-2.0, 2.0, 6);
    g.s = Grid1D(-2.0, 2.0, 6);
    g.a = LogSymmetricGrid(0.2, 2.0, 3, true);
    AnalyzeSpec spec;
    spec.threads = cfg.threads;
    const CoefficientArray cs = analyze_spectral(gauss, psi, g, spec);
    const CoefficientArray cd = analyze_direct(gauss, psi, g, spec);
    const CoefficientArray cf = analyze_factorized(gauss, psi, g, spec);
    double worst = 0.0;
    for (size_t i = 0; i < cs.slabs.size(); ++i) {
      worst = std::max(worst,
                       (cs.slabs[i] - cd.slabs[i]).cwiseAbs().maxCoeff());
      worst = std::max(worst,
                       (cs.slabs[i] - cf.slabs[i]).cwiseAbs().maxCoeff());
    }
    r.error = worst;
    r.tol = tolerance(cfg, "three-path", 1e-5);
    r.pass = r.error <= r.tol;
    push(r);
  }
  if (want("isometry")) {
    CheckResult r{"isometry",
                  "the Haar-weighted coefficient energy equals C_psi times "
                  "the squared L2 norm of the input"};
    AnalyzeSpec spec;
    spec.threads = cfg.threads;
    const CoefficientArray c = analyze_spectral(liz, psi, cfg.grid, spec);
    const double C = admissibility_constant(psi).factorized;
    const double fnorm2 = 0.0162318123400659 * std::norm(psi.scale());
    r.lhs = coefficient_energy(c);
    r.rhs = C * fnorm2;
    r.error = std::abs(r.lhs - r.rhs) / r.rhs;
    r.tol = tolerance(cfg, "isometry", 0.05);
    r.pass = r.error <= r.tol;
    push(r);
  }
  if (want("reconstruction")) {
    CheckResult r{"reconstruction",
                  "synthesizing the coefficients and dividing by C_psi "
                  "returns the input"};
    ReconstructSpec spec;
    spec.threads = cfg.threads;
    const SynthesisResult s = reconstruct(liz, psi, cfg.grid, spec);
    r.error = s.residual;
    r.tol = tolerance(cfg, "reconstruction", 5e-2);
    r.pass = r.error <= r.tol;
    push(r);
  }
  if (want("duality")) {
    CheckResult r{"duality",
                  "pairing f with the synthesis of Phi equals pairing the "
                  "coefficients of f with Phi"};
    ParamGrid g;
    g.b1 = Grid1D(-3.0, 3.0, 13);
    g.b2 = Grid1D(-3.0, 3.0, 13);
    g.s = Grid1D(-1.5, 1.5, 5);
    g.a = LogSymmetricGrid(0.3, 1.5, 3, true);
    const CoefficientArray Phi = sample_coefficients(
        g, [](double b1, double b2, double s, double a) {
          const double la = std::log(std::abs(a));
          return Complex(std::exp(-kPi * (b1 * b1 + b2 * b2) / 2.0 - s * s -
                                  2.0 * la * la));
        });
    DualitySpec spec;
    spec.xi_grid = Grid1D(-21.0, 21.0, 1683);
    spec.threads = cfg.threads;
    const DualityResult d = duality_check(gauss, Phi, psi, spec);
    r.lhs = std::abs(d.lhs);
    r.rhs = std::abs(d.rhs);
    r.error = d.degenerate ? 1.0 : d.discrepancy;
    r.tol = tolerance(cfg, "duality", 1e-4);
    r.pass = !d.degenerate && r.error <= r.tol;
    push(r);
  }
  if (want("consistency")) {
    CheckResult r{"consistency",
                  "the distributional transform agrees with the pointwise "
                  "desingularized pairing"};
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
    spec.xi_max = 16.0;
    spec.n_xi = 1281;
    spec.threads = cfg.threads;
    const Dirac d{Vector2d(0.25, -0.5)};
    const ConsistencyResult cr = consistency_check(d, Phi, psi, spec);
    r.lhs = std::abs(cr.lhs);
    r.rhs = std::abs(cr.rhs);
    r.error = cr.degenerate ? 1.0 : cr.discrepancy;
    r.tol = tolerance(cfg, "consistency", 1e-3);
    r.pass = !cr.degenerate && r.error <= r.tol;
    push(r);
  }
  if (want("ridgelet")) {
    CheckResult r{"ridgelet",
                  "shearlet coefficients factor through ridgelet "
                  "coefficients of chi_1 over the slope integral"};
    double worst = 0.0;
    for (const GroupElement& g :
         {GroupElement(Vector2d(0.5, -0.3), 0.4, 0.6),
          GroupElement(Vector2d(0.0, 0.0), 0.0, 1.0),
          GroupElement(Vector2d(-0.7, 0.2), -0.8, 0.35)}) {
      worst = std::max(worst, ridgelet_shearlet_point_check(gauss, psi, g));
    }
    r.error = worst;
    r.tol = tolerance(cfg, "ridgelet", 1e-3);
    r.pass = r.error <= r.tol;
    push(r);
  }
  if (want("moments")) {
    CheckResult r{"moments",
                  "all moments of the builtin profiles up to order 6 vanish"};
    const AnalyticFunction1D chi1 = builtin_chi1();
    double worst = 0.0;
    for (int m = 0; m <= 6; ++m)
      worst = std::max(worst, std::abs(moment(chi1, m)));
    for (int m1 = 0; m1 <= 4; ++m1)
      for (int m2 = 0; m1 + m2 <= 4; ++m2)
        worst = std::max(worst, std::abs(psi.psi_moment(m1, m2)));
    r.error = worst;
    r.tol = tolerance(cfg, "moments", 1e-7);
    r.pass = r.error <= r.tol;
    push(r);
  }
  if (want("antiderivative")) {
    CheckResult r{"antiderivative",
                  "the antiderivative of an all-vanishing-moments profile "
                  "satisfies F f = 2 pi i tau F g and stays moment-free"};
    const AnalyticFunction1D chi1 = builtin_chi1();
    const AnalyticFunction1D g = antiderivative_s0(chi1);
    double worst = 0.0;
    for (double tau : {0.5, 1.0, 2.0})
      worst = std::max(worst, std::abs(chi1.freq(tau) -
                                       2.0 * kPi * kI * tau * g.freq(tau)));
    r.error = worst;
    r.tol = tolerance(cfg, "antiderivative", 1e-8);
    double mworst = 0.0;
    for (int m = 0; m <= 3; ++m)
      mworst = std::max(mworst, std::abs(moment(g, m)));
    r.pass = r.error <= r.tol && mworst <= 1e-7;
    push(r);
  }
  if (want("annihilation")) {
    CheckResult r{"annihilation",
                  "shearlet coefficients of polynomials of degree at most 4 "
                  "vanish"};
    Polynomial p;
    p.coeffs(0, 0) = 1.0;
    p.coeffs(1, 0) = -2.0;
    p.coeffs(2, 2) = 0.7;
    p.coeffs(0, 3) = 1.3;
    p.coeffs(4, 0) = -0.1;
    double worst = 0.0;
    for (const GroupElement& g :
         {GroupElement(Vector2d(0.5, -1.0), 0.8, 0.3),
          GroupElement(Vector2d(-2.0, 1.5), -1.2, 2.0),
          GroupElement(Vector2d(0.0, 0.0), 0.0, -0.7)}) {
      worst = std::max(worst, std::abs(desingularized_shearlet(p, psi, g)));
    }
    r.error = worst;
    r.tol = tolerance(cfg, "annihilation", 1e-6);
    r.pass = r.error <= r.tol;
    push(r);
  }
  if (want("line-delta")) {
    CheckResult r{"line-delta",
                  "coefficients of a line distribution decay much faster in "
                  "a at a mismatched shear than at the matched one"};
    // Line x2 = -x1.  The atom orientation matching the line is shear s = 1;
    // there the coefficient rides the singularity and does not decay
    // (slope -1/4 from the |a|^{3/4} normalization against the 1D line
    // measure).  A shear one unit off (s = 0) decays superpolynomially but
    // stays resolvable above the pairing quadrature floor at these scales.
    const LineDelta d{-1.0, 0.0};
    const std::vector<double> scales{0.4, 0.2, 0.1, 0.05};
    std::vector<double> matched, mismatched;
    for (const double a : scales) {
      matched.push_back(std::abs(desingularized_shearlet(
          d, psi, GroupElement(Vector2d::Zero(), 1.0, a))));
      mismatched.push_back(std::abs(desingularized_shearlet(
          d, psi, GroupElement(Vector2d::Zero(), 0.0, a))));
    }
    const double sm = loglog_slope(scales, matched);
    const double sx = loglog_slope(scales, mismatched);
    r.lhs = sm;
    r.rhs = sx;
    // pass when the mismatched slope is a genuine decay and at least twice
    // the matched slope; error <= 1 encodes 2*matched/mismatched <= 1
    r.error = sx > 0.0 ? 2.0 * sm / sx : 2.0;
    r.tol = tolerance(cfg, "line-delta", 1.0);
    r.pass = sx > 0.0 && r.error <= r.tol;
    push(r);
  }
  if (results.empty()) throw UsageError("unknown check: " + only);
  return results;
}

// ---------------------------------------------------------------------------
// Subcommand drivers.
// ---------------------------------------------------------------------------

int cmd_admissibility(const RunConfig& cfg) {
  const AdmissibleVector psi =
      AdmissibleVector::builtin().scaled(cfg.vector_scale);
  AdmissibilityResult r;
  try {
    r = admissibility_constant(psi);
  } catch (const NotAdmissible& e) {
    std::printf("not admissible: %s\n", e.what());
    return 1;
  }
  const double tol = tolerance(cfg, "admissibility", 1e-6);
  std::printf("C_psi (2D quadrature) = %.17g\n", r.value);
  std::printf("C_psi (factorized)    = %.17g\n", r.factorized);
  std::printf("relative difference   = %.3e (tolerance %.3e)\n", r.rel_diff,
              tol);
  return r.rel_diff <= tol ? 0 : 1;
}

int cmd_analyze(const RunConfig& cfg, const std::string& heatmap) {
  const AdmissibleVector psi =
      AdmissibleVector::builtin().scaled(cfg.vector_scale);
  const AnalyticFunction2D f = load_input(cfg.input, cfg.threads);
  AnalyzeSpec spec;
  spec.threads = cfg.threads;
  const CoefficientArray c = analyze_spectral(f, psi, cfg.grid, spec);
  ensure_out(cfg.out_dir);
  write_coefficients_csv(cfg.out_dir + "/coefficients.csv", c);
  std::printf("wrote %s/coefficients.csv (%lld rows)\n", cfg.out_dir.c_str(),
              c.grid.total_nodes());
  if (!heatmap.empty()) {
    int is = -1, ia = -1;
    if (std::sscanf(heatmap.c_str(), "%d,%d", &is, &ia) != 2 || is < 0 ||
        ia < 0 || is >= cfg.grid.s.n || ia >= cfg.grid.a.size())
      throw UsageError("--heatmap wants s_index,a_index inside the grid");
    const std::string path = cfg.out_dir + "/heatmap_s" + std::to_string(is) +
                             "_a" + std::to_string(ia) + ".pgm";
    write_pgm(path, c.slab(is, ia));
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

CoefficientArray read_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input: " + path);
  std::string line;
  if (!std::getline(in, line) ||
      split_line(line) !=
          std::vector<std::string>{"b1", "b2", "s", "a", "re", "im"})
    throw UsageError("coefficient CSV: expected header b1,b2,s,a,re,im");
  std::vector<std::array<double, 6>> rows;
  std::vector<double> b1s, b2s, ss, as;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto parts = split_line(line);
    if (parts.size() != 6) throw UsageError("coefficient CSV: bad row");
    std::array<double, 6> r{};
    try {
      for (int k = 0; k < 6; ++k) r[k] = std::stod(parts[k]);
    } catch (const std::exception&) {
      throw UsageError("coefficient CSV: non-numeric entry");
    }
    rows.push_back(r);
    b1s.push_back(r[0]);
    b2s.push_back(r[1]);
    ss.push_back(r[2]);
    as.push_back(r[3]);
  }
  if (rows.empty()) throw UsageError("coefficient CSV: no data rows");
  ParamGrid g;
  g.b1 = infer_grid(b1s);
  g.b2 = infer_grid(b2s);
  g.s = infer_grid(ss);
  std::sort(as.begin(), as.end());
  as.erase(std::unique(as.begin(), as.end()), as.end());
  std::vector<double> pos;
  for (const double a : as)
    if (a > 0.0) pos.push_back(a);
  const bool neg = pos.size() != as.size();
  if (pos.size() < 2) throw UsageError("coefficient CSV: degenerate a axis");
  g.a = LogSymmetricGrid(pos.front(), pos.back(),
                         static_cast<int>(pos.size()), neg);
  {
    const VectorXd expect = g.a.nodes();
    if (expect.size() != static_cast<int>(as.size()))
      throw UsageError("coefficient CSV: a axis is not log-symmetric");
    for (int i = 0; i < expect.size(); ++i)
      if (std::abs(expect(i) - as[i]) > 1e-9 * std::abs(expect(i)))
        throw UsageError("coefficient CSV: a axis is not log-symmetric");
  }
  CoefficientArray c(g);
  const VectorXd an = g.a.nodes();
  for (const auto& r : rows) {
    const int i =
        static_cast<int>(std::lround((r[0] - g.b1.min) / g.b1.spacing()));
    const int j =
        static_cast<int>(std::lround((r[1] - g.b2.min) / g.b2.spacing()));
    const int is =
        static_cast<int>(std::lround((r[2] - g.s.min) / g.s.spacing()));
    int ia = -1;
    for (int k = 0; k < an.size(); ++k)
      if (std::abs(an(k) - r[3]) <= 1e-9 * std::abs(an(k))) ia = k;
    if (i < 0 || i >= g.b1.n || j < 0 || j >= g.b2.n || is < 0 ||
        is >= g.s.n || ia < 0)
      throw UsageError("coefficient CSV: row outside the inferred grid");
    c.slab(is, ia)(i, j) = Complex(r[4], r[5]);
  }
  return c;
}

int cmd_synthesize(const RunConfig& cfg) {
  if (cfg.input.rfind("builtin:", 0) == 0)
    throw UsageError("synthesize wants a coefficient CSV as --input");
  const AdmissibleVector psi =
      AdmissibleVector::builtin().scaled(cfg.vector_scale);
  const CoefficientArray c = read_coefficients(cfg.input);
  const double nyquist =
      0.5 / std::max(c.grid.b1.spacing(), c.grid.b2.spacing());
  const double xi_max = std::min(6.0, nyquist);
  const int n_xi = 2 * static_cast<int>(std::round(xi_max / 0.05)) + 1;
  const Grid1D xi(-xi_max, xi_max, n_xi);
  const SampledField2D F =
      synthesize_spectral(c, psi, xi, xi, SynthesizeSpec{cfg.threads});
  const Grid1D x(-6.0, 6.0, 121);
  const MatrixXcd vals = inverse_fourier2d(F, x.nodes(), x.nodes());
  ensure_out(cfg.out_dir);
  write_field_csv(cfg.out_dir + "/field.csv", {x, x, vals});
  std::printf("wrote %s/field.csv\n", cfg.out_dir.c_str());
  return 0;
}

int cmd_roundtrip(const RunConfig& cfg, int refine) {
  const AdmissibleVector psi =
      AdmissibleVector::builtin().scaled(cfg.vector_scale);
  const AnalyticFunction2D f = load_input(cfg.input, cfg.threads);
  const double tol = tolerance(cfg, "roundtrip", 5e-2);
  ensure_out(cfg.out_dir);
  bool ok = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int level = 0; level < std::max(1, refine); ++level) {
    const ParamGrid grid =
        refine > 1 ? refined_param_grid(level) : cfg.grid;
    ReconstructSpec spec;
    spec.threads = cfg.threads;
    const SynthesisResult r = reconstruct(f, psi, grid, spec);
    if (r.degenerate) {
      std::printf("level %d: residual 0 (degenerate zero input)\n", level);
    } else {
      std::printf("level %d: residual %.17g\n", level, r.residual);
      ok = ok && r.residual <= tol && r.residual <= prev + 1e-12;
      prev = r.residual;
    }
    if (level == std::max(1, refine) - 1)
      write_field_csv(cfg.out_dir + "/reconstructed.csv", r.field);
  }
  std::printf("wrote %s/reconstructed.csv\n", cfg.out_dir.c_str());
  return ok ? 0 : 1;
}

int cmd_radon(const RunConfig& cfg, const std::string& mode) {
  const AnalyticFunction2D f = load_input(cfg.input, cfg.threads);
  if (!f.has_space()) throw UsageError("radon wants an input with samples");
  ensure_out(cfg.out_dir);
  LineQuadSpec lspec;
  lspec.threads = cfg.threads;
  if (mode == "polar") {
    const Grid1D theta(-1.5, 1.5, 25);
    const Grid1D q(-4.0, 4.0, 33);
    const PolarSinogram p = radon_polar(f, theta, q, lspec);
    std::ofstream out(cfg.out_dir + "/sinogram.csv", std::ios::binary);
    out << "theta,q,value\n";
    for (int i = 0; i < theta.n; ++i)
      for (int j = 0; j < q.n; ++j)
        out << num(theta.node(i)) << ',' << num(q.node(j)) << ','
            << num(p.values(i, j).real()) << '\n';
    std::printf("wrote %s/sinogram.csv\n", cfg.out_dir.c_str());
    return 0;
  }
  const Grid1D v(-3.0, 3.0, 25);
  const Grid1D t(-4.0, 4.0, 33);
  if (mode == "affine") {
    const AffineSinogram s = radon_affine_direct(f, v, t, lspec);
    std::ofstream out(cfg.out_dir + "/sinogram.csv", std::ios::binary);
    out << "v,t,value\n";
    for (int i = 0; i < v.n; ++i)
      for (int j = 0; j < t.n; ++j)
        out << num(v.node(i)) << ',' << num(t.node(j)) << ','
            << num(s.values(i, j).real()) << '\n';
    std::printf("wrote %s/sinogram.csv\n", cfg.out_dir.c_str());
    return 0;
  }
  if (mode != "slice") throw UsageError("--mode wants polar|affine|slice");
  const AffineSinogram d = radon_affine_direct(f, v, t, lspec);
  double worst = 0.0;
  std::ofstream out(cfg.out_dir + "/sinogram.csv", std::ios::binary);
  out << "v,t,value\n";
  for (int i = 0; i < v.n; ++i) {
    const SampledSignal1D s = radon_affine_spectral(f, v.node(i), t);
    for (int j = 0; j < t.n; ++j) {
      worst = std::max(worst, std::abs(s.values(j) - d.values(i, j)));
      out << num(v.node(i)) << ',' << num(t.node(j)) << ','
          << num(s.values(j).real()) << '\n';
    }
  }
  const double tol = tolerance(cfg, "slice-theorem", 1e-7);
  std::printf("wrote %s/sinogram.csv\n", cfg.out_dir.c_str());
  std::printf("slice mode vs affine mode max diff = %.3e (tolerance %.3e)\n",
              worst, tol);
  return worst <= tol ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, const std::string& only) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<CheckResult> results = run_checks(cfg, only);
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  ensure_out(cfg.out_dir);

  json checks = json::array();
  bool all_pass = true;
  for (const CheckResult& r : results) {
    std::printf("%-14s %s  error %.3e (tolerance %.3e)\n", r.name.c_str(),
                r.pass ? "pass" : "FAIL", r.error, r.tol);
    all_pass = all_pass && r.pass;
    checks.push_back({{"name", r.name},
                      {"anchor", r.anchor},
                      {"lhs", r.lhs},
                      {"rhs", r.rhs},
                      {"error", r.error},
                      {"tolerance", r.tol},
                      {"pass", r.pass}});
  }
  json report;
  report["checks"] = checks;
  report["config_digest"] = config_digest(cfg);
  report["runtime_seconds"] = runtime;
  {
    std::ofstream out(cfg.out_dir + "/report.json", std::ios::binary);
    out << report.dump(2) << "\n";
  }
  {
    std::ofstream out(cfg.out_dir + "/summary.csv", std::ios::binary);
    out << "name,lhs,rhs,error,tolerance,pass\n";
    for (const CheckResult& r : results)
      out << r.name << ',' << num(r.lhs) << ',' << num(r.rhs) << ','
          << num(r.error) << ',' << num(r.tol) << ','
          << (r.pass ? 1 : 0) << '\n';
  }
  std::printf("%zu checks, %s; runtime %.1f s; report in %s\n",
              results.size(), all_pass ? "all pass" : "FAILURES",
              runtime, cfg.out_dir.c_str());
  return all_pass ? 0 : 1;
}

int cmd_decay(const RunConfig& cfg, int refine) {
  const AdmissibleVector psi =
      AdmissibleVector::builtin().scaled(cfg.vector_scale);
  const AnalyticFunction2D f = load_input(cfg.input, cfg.threads);
  ensure_out(cfg.out_dir);
  std::ofstream out(cfg.out_dir + "/decay.csv", std::ios::binary);
  out << "k1,k2,l,m,level,value\n";
  const int levels = std::clamp(refine, 1, 3);
  std::vector<std::array<int, 4>> orders = {
      {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0},
      {0, 0, 1, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}, {0, 0, 0, 2},
      {0, 0, 0, 3}, {1, 1, 1, 1}, {2, 2, 1, 1}};
  AnalyzeSpec spec;
  spec.threads = cfg.threads;
  std::vector<std::vector<double>> table(orders.size());
  for (int level = 0; level < levels; ++level) {
    const CoefficientArray c =
        analyze_spectral(f, psi, refined_param_grid(level), spec);
    for (size_t k = 0; k < orders.size(); ++k) {
      const auto& o = orders[k];
      const double val = coefficient_seminorm(c, o[0], o[1], o[2], o[3]);
      table[k].push_back(val);
      out << o[0] << ',' << o[1] << ',' << o[2] << ',' << o[3] << ','
          << level << ',' << num(val) << '\n';
    }
  }
  for (size_t k = 0; k < orders.size(); ++k) {
    if (table[k].size() < 2) continue;
    const double a = table[k][table[k].size() - 2];
    const double b = table[k].back();
    const double growth = a > 0.0 ? (b - a) / a : 0.0;
    if (growth > 0.05)
      std::printf("informational: seminorm (%d,%d,%d,%d) grows %.1f%% at the "
                  "finest level pair\n",
                  orders[k][0], orders[k][1], orders[k][2], orders[k][3],
                  100.0 * growth);
  }
  std::printf("wrote %s/decay.csv\n", cfg.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous shearlet transform and Lizorkin-space toolkit"};
  app.require_subcommand(1);

  std::string config_path, input, out_dir, only, heatmap, mode = "slice";
  int refine = 1;
  int threads = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--input", input, "input field (path or builtin:NAME)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker thread count");
    sub->add_option("--refine", refine, "number of refinement levels");
    sub->add_option("--only", only, "run a single named check");
    sub->add_option("--heatmap", heatmap, "s_index,a_index PGM slice");
    return sub;
  };
  CLI::App* adm = add_common(app.add_subcommand("admissibility"));
  CLI::App* ana = add_common(app.add_subcommand("analyze"));
  CLI::App* syn = add_common(app.add_subcommand("synthesize"));
  CLI::App* rt = add_common(app.add_subcommand("roundtrip"));
  CLI::App* rad = add_common(app.add_subcommand("radon"));
  rad->add_option("--mode", mode, "polar|affine|slice");
  CLI::App* ver = add_common(app.add_subcommand("verify"));
  CLI::App* dec = add_common(app.add_subcommand("decay"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg = parse_config(config_path);
    if (!input.empty()) cfg.input = input;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads >= 0) cfg.threads = threads;

    if (adm->parsed()) return cmd_admissibility(cfg);
    if (ana->parsed()) return cmd_analyze(cfg, heatmap);
    if (syn->parsed()) return cmd_synthesize(cfg);
    if (rt->parsed()) return cmd_roundtrip(cfg, refine);
    if (rad->parsed()) return cmd_radon(cfg, mode);
    if (ver->parsed()) return cmd_verify(cfg, only);
    if (dec->parsed()) return cmd_decay(cfg, refine);
    return 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NotAdmissible& e) {
    std::fprintf(stderr, "not admissible: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
