#include "hitchinlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "hitchinlab/bessel.hpp"
#include "hitchinlab/fiducial.hpp"
#include "hitchinlab/gauss.hpp"
#include "hitchinlab/gluing.hpp"
#include "hitchinlab/model.hpp"
#include "hitchinlab/twist.hpp"

namespace hitchinlab {

namespace {

using Checks = std::vector<CheckResult>;

MapGrid hyp_grid(double t, const GridSpec& spec, int workers) {
  return MapGrid::sample(spec, Target::H3, [t](double x, double y) { return Eigen::VectorXd(model_f_hyp(t, x, y)); },
                         workers);
}

MapGrid gauss_grid(double t, const GridSpec& spec, int workers) {
  return MapGrid::sample(
      spec, Target::DS3, [t](double x, double y) { return Eigen::VectorXd(model_gauss_map(t, x, y)); }, workers);
}

MapGrid act(const MapGrid& m, const Mat2& g) {
  MapGrid out(m.spec(), m.target());
  for (int j = 0; j < m.ny(); ++j)
    for (int i = 0; i < m.nx(); ++i) {
      Herm2 h = herm_of_mink(Vec4(m.at(i, j)));
      Herm2 a = Herm2::from_matrix(g * h.matrix() * g.adjoint());
      out.at(i, j) = Eigen::VectorXd(mink_of_herm(a));
    }
  return out;
}

double grid_distance(const MapGrid& a, const MapGrid& b) {
  double worst = 0.0;
  for (int j = 0; j < a.ny(); ++j)
    for (int i = 0; i < a.nx(); ++i) worst = std::max(worst, (a.at(i, j) - b.at(i, j)).norm());
  return worst;
}

Checks model_self_duality(int) {
  double worst = 0.0;
  for (double t : {1.0, 2.0, 8.0}) {
    GaugePair p = model_pair(t);
    for (int j = 0; j < 20; ++j)
      for (int i = 0; i < 20; ++i) {
        Point at{-1.0 + (i + 0.5) / 10.0, -1.0 + (j + 0.5) / 10.0};
        worst = std::max(worst, hitchin_residual(p, t, at).max());
      }
  }
  return {check_below("model.self_duality", "model solution, self-duality residual", worst, 1e-8)};
}

Checks frame_flatness(int) {
  Checks out;
  double t = 1.0;
  Connection d = model_flat_connection(t);
  MatrixField frame = model_frame_field(t);
  double worst = 0.0;
  for (Point at : {Point{0.3, 0.2}, Point{0.8, -0.4}, Point{-0.6, 0.5}, Point{-0.25, -0.1}, Point{1.2, 0.9}}) {
    Mat2 f = frame(at);
    worst = std::max(worst, frobenius(frame.d_x(at.x, at.y) + d.ax(at) * f));
    worst = std::max(worst, frobenius(frame.d_y(at.x, at.y) + d.ay(at) * f));
  }
  out.push_back(check_below("frame.parallel_residual", "model frame, parallel section residual", worst, 1e-9));

  double transport = 0.0;
  std::vector<std::pair<Point, Point>> paths = {
      {{0.3, 0.0}, {0.3, 1.0}}, {{0.2, 0.1}, {1.2, 0.1}}, {{0.4, -0.3}, {0.4 + std::sqrt(0.5), -0.3 + std::sqrt(0.5)}}};
  for (auto [a, b] : paths) {
    FrameSamples s = parallel_frame(d, {a, b}, model_frame(t, a.x, a.y), 400);
    transport = std::max(transport, frobenius(s.frames.back() - model_frame(t, b.x, b.y)));
  }
  out.push_back(check_below("frame.transport", "model frame, transport along unit paths", transport, 1e-7));

  LambdaFamily fam = LambdaFamily::of(model_pair(t), t);
  double flat = 0.0;
  for (cplx lambda : {cplx(1.0, 0.0), std::polar(1.0, 1.1), cplx(2.0, 0.0), cplx(0.3, 0.4)})
    for (Point at : {Point{0.35, 0.1}, Point{-0.7, 0.6}, Point{1.1, -0.2}})
      flat = std::max(flat, family_flatness(fam, lambda, at));
  out.push_back(check_below("frame.lambda_flatness", "associated family flatness", flat, 1e-8));
  return out;
}

Checks duality_involution(int workers) {
  Checks out;
  double t = 1.0;
  GridSpec spec = GridSpec::span(0.4, 1.0, 121, -0.3, 0.3, 121);
  Mat2 g;
  g << 1.1, cplx(0.0, 0.2), 0.3, cplx(1.0, 0.06) / 1.1;

  double dual_gauss = 0.0, gauss_dual = 0.0, defining = 0.0, dual_defining = 0.0, conjugated = 0.0;
  for (int variant = 0; variant < 2; ++variant) {
    MapGrid f = hyp_grid(t, spec, workers);
    MapGrid n_exact = gauss_grid(t, spec, workers);
    if (variant == 1) {
      f = act(f, g);
      n_exact = act(n_exact, g);
    }
    HopfSample w = hopf_sample(f, +1);
    MapGrid n = oblique_gauss_map(f, w, workers);
    MapGrid f_back = dual_map(n, w, workers);
    MapGrid f_dual = dual_map(n_exact, w, workers);
    MapGrid n_back = oblique_gauss_map(f_dual, hopf_sample(f_dual, +1), workers);
    dual_gauss = std::max(dual_gauss, grid_distance(f_back, f));
    gauss_dual = std::max(gauss_dual, grid_distance(n_back, n_exact));
    if (variant == 1) conjugated = grid_distance(n, n_exact);
    for (int j = 0; j < f.ny(); ++j)
      for (int i = 0; i < f.nx(); ++i) {
        defining = std::max(defining, gauss_defining_residual(f, n, w, i, j).max());
        dual_defining = std::max(dual_defining, dual_defining_residual(n_exact, f_dual, w, i, j).max());
      }
  }
  out.push_back(check_below("duality.dual_after_gauss", "dual map inverts the Gauss map", dual_gauss, 1e-6));
  out.push_back(check_below("duality.gauss_after_dual", "Gauss map inverts the dual map", gauss_dual, 1e-6));
  out.push_back(check_below("duality.equivariance", "Gauss map of a conjugated map", conjugated, 1e-6));
  out.push_back(check_below("duality.gauss_defining", "Gauss map defining equations", defining, 1e-7));
  out.push_back(check_below("duality.dual_defining", "dual map defining equations", dual_defining, 1e-7));
  return out;
}

Checks transgressive_extension(int workers) {
  Checks out;
  double t = 1.0;
  GridSpec spec = GridSpec::span(-1.0, 1.0, 161, -0.5, 0.5, 81);
  MapGrid fs = MapGrid::sample(
      spec, Target::S3, [t](double x, double y) { return Eigen::VectorXd(model_f_sph(t, x, y)); }, workers);
  MapGrid n = transgressive_extend(fs, +1, 1e-4, workers);
  double match = 0.0;
  for (int j = 0; j < n.ny(); ++j)
    for (int i = 0; i < n.nx(); ++i) {
      Point p = n.node(i, j);
      match = std::max(match, (Vec4(n.at(i, j)) - model_gauss_map(t, p.x, p.y)).norm());
    }
  out.push_back(check_below("transgressive.match", "transgressive extension across the core loop", match, 1e-5));
  int ic = 80;
  double ratio = 0.0;
  for (int j = 0; j < n.ny(); ++j) {
    Eigen::Matrix<double, 4, 2> jac;
    jac.col(0) = n.d_x(ic, j);
    jac.col(1) = n.d_y(ic, j);
    Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>>(jac).singularValues();
    ratio = std::max(ratio, sv(1) / sv(0));
  }
  out.push_back(check_below("transgressive.rank_drop", "Jacobian rank drop on the core loop", ratio, 1e-4));
  Vec4 origin(0.5, 1.0, -0.5, 0.0);
  out.push_back(check_below("transgressive.origin", "extended map at the origin",
                            (Vec4(n.at(ic, 40)) - origin).cwiseAbs().maxCoeff(), 1e-6));
  return out;
}

Checks twist_checks(int) {
  Checks out;
  double t = 1.0;
  cplx omega = -model_higgs_eigenvalue(t);
  GaugePair twisted = twist_su2_to_su11(model_pair(t), t, omega);
  GaugePair gauged = complex_gauge_action(twisted, dual_gauge(t));
  GaugePair display = dual_su11_pair(t);
  double coeff = 0.0, su11 = 0.0;
  for (Point at : {Point{0.3, 0.0}, Point{0.7, 0.2}, Point{-0.45, -0.1}}) {
    coeff = std::max({coeff, frobenius(gauged.ax(at) - display.ax(at)), frobenius(gauged.ay(at) - display.ay(at)),
                      frobenius(gauged.phi(at) - display.phi(at))});
    su11 = std::max(su11, su11_residual(twisted, t, at).max());
  }
  out.push_back(check_below("twist.display", "twisted model family against the dual display", coeff, 1e-7));
  out.push_back(check_below("twist.su11_residual", "twisted pair, indefinite self-duality", su11, 1e-5));

  double tb = 0.5;
  GaugePair back = twist_su11_to_su2(dual_su11_pair(tb), tb, -model_higgs_eigenvalue(tb));
  auto raises = [&](double x) {
    try {
      back.phi(x, 0.1);
      back.a_zbar(x, 0.1);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::NullEigenline;
    }
    return false;
  };
  int misplaced = 0;
  for (double x : {1e-8, -3e-7, 9e-7, -9.5e-7}) misplaced += raises(x) ? 0 : 1;
  for (double x : {1.2e-6, -2e-6, 0.05, -0.4}) misplaced += raises(x) ? 1 : 0;
  out.push_back(check_at_most("twist.null_band", "reverse twist null eigenline band", misplaced, 0));

  double round = 0.0;
  GaugePair rt = twist_su11_to_su2(twisted, t, omega);
  for (Point at : {Point{0.5, 0.0}, Point{0.9, 0.3}, Point{-0.6, 0.2}}) {
    round = std::max(round, hitchin_residual(back, tb, at).max());
    round = std::max(round, hitchin_residual(rt, t, at).max());
    round = std::max(round, std::abs(rt.phi(at).determinant() - model_pair(t).phi(at).determinant()));
  }
  out.push_back(check_below("twist.round_trip", "reverse twist round trip", round, 1e-6));
  return out;
}

Checks fiducial_checks(int) {
  Checks out;
  FiducialProfile p1 = solve_profile(1.0);
  FiducialProfile p4 = solve_profile(4.0);
  out.push_back(check_below("fiducial.ode_residual", "fiducial profile ODE residual",
                            std::max(p1.midpoint_residual(), p4.midpoint_residual()), 1e-8));
  double scale = 0.0;
  double k = std::pow(4.0, 2.0 / 3.0);
  for (double r : log_grid(0.05, 0.7, 60)) scale = std::max(scale, std::abs(p4.ell(r) / p1.ell(k * r) - 1.0));
  out.push_back(check_below("fiducial.scaling", "fiducial scaling law", scale, 1e-5));
  out.push_back(
      check_at_most("fiducial.decay_constant", "fiducial exponential decay constant", decay_constant(p4), 1.0));
  FiducialProfile p4n = solve_profile(4.0, 0.0, 400);
  double doubling = 0.0;
  for (double r : log_grid(p4.eps * 2.0, p4.radius, 200)) doubling = std::max(doubling, std::abs(p4.ell(r) - p4n.ell(r)));
  out.push_back(check_below("fiducial.grid_doubling", "fiducial grid refinement", doubling, 1e-7));
  return out;
}

Checks gluing_checks(int workers) {
  Checks out;
  std::vector<double> ts{4, 6, 8, 12, 16};
  double outside = 0.0;
  for (double t : ts) {
    ApproximatePair cyl = approximate_pair(RegionSpec::cylinder(), t);
    ApproximatePair disk = approximate_pair(RegionSpec::disk(), t);
    for (int k = 0; k < 40; ++k) {
      double u = (k + 0.5) / 40.0;
      for (double x : {0.05 + 0.195 * u, 0.51 + 0.48 * u}) {
        outside = std::max(outside, error_term_direct(cyl, {x, 0.2}));
        outside = std::max(outside, error_term_direct(cyl, {-x, 0.2}));
        outside = std::max(outside, error_term_direct(disk, {0.6 * x, 0.8 * x}));
      }
    }
  }
  out.push_back(check_below("gluing.support", "approximate solution error vanishes off the collars", outside, 1e-12));
  Sweep sw = error_sweep({RegionKind::Cylinder, RegionKind::Disk}, ts, 4001, workers);
  for (const auto& f : sw.fits) {
    bool cyl = f.region == RegionKind::Cylinder;
    out.push_back(check_at_most(cyl ? "gluing.slope_cylinder" : "gluing.slope_disk",
                                cyl ? "error decay on cylinders" : "error decay on zero disks", f.slope,
                                cyl ? -0.4 : -0.25));
  }
  return out;
}

Checks indicial_checks(int) {
  IndicialData d = indicial_data();
  long mismatch = 0;
  mismatch += d.a == -1 && d.b == 1 && d.c == 2 ? 0 : 1;
  mismatch += d.roots == std::vector<long>{-1, 2} ? 0 : 1;
  mismatch += d.diagonal_limit == d.offdiagonal_limit ? 0 : 1;
  mismatch += d.window_lo == -1 && d.window_hi == 2 ? 0 : 1;
  return {check_at_most("indicial.roots", "indicial roots of the core loop operator", static_cast<double>(mismatch), 0)};
}

Checks bessel_checks(int) {
  Checks out;
  double wr = 0.0;
  for (double nu : {0.0, 1.0 / 3.0, 2.0, 10.0})
    for (double x : {0.5, 5.0, 50.0}) {
      double s = x * (bessel_I_scaled(nu, x) * bessel_K_scaled(nu + 1, x) +
                      bessel_I_scaled(nu + 1, x) * bessel_K_scaled(nu, x));
      wr = std::max(wr, std::abs(s - 1.0));
    }
  out.push_back(check_below("bessel.wronskian", "modified Bessel Wronskian identity", wr, 1e-9));

  std::vector<double> grid = log_grid(1e-3, 1e3, 400);
  std::vector<double> eps;
  for (double nu : {10.0, 20.0, 50.0, 100.0}) eps.push_back(product_bound(nu, grid).epsilon());
  out.push_back(check_below("bessel.product_bound", "product bound at order 50", eps[2], 0.01));
  double rise = -1.0;
  for (size_t k = 1; k < eps.size(); ++k) rise = std::max(rise, eps[k] - eps[k - 1]);
  out.push_back(check_below("bessel.product_monotone", "product bound decreasing in the order", rise, 0.0));

  double nu = 10.0, x0 = 2.0, u0 = 1.0;
  DecayCertificate zero{[](double) { return 0.0; }, 0.0, 1.0};
  PerturbedSolution s0 = perturbed_bessel_solve(zero, nu, x0, u0);
  double exact = 0.0;
  for (size_t k = 0; k < s0.x.size(); ++k)
    exact = std::max(exact, std::abs(s0.u[k] - u0 * std::exp(log_bessel_K(nu, s0.x[k]) - log_bessel_K(nu, x0))));
  out.push_back(check_below("bessel.zero_forcing", "perturbed Bessel solver, unforced case", exact, 1e-12));

  auto h = [](double x) { return std::exp(-x); };
  PerturbedSolution s = perturbed_bessel_solve({h, 1.0, 1.0}, nu, x0, u0);
  out.push_back(check_at_most("bessel.decay", "perturbed Bessel decay exponent",
                              fitted_decay_rate(s, x0, x0 + 40.0), -0.25));
  out.push_back(check_below("bessel.ode_residual", "perturbed Bessel plug-back residual",
                            bessel_ode_residual(s, h, nu, false), 1e-7));

  FiducialProfile p = solve_profile(1.0);
  double worst_rate = -1e300;
  for (int k : {0, 1, -1, 3}) {
    BesselModeData m = bessel_mode(p, k);
    auto hk = [&p, k](double x) { return bessel_mode_potential(p, k, x); };
    PerturbedSolution sk = perturbed_bessel_solve(fitted_certificate(hk, 0.9, x0), m.nu, x0, 1.0);
    worst_rate = std::max(worst_rate, fitted_decay_rate(sk, x0, x0 + 40.0));
  }
  out.push_back(check_at_least("bessel.mode_closure", "fiducial linearization modes decay", -worst_rate, 0.2));
  return out;
}

Checks harmonicity_checks(int workers) {
  Checks out;
  double t = 1.0;
  auto slice = [](double x, double y) {
    double q = x * x + y * y;
    Eigen::VectorXd v(4);
    v << (q + 1) / (2 * x), 0.0, (q - 1) / (2 * x), y / x;
    return v;
  };
  struct Case {
    const char* id;
    const char* ref;
    Target target;
    MapGrid::Sampler f;
  };
  std::vector<Case> cases{
      {"hyperbolic", "model hyperbolic map", Target::H3,
       [t](double x, double y) { return Eigen::VectorXd(model_f_hyp(t, x, y)); }},
      {"gauss", "model Gauss map", Target::DS3,
       [t](double x, double y) { return Eigen::VectorXd(model_gauss_map(t, x, y)); }},
      {"slice", "totally geodesic slice", Target::H3, slice}};
  auto center_residual = [&](const Case& c, int n) {
    MapGrid m = MapGrid::sample(GridSpec::span(0.4, 0.8, n, -0.2, 0.2, n), c.target, c.f, workers);
    double worst = 0.0;
    for (int j = 0; j < 5; ++j)
      for (int i = 0; i < 5; ++i) {
        int ii = (n - 1) / 4 * (i + 1) / 2 + (n - 1) / 4, jj = (n - 1) / 4 * (j + 1) / 2 + (n - 1) / 4;
        worst = std::max(worst, harmonicity_residual(m, ii, jj));
      }
    return worst;
  };
  for (const auto& c : cases) {
    double coarse = center_residual(c, 41), fine = center_residual(c, 81);
    out.push_back(check_below(std::string("harmonic.residual.") + c.id, c.ref, fine, 1e-4));
    out.push_back(check_at_least(std::string("harmonic.order.") + c.id, c.ref, coarse / fine, 3.2));
  }
  MapGrid m = MapGrid::sample(GridSpec::span(0.4, 0.8, 81, -0.2, 0.2, 81), Target::H3, cases[0].f, workers);
  for (int j = 0; j < m.ny(); ++j)
    for (int i = 0; i < m.nx(); ++i) {
      Point p = m.node(i, j);
      Vec4 f = m.at(i, j);
      Vec4 e(0.0, 1.0, 0.0, 0.0);
      double bump = 1e-2 * std::exp(-(std::pow(p.x - 0.6, 2) + p.y * p.y) / 0.01);
      Vec4 g = f + bump * e;
      g /= std::sqrt(-mink_inner(g, g));
      m.at(i, j) = g;
    }
  out.push_back(check_at_least("harmonic.perturbation", "detector sensitivity", harmonicity_residual(m, 40, 40), 1e-3));
  return out;
}

Checks energy_checks(int workers) {
  Checks out;
  double t = 1.0;
  cplx omega = -model_higgs_eigenvalue(t);
  GaugePair p = model_pair(t);
  std::vector<Point> pts;
  for (int k = 0; k < 10; ++k) pts.push_back({0.3 + 0.09 * k, -0.3 + 0.07 * k});
  double line = 0.0;
  for (Point at : pts) line = std::max(line, line_curvature_residual(p, t, omega, at));
  out.push_back(check_below("energy.line_curvature", "curvature of the eigenline", line, 1e-7));

  GridSpec spec = GridSpec::span(0.2, 1.4, 121, -0.6, 0.6, 121);
  MapGrid f = hyp_grid(t, spec, workers);
  MapGrid n = gauss_grid(t, spec, workers);
  LambdaFamily fam = LambdaFamily::of(p, t);
  double density = 0.0, section = 0.0;
  for (int k = 0; k < 10; ++k) {
    int i = 16 + 10 * k, j = 20 + 8 * k;
    density = std::max(density, std::abs(energy_density_identity(p, t, omega, f, n, i, j).residual()));
    Point at = f.node(i, j);
    section = std::max(section, std::abs(section_energy_density(fam.phi(at), fam.psi(at)) -
                                         dirichlet_energy_density(f, i, j)));
  }
  out.push_back(check_below("energy.density_identity", "energy densities of the map and its Gauss map", density, 1e-5));
  out.push_back(check_below("energy.section", "section energy against Dirichlet energy", section, 1e-6));
  return out;
}

struct Criterion {
  int id;
  const char* title;
  double budget;
  std::function<Checks(int)> run;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(int workers) {
  std::vector<Criterion> all{
      {1, "model self-duality", 5, model_self_duality},
      {2, "frame and flatness", 10, frame_flatness},
      {3, "duality involution", 30, duality_involution},
      {4, "transgressive extension", 30, transgressive_extension},
      {5, "twist", 10, twist_checks},
      {6, "fiducial profile", 60, fiducial_checks},
      {7, "gluing error decay", 120, gluing_checks},
      {8, "indicial data", 5, indicial_checks},
      {9, "Bessel suite", 60, bessel_checks},
      {10, "harmonicity detector", 30, harmonicity_checks},
      {11, "energy identities", 10, energy_checks},
  };
  std::vector<CriterionResult> out;
  for (const auto& c : all) {
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    r.budget = c.budget;
    auto start = std::chrono::steady_clock::now();
    try {
      r.checks = c.run(workers);
    } catch (const std::exception& e) {
      r.failure = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.checks.push_back(check_below("runtime." + std::to_string(c.id), "wall-clock budget", r.seconds, c.budget));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> flatten(const std::vector<CriterionResult>& criteria) {
  std::vector<CheckResult> out;
  for (const auto& c : criteria) {
    if (!c.failure.empty())
      out.push_back({"criterion." + std::to_string(c.id) + ".error", c.failure, std::nan(""), 0.0, false});
    out.insert(out.end(), c.checks.begin(), c.checks.end());
  }
  return out;
}

std::string summary_line(const CriterionResult& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "criterion %2d %-26s %s  (%.2f s)", c.id, c.title.c_str(), c.pass() ? "PASS" : "FAIL",
                c.seconds);
  std::string line = buf;
  for (const auto& k : c.checks)
    if (!k.pass) line += "\n    failed " + k.check_id + ": value " + format_number(k.value) + ", threshold " + format_number(k.threshold);
  if (!c.failure.empty()) line += "\n    error: " + c.failure;
  return line;
}

}  // namespace hitchinlab
