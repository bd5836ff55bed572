#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hitchinlab/acceptance.hpp"
#include "hitchinlab/bessel.hpp"
#include "hitchinlab/fiducial.hpp"
#include "hitchinlab/gauss.hpp"
#include "hitchinlab/gluing.hpp"
#include "hitchinlab/model.hpp"
#include "hitchinlab/parallel.hpp"
#include "hitchinlab/report.hpp"
#include "hitchinlab/twist.hpp"

namespace fs = std::filesystem;
using namespace hitchinlab;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::vector<std::pair<fs::path, std::string>> files;
  std::vector<CheckResult> checks;
  std::vector<std::string> console;
};

std::string join(const std::vector<double>& v) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + format_number(v[k]);
  return s;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k];
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

MapGrid load_grid(const std::string& path, Target want) {
  require(fs::exists(path), "input grid not found: " + path);
  require(fs::exists(sidecar_path(path)), "input grid sidecar not found: " + sidecar_path(path).string());
  MapGrid g;
  try {
    g = read_mapgrid(path);
  } catch (const Error& e) {
    throw UsageError(std::string("cannot read input grid: ") + e.what());
  }
  require(g.target() == want, std::string("input grid target is ") + to_string(g.target()) + ", expected " +
                                  to_string(want));
  require(g.nx() >= 9 && g.ny() >= 9, "input grid needs at least 9 nodes per direction");
  return g;
}

std::vector<Point> grid_points(const MapGrid& g) {
  std::vector<Point> pts;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) pts.push_back(g.node(i, j));
  return pts;
}

std::string field_csv(const MatrixField& f, const std::vector<Point>& pts, const Provenance& prov) {
  std::vector<Mat2> values;
  values.reserve(pts.size());
  for (Point p : pts) values.push_back(f(p));
  return render_csv(matrix_field_table(pts, values), prov);
}

struct ModelArgs {
  double t = 1.0;
  std::vector<int> grid{40, 20};
  std::vector<double> xrange{-1.0, 1.0};
  double sigma = 1.0;
  std::string out;
};

Output model_eval(const ModelArgs& a, const Provenance& prov, int workers) {
  require(a.t > 0.0, "--t must be positive");
  require(a.grid.size() == 2 && a.grid[0] >= 9 && a.grid[1] >= 9, "--grid needs NX,NY with both >= 9");
  require(a.xrange.size() == 2 && a.xrange[0] < a.xrange[1], "--xrange needs a,b with a < b");
  require(a.sigma > 0.0, "--sigma must be positive");
  int nx = a.grid[0], ny = a.grid[1];
  double hx = (a.xrange[1] - a.xrange[0]) / nx;
  GridSpec spec{a.xrange[0] + 0.5 * hx, 0.0, hx, a.sigma / ny, nx, ny};
  for (int i = 0; i < nx; ++i)
    require(std::abs(spec.node(i, 0).x) >= 0.5 * hx * (1.0 - 1e-9),
            "grid node within half a cell of the core loop x = 0");

  double t = a.t;
  MapGrid f = MapGrid::sample(spec, Target::H3, [t](double x, double y) { return Eigen::VectorXd(model_f_hyp(t, x, y)); },
                              workers);
  MapGrid n = MapGrid::sample(
      spec, Target::DS3, [t](double x, double y) { return Eigen::VectorXd(model_gauss_map(t, x, y)); }, workers);
  MapGrid s = MapGrid::sample(spec, Target::S3, [t](double x, double y) { return Eigen::VectorXd(model_f_sph(t, x, y)); },
                              workers);
  GaugePair p = model_pair(t);
  std::vector<Point> pts = grid_points(f);
  std::vector<double> res(pts.size());
  parallel_for(pts.size(), workers, [&](size_t k) { res[k] = hitchin_residual(p, t, pts[k]).max(); });
  double worst = 0.0;
  for (double r : res) worst = std::max(worst, r);
  SymmetryReport sym = model_symmetry_check(t, pts);
  double constraint = std::max({f.max_constraint_error(), n.max_constraint_error(), s.max_constraint_error()});

  Output o;
  o.checks.push_back(check_below("model.self_duality", "model solution, self-duality residual", worst, 1e-8));
  o.checks.push_back(check_below("model.symmetry", "model symmetry identities", sym.max(), 1e-10));
  o.checks.push_back(check_below("model.target_constraint", "model maps lie on their targets", constraint, 1e-9));
  fs::path dir = a.out;
  o.files.push_back({dir / "pair_ax.csv", field_csv(p.ax, pts, prov)});
  o.files.push_back({dir / "pair_ay.csv", field_csv(p.ay, pts, prov)});
  o.files.push_back({dir / "pair_phi.csv", field_csv(p.phi, pts, prov)});
  o.files.push_back({dir / "f_hyp.csv", mapgrid_csv(f, prov)});
  o.files.push_back({sidecar_path(dir / "f_hyp.csv"), mapgrid_sidecar(f)});
  o.files.push_back({dir / "gauss_map.csv", mapgrid_csv(n, prov)});
  o.files.push_back({sidecar_path(dir / "gauss_map.csv"), mapgrid_sidecar(n)});
  o.files.push_back({dir / "f_sph.csv", mapgrid_csv(s, prov)});
  o.files.push_back({sidecar_path(dir / "f_sph.csv"), mapgrid_sidecar(s)});
  o.files.push_back({dir / "report.json", report_json(o.checks, prov)});
  return o;
}

struct FiducialArgs {
  double t = 1.0;
  double rmax = 0.0;
  int n = 200;
  std::string out;
};

Output fiducial_solve(const FiducialArgs& a, const Provenance& prov) {
  require(a.t > 0.0, "--t must be positive");
  require(a.n >= 200, "--n must be at least 200");
  require(a.rmax == 0.0 || a.rmax >= 3.0 * std::pow(a.t, -2.0 / 3.0), "--rmax must be at least 3 t^(-2/3)");
  FiducialProfile p = solve_profile(a.t, a.rmax, a.n);
  CsvTable table;
  table.columns = {"r", "ell", "dell_dr", "F_t"};
  std::vector<double> rs;
  for (double s : p.s) rs.push_back(std::exp(s));
  std::sort(rs.begin(), rs.end());
  for (double r : rs) {
    table.rows.push_back({format_number(r), format_number(p.ell(r)), format_number(p.dell_dr(r)), format_number(p.f_t(r))});
  }
  Output o;
  o.checks.push_back(check_below("fiducial.ode_residual", "fiducial profile ODE residual", p.midpoint_residual(), 1e-8));
  o.checks.push_back(check_below("fiducial.collocation", "fiducial collocation residual", p.collocation_residual, 1e-9));
  o.checks.push_back(
      check_below("fiducial.outer_limit", "profile coefficient at the outer radius", std::abs(p.f_t(p.radius) - 0.25), 1e-6));
  o.checks.push_back(check_at_most("fiducial.decay_constant", "fiducial exponential decay constant", decay_constant(p), 1.0));
  o.files.push_back({a.out, render_csv(table, prov)});
  o.files.push_back({sidecar_path(a.out), report_json(o.checks, prov)});
  o.console.push_back("b0 = " + format_number(p.b0) + ", radius = " + format_number(p.radius) +
                      ", newton steps = " + std::to_string(p.newton_steps));
  return o;
}

double max_residual(const MapGrid& g, const std::function<double(int, int)>& f) {
  double worst = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) worst = std::max(worst, f(i, j));
  return worst;
}

struct GaussArgs {
  std::string in;
  std::string branch = "+";
  std::string out;
};

Output gauss_map(const GaussArgs& a, const Provenance& prov, int workers) {
  require(a.branch == "+" || a.branch == "-", "--branch must be + or -");
  MapGrid f = load_grid(a.in, Target::H3);
  HopfSample w = hopf_sample(f, a.branch == "+" ? +1 : -1);
  MapGrid n = oblique_gauss_map(f, w, workers);
  double r = max_residual(f, [&](int i, int j) { return gauss_defining_residual(f, n, w, i, j).max(); });
  Output o;
  o.checks.push_back(check_below("gauss.defining", "Gauss map defining equations", r, 1e-7));
  o.files.push_back({a.out, mapgrid_csv(n, prov)});
  o.files.push_back({sidecar_path(a.out), mapgrid_sidecar(n, o.checks)});
  return o;
}

Output gauss_dual(const GaussArgs& a, const Provenance& prov, int workers) {
  MapGrid n = load_grid(a.in, Target::DS3);
  HopfSample w = hopf_sample(n, +1);
  MapGrid f = dual_map(n, w, workers);
  for (const auto& e : w.events) f.events.push_back(e);
  double r = max_residual(n, [&](int i, int j) { return dual_defining_residual(n, f, w, i, j).max(); });
  Output o;
  o.checks.push_back(check_below("gauss.dual_defining", "dual map defining equations", r, 1e-7));
  o.files.push_back({a.out, mapgrid_csv(f, prov)});
  o.files.push_back({sidecar_path(a.out), mapgrid_sidecar(f, o.checks)});
  return o;
}

Output gauss_extend(const GaussArgs& a, const Provenance& prov, int workers) {
  MapGrid s = load_grid(a.in, Target::S3);
  TransgressivityReport rep = transgressivity_check(s);
  Output o;
  o.checks.push_back(check_below("gauss.transgressive_hopf", "Hopf differential on the core loop", rep.max_hopf, 1e-4));
  o.checks.push_back(check_below("gauss.transgressive_normal", "normal condition on the core loop",
                                 rep.max_normal_residual, 1e-4));
  MapGrid n = transgressive_extend(s, +1, 1e-4, workers);
  double norm = max_residual(n, [&](int i, int j) {
    const Eigen::VectorXd& v = n.at(i, j);
    return std::abs(-v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3] - 1.0);
  });
  o.checks.push_back(check_below("gauss.extend_norm", "extended map stays in de Sitter space", norm, 1e-5));
  o.files.push_back({a.out, mapgrid_csv(n, prov)});
  o.files.push_back({sidecar_path(a.out), mapgrid_sidecar(n, o.checks)});
  return o;
}

struct TwistArgs {
  std::string direction;
  double t = 1.0;
  std::string out;
};

std::vector<Point> twist_points() {
  std::vector<Point> pts;
  for (double y : {0.0, 0.25, 0.5})
    for (int k = -10; k <= 10; ++k)
      if (k != 0) pts.push_back({0.1 * k, y});
  return pts;
}

Output twist(const TwistArgs& a, const Provenance& prov) {
  require(a.t > 0.0, "--t must be positive");
  double t = a.t;
  cplx omega = -model_higgs_eigenvalue(t);
  std::vector<Point> pts = twist_points();
  FdScheme fd{1e-3, 6};
  Output o;
  fs::path dir = a.out;
  GaugePair out;
  std::string prefix;
  if (a.direction == "forward") {
    out = twist_su2_to_su11(model_pair(t), t, omega, fd);
    GaugePair gauged = complex_gauge_action(out, dual_gauge(t), fd);
    GaugePair display = dual_su11_pair(t);
    double res = 0.0, coeff = 0.0;
    for (Point p : pts) {
      res = std::max(res, su11_residual(out, t, p).max());
      coeff = std::max({coeff, frobenius(gauged.ax(p) - display.ax(p)), frobenius(gauged.ay(p) - display.ay(p)),
                        frobenius(gauged.phi(p) - display.phi(p))});
    }
    o.checks.push_back(check_below("twist.su11_residual", "twisted pair, indefinite self-duality", res, 1e-5));
    o.checks.push_back(check_below("twist.display", "twisted model family against the dual display", coeff, 1e-7));
    prefix = "su11_";
  } else {
    out = twist_su11_to_su2(dual_su11_pair(t), t, omega, fd);
    double res = 0.0;
    for (Point p : pts) res = std::max(res, hitchin_residual(out, t, p).max());
    o.checks.push_back(check_below("twist.round_trip", "reverse twist self-duality", res, 1e-6));
    prefix = "su2_";
  }
  o.files.push_back({dir / (prefix + "ax.csv"), field_csv(out.ax, pts, prov)});
  o.files.push_back({dir / (prefix + "ay.csv"), field_csv(out.ay, pts, prov)});
  o.files.push_back({dir / (prefix + "phi.csv"), field_csv(out.phi, pts, prov)});
  o.files.push_back({dir / "report.json", report_json(o.checks, prov)});
  return o;
}

struct GlueArgs {
  std::vector<double> ts{4, 6, 8, 12, 16};
  std::vector<std::string> regions{"cylinder", "disk"};
  int samples = 4001;
  std::string out;
};

Output glue_err(const GlueArgs& a, const Provenance& prov, int workers) {
  require(a.ts.size() >= 2, "--t-list needs at least two values");
  for (double t : a.ts) require(t > 0.0, "--t-list values must be positive");
  require(a.samples >= 3, "--samples must be at least 3");
  std::vector<RegionKind> kinds;
  for (const auto& r : a.regions) {
    require(r == "cylinder" || r == "disk" || r == "interior", "unknown region: " + r);
    kinds.push_back(region_from_string(r));
  }
  Sweep sw = error_sweep(kinds, a.ts, a.samples, workers);
  CsvTable table;
  table.columns = {"t", "region", "sup_err", "weighted_sup_err"};
  for (const auto& r : sw.rows)
    table.rows.push_back(
        {format_number(r.t), to_string(r.region), format_number(r.sup_err), format_number(r.weighted_sup_err)});
  Output o;
  for (const auto& f : sw.fits) {
    bool cyl = f.region == RegionKind::Cylinder;
    o.checks.push_back(check_at_most(cyl ? "gluing.slope_cylinder" : "gluing.slope_disk",
                                     cyl ? "error decay on cylinders" : "error decay on zero disks", f.slope,
                                     cyl ? -0.4 : -0.25));
    o.console.push_back(std::string(to_string(f.region)) + " slope " + format_number(f.slope));
  }
  fs::path dir = a.out;
  o.files.push_back({dir / "glue_err.csv", render_csv(table, prov)});
  o.files.push_back({dir / "glue_fit.json", report_json(o.checks, prov)});
  return o;
}

struct BesselArgs {
  std::vector<double> nus{0, 1.0 / 3.0, 2, 10, 50};
  std::string out;
};

Output bessel_check(const BesselArgs& a, const Provenance& prov) {
  require(!a.nus.empty(), "--nu-list must not be empty");
  for (double nu : a.nus) require(nu >= 0.0, "--nu-list values must be non-negative");
  CsvTable values;
  values.columns = {"nu", "x", "log_I", "log_K", "wronskian_err", "quadrature_err"};
  CsvTable bounds;
  bounds.columns = {"nu", "product_max_excess", "product_at", "monotone"};
  std::vector<double> grid = log_grid(1e-3, 1e3, 400);
  Output o;
  for (double nu : a.nus) {
    double wr = 0.0, quad = 0.0;
    for (double x : {0.5, 5.0, 50.0}) {
      double w = std::abs(x * (bessel_I_scaled(nu, x) * bessel_K_scaled(nu + 1, x) +
                               bessel_I_scaled(nu + 1, x) * bessel_K_scaled(nu, x)) -
                          1.0);
      double q = std::abs(bessel_K_quadrature(nu, x) / bessel_K(nu, x) - 1.0);
      wr = std::max(wr, w);
      quad = std::max(quad, q);
      values.rows.push_back({format_number(nu), format_number(x), format_number(log_bessel_I(nu, x)),
                             format_number(log_bessel_K(nu, x)), format_number(w), format_number(q)});
    }
    std::string tag = format_number(nu);
    o.checks.push_back(check_below("bessel.wronskian.nu=" + tag, "modified Bessel Wronskian identity", wr, 1e-9));
    o.checks.push_back(check_below("bessel.quadrature.nu=" + tag, "K against its integral representation", quad, 1e-8));
    ProductBound pb = product_bound(nu, grid);
    std::string mono = "not-checked";
    if (nu >= 10.0) {
      bool ok = monotonicity_check(nu).pass();
      mono = ok ? "pass" : "fail";
      o.checks.push_back(check_at_least("bessel.monotone.nu=" + tag, "scaled Bessel monotonicity", ok ? 1.0 : 0.0, 1.0));
    }
    if (nu >= 50.0)
      o.checks.push_back(check_below("bessel.product_bound.nu=" + tag, "product bound", pb.epsilon(), 0.01));
    bounds.rows.push_back({tag, format_number(pb.max_excess), format_number(pb.at), mono});
  }
  fs::path dir = a.out;
  o.files.push_back({dir / "bessel_values.csv", render_csv(values, prov)});
  o.files.push_back({dir / "bessel_bounds.csv", render_csv(bounds, prov)});
  o.files.push_back({dir / "report.json", report_json(o.checks, prov)});
  return o;
}

Output verify_acceptance(const std::string& out, const Provenance& prov, int workers) {
  auto criteria = run_acceptance(workers);
  Output o;
  for (const auto& c : criteria) o.console.push_back(summary_line(c));
  o.checks = flatten(criteria);
  o.files.push_back({out, report_json(o.checks, prov)});
  return o;
}

int emit(const Output& o) {
  for (const auto& [path, text] : o.files) write_text(path, text);
  for (const auto& line : o.console) std::cout << line << "\n";
  int failed = 0;
  for (const auto& c : o.checks)
    if (!c.pass) {
      ++failed;
      std::cerr << "check failed: " << c.check_id << " value " << format_number(c.value) << " threshold "
                << format_number(c.threshold) << "\n";
    }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hitchinlab: numerical companion for Hitchin self-duality and its harmonic maps", "hitchinlab"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);
  app.fallthrough();
  std::string workers_flag = "auto";
  app.add_option("--workers", workers_flag, "worker threads (or env HITCHINLAB_WORKERS)");

  ModelArgs model;
  auto* model_cmd = app.add_subcommand("model", "closed-form model solution")->require_subcommand(1);
  auto* model_eval_cmd = model_cmd->add_subcommand("eval", "evaluate pair, maps and symmetry report");
  model_eval_cmd->add_option("--t", model.t, "scale parameter")->required();
  model_eval_cmd->add_option("--grid", model.grid, "NX,NY")->delimiter(',')->expected(2)->required();
  model_eval_cmd->add_option("--xrange", model.xrange, "a,b")->delimiter(',')->expected(2)->required();
  model_eval_cmd->add_option("--sigma", model.sigma, "cylinder period")->required();
  model_eval_cmd->add_option("--out", model.out, "output directory")->required();

  FiducialArgs fid;
  auto* fid_cmd = app.add_subcommand("fiducial", "fiducial profile")->require_subcommand(1);
  auto* fid_solve = fid_cmd->add_subcommand("solve", "solve the radial profile");
  fid_solve->add_option("--t", fid.t, "scale parameter")->required();
  fid_solve->add_option("--rmax", fid.rmax, "outer radius (0: default)");
  fid_solve->add_option("--n", fid.n, "collocation nodes");
  fid_solve->add_option("--out", fid.out, "profile CSV")->required();

  GaussArgs gauss;
  auto* gauss_cmd = app.add_subcommand("gauss", "Gauss and dual maps")->require_subcommand(1);
  auto* gauss_map_cmd = gauss_cmd->add_subcommand("map", "oblique Gauss map of an H3 grid");
  auto* gauss_dual_cmd = gauss_cmd->add_subcommand("dual", "dual map of a dS3 grid");
  auto* gauss_ext_cmd = gauss_cmd->add_subcommand("extend", "transgressive extension of an S3 grid");
  for (auto* c : {gauss_map_cmd, gauss_dual_cmd, gauss_ext_cmd}) {
    c->add_option("--in", gauss.in, "input grid CSV")->required();
    c->add_option("--out", gauss.out, "output grid CSV")->required();
  }
  gauss_map_cmd->add_option("--branch", gauss.branch, "+ or -")->required();

  TwistArgs tw;
  auto* twist_cmd = app.add_subcommand("twist", "twist between SU(2) and SU(1,1) pairs")->require_subcommand(1);
  auto* tw_fwd = twist_cmd->add_subcommand("forward", "SU(2) model to SU(1,1)");
  auto* tw_bwd = twist_cmd->add_subcommand("backward", "SU(1,1) dual pair to SU(2)");
  for (auto* c : {tw_fwd, tw_bwd}) {
    c->add_option("--t", tw.t, "scale parameter")->required();
    c->add_option("--out", tw.out, "output directory")->required();
  }

  GlueArgs glue;
  auto* glue_cmd = app.add_subcommand("glue", "approximate solutions")->require_subcommand(1);
  auto* glue_err_cmd = glue_cmd->add_subcommand("err", "error term sweep and decay fit");
  glue_err_cmd->add_option("--t-list", glue.ts, "t values")->delimiter(',')->required();
  glue_err_cmd->add_option("--regions", glue.regions, "cylinder,disk")->delimiter(',')->required();
  glue_err_cmd->add_option("--samples", glue.samples, "samples per region");
  glue_err_cmd->add_option("--out", glue.out, "output directory")->required();

  BesselArgs bes;
  auto* bessel_cmd = app.add_subcommand("bessel", "modified Bessel functions")->require_subcommand(1);
  auto* bessel_check_cmd = bessel_cmd->add_subcommand("check", "identities, bounds and monotonicity");
  bessel_check_cmd->add_option("--nu-list", bes.nus, "orders")->delimiter(',')->required();
  bessel_check_cmd->add_option("--out", bes.out, "output directory")->required();

  std::string verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "acceptance suite")->require_subcommand(1);
  auto* verify_acc = verify_cmd->add_subcommand("acceptance", "run every acceptance criterion");
  verify_acc->add_option("--out", verify_out, "report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int requested = 0;
  if (workers_flag != "auto") {
    try {
      requested = std::stoi(workers_flag);
    } catch (...) {
      requested = -1;
    }
    if (requested < 1) {
      std::cerr << "usage error: --workers must be a positive integer\n";
      return 2;
    }
  }
  int workers = resolve_workers(requested);

  Provenance prov;
  auto flags = [&](std::vector<std::pair<std::string, std::string>> f) {
    f.push_back({"workers", workers_flag});
    prov.flags = std::move(f);
  };
  std::function<Output()> job;
  if (model_eval_cmd->parsed()) {
    prov.subcommand = "model eval";
    flags({{"t", format_number(model.t)},
           {"grid", std::to_string(model.grid.at(0)) + "," + std::to_string(model.grid.at(1))},
           {"xrange", join(model.xrange)},
           {"sigma", format_number(model.sigma)},
           {"out", model.out}});
    job = [&] { return model_eval(model, prov, workers); };
  } else if (fid_solve->parsed()) {
    prov.subcommand = "fiducial solve";
    flags({{"t", format_number(fid.t)}, {"rmax", format_number(fid.rmax)}, {"n", std::to_string(fid.n)}, {"out", fid.out}});
    job = [&] { return fiducial_solve(fid, prov); };
  } else if (gauss_map_cmd->parsed()) {
    prov.subcommand = "gauss map";
    flags({{"in", gauss.in}, {"branch", gauss.branch}, {"out", gauss.out}});
    job = [&] { return gauss_map(gauss, prov, workers); };
  } else if (gauss_dual_cmd->parsed()) {
    prov.subcommand = "gauss dual";
    flags({{"in", gauss.in}, {"out", gauss.out}});
    job = [&] { return gauss_dual(gauss, prov, workers); };
  } else if (gauss_ext_cmd->parsed()) {
    prov.subcommand = "gauss extend";
    flags({{"in", gauss.in}, {"out", gauss.out}});
    job = [&] { return gauss_extend(gauss, prov, workers); };
  } else if (tw_fwd->parsed() || tw_bwd->parsed()) {
    tw.direction = tw_fwd->parsed() ? "forward" : "backward";
    prov.subcommand = "twist " + tw.direction;
    flags({{"t", format_number(tw.t)}, {"out", tw.out}});
    job = [&] { return twist(tw, prov); };
  } else if (glue_err_cmd->parsed()) {
    prov.subcommand = "glue err";
    flags({{"t-list", join(glue.ts)},
           {"regions", join(glue.regions)},
           {"samples", std::to_string(glue.samples)},
           {"out", glue.out}});
    job = [&] { return glue_err(glue, prov, workers); };
  } else if (bessel_check_cmd->parsed()) {
    prov.subcommand = "bessel check";
    flags({{"nu-list", join(bes.nus)}, {"out", bes.out}});
    job = [&] { return bessel_check(bes, prov); };
  } else if (verify_acc->parsed()) {
    prov.subcommand = "verify acceptance";
    flags({{"out", verify_out}});
    job = [&] { return verify_acceptance(verify_out, prov, workers); };
  } else {
    std::cerr << app.help();
    return 2;
  }

  Output out;
  try {
    out = job();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Usage) {
      std::cerr << "usage error: " << e.what() << "\n";
      return 2;
    }
    std::cout << error_json(to_string(e.kind()), e.what(), prov);
    return 1;
  } catch (const std::exception& e) {
    std::cout << error_json("Internal", e.what(), prov);
    return 1;
  }
  try {
    return emit(out);
  } catch (const std::exception& e) {
    std::cout << error_json("Io", e.what(), prov);
    return 1;
  }
}
