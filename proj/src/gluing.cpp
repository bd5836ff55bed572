#include "hitchinlab/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hitchinlab/model.hpp"
#include "hitchinlab/parallel.hpp"

namespace hitchinlab {

namespace {

struct Bump {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
};

Bump psi(double u) {
  if (u <= 0.0) return {};
  double e = std::exp(-1.0 / u);
  return {e, e / (u * u), e * (1.0 / std::pow(u, 4) - 2.0 / std::pow(u, 3))};
}

// smooth step: 0 for u <= 0, 1 for u >= 1
Bump step(double u) {
  if (u <= 0.0) return {0.0, 0.0, 0.0};
  if (u >= 1.0) return {1.0, 0.0, 0.0};
  Bump f = psi(u);
  Bump g0 = psi(1.0 - u);
  Bump g{g0.v, -g0.d1, g0.d2};
  double s = f.v + g.v;
  double num = f.d1 * g.v - f.v * g.d1;
  double den = s * s;
  double num_d = f.d2 * g.v - f.v * g.d2;
  double den_d = 2.0 * s * (f.d1 + g.d1);
  return {f.v / s, num / den, (num_d * den - num * den_d) / (den * den)};
}

Mat2 diag_pm(cplx a) {
  Mat2 m;
  m << a, 0.0, 0.0, -a;
  return m;
}

struct CylinderGauge {
  cplx a, a1, a2;
  Cutoff chi;
};

// a = chi(x) * (1/2) Log tanh(tx) with the principal branch for x < 0
CylinderGauge cylinder_gauge(double t, double x) {
  CylinderGauge g;
  g.chi = cutoff(x);
  if (g.chi.value == 0.0 && g.chi.d1 == 0.0) return g;
  double th = std::tanh(t * x);
  cplx am = 0.5 * std::log(cplx(th, 0.0));
  double s2 = std::sinh(2.0 * t * x);
  double am1 = t / s2;
  double am2 = -2.0 * t * t * std::cosh(2.0 * t * x) / (s2 * s2);
  g.a = g.chi.value * am;
  g.a1 = g.chi.d1 * am + g.chi.value * am1;
  g.a2 = g.chi.d2 * am + 2.0 * g.chi.d1 * am1 + g.chi.value * am2;
  return g;
}

GaugePair cylinder_pair(double t) {
  auto zero = [](double, double) { return Mat2::Zero().eval(); };
  GaugePair p;
  p.ax = MatrixField([t](double x, double) { return diag_pm(I * cylinder_gauge(t, x).a1.imag()); },
                     [t](double x, double) { return diag_pm(I * cylinder_gauge(t, x).a2.imag()); }, zero);
  p.ay = MatrixField([t](double x, double) { return diag_pm(-I * cylinder_gauge(t, x).a1.real()); },
                     [t](double x, double) { return diag_pm(-I * cylinder_gauge(t, x).a2.real()); }, zero);
  p.phi = MatrixField(
      [t](double x, double) {
        cplx a = cylinder_gauge(t, x).a;
        Mat2 m;
        m << 0.0, 0.5 * std::exp(-2.0 * a), 0.5 * std::exp(2.0 * a), 0.0;
        return m;
      },
      [t](double x, double) {
        CylinderGauge g = cylinder_gauge(t, x);
        Mat2 m;
        m << 0.0, -g.a1 * std::exp(-2.0 * g.a), g.a1 * std::exp(2.0 * g.a), 0.0;
        return m;
      },
      zero);
  p.chart = Chart::cylinder(1.0, 1.0, 0, 0, true);
  return p;
}

struct DiskGauge {
  double psi = 0.0, psi_r = 0.0, psi_rr = 0.0;
  double m = 0.0, m_r = 0.0, m_rr = 0.0;
};

double profile_ell(const FiducialProfile& p, double r) { return p.ell(r); }

double profile_ell_rr(const FiducialProfile& p, double r) {
  double t = p.t;
  return 8.0 * t * t * r * std::sinh(2.0 * p.ell(r)) - p.dell_dr(r) / r;
}

// psi = -(1/4) log r - chi(r) ell(r) / 2
DiskGauge disk_gauge(const FiducialProfile& p, double r) {
  DiskGauge g;
  Cutoff c = cutoff(r);
  if (c.value != 0.0 || c.d1 != 0.0 || c.d2 != 0.0) {
    double l = profile_ell(p, r), l1 = p.dell_dr(r), l2 = profile_ell_rr(p, r);
    g.m = c.value * l;
    g.m_r = c.d1 * l + c.value * l1;
    g.m_rr = c.d2 * l + 2.0 * c.d1 * l1 + c.value * l2;
  }
  g.psi = -0.25 * std::log(r) - 0.5 * g.m;
  g.psi_r = -0.25 / r - 0.5 * g.m_r;
  g.psi_rr = 0.25 / (r * r) - 0.5 * g.m_rr;
  return g;
}

GaugePair disk_pair(std::shared_ptr<const FiducialProfile> prof) {
  auto radius = [](double x, double y) {
    double r = std::hypot(x, y);
    if (r <= 0.0) throw Error(ErrorKind::OutsideProfile, "disk pair is singular at the zero");
    return r;
  };
  // A_x = i q y sz, A_y = -i q x sz with q = psi_r / r
  auto q_of = [prof, radius](double x, double y) {
    double r = radius(x, y);
    DiskGauge g = disk_gauge(*prof, r);
    double q = g.psi_r / r;
    double q1 = (g.psi_rr - q) / r;
    return std::pair{q, q1 / r};
  };
  GaugePair p;
  p.ax = MatrixField([q_of](double x, double y) { return diag_pm(I * q_of(x, y).first * y); },
                     [q_of](double x, double y) { return diag_pm(I * q_of(x, y).second * x * y); },
                     [q_of](double x, double y) {
                       auto [q, qr] = q_of(x, y);
                       return diag_pm(I * (qr * y * y + q));
                     });
  p.ay = MatrixField([q_of](double x, double y) { return diag_pm(-I * q_of(x, y).first * x); },
                     [q_of](double x, double y) {
                       auto [q, qr] = q_of(x, y);
                       return diag_pm(-I * (qr * x * x + q));
                     },
                     [q_of](double x, double y) { return diag_pm(-I * q_of(x, y).second * x * y); });
  auto phi_d = [prof, radius](double x, double y, bool along_x) {
    double r = radius(x, y);
    DiskGauge g = disk_gauge(*prof, r);
    double c = (along_x ? x : y) / r;
    cplx dz = along_x ? cplx(1.0, 0.0) : I;
    cplx z(x, y);
    Mat2 m;
    m << 0.0, -2.0 * g.psi_r * c * std::exp(-2.0 * g.psi),
        std::exp(2.0 * g.psi) * (dz + 2.0 * z * g.psi_r * c), 0.0;
    return m;
  };
  p.phi = MatrixField(
      [prof, radius](double x, double y) {
        DiskGauge g = disk_gauge(*prof, radius(x, y));
        Mat2 m;
        m << 0.0, std::exp(-2.0 * g.psi), cplx(x, y) * std::exp(2.0 * g.psi), 0.0;
        return m;
      },
      [phi_d](double x, double y) { return phi_d(x, y, true); },
      [phi_d](double x, double y) { return phi_d(x, y, false); });
  p.chart.exclude_core = true;
  return p;
}

GaugePair interior_pair() {
  GaugePair p;
  p.ax = MatrixField::zero();
  p.ay = MatrixField::zero();
  p.phi = MatrixField::constant(sigma_x());
  return p;
}

}  // namespace

Cutoff cutoff(double s) {
  double sg = s < 0.0 ? -1.0 : 1.0;
  Bump b = step(4.0 * (0.5 - std::abs(s)));
  if (std::abs(s) <= 0.25) return {1.0, 0.0, 0.0};
  return {b.v, -4.0 * sg * b.d1, 16.0 * b.d2};
}

double cutoff_derivative_bound(int samples) {
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    double s = 0.25 + 0.25 * k / (samples - 1);
    best = std::max(best, std::abs(cutoff(s).d1));
  }
  return best;
}

const char* to_string(RegionKind k) {
  switch (k) {
    case RegionKind::Interior: return "interior";
    case RegionKind::Cylinder: return "cylinder";
    case RegionKind::Disk: return "disk";
  }
  return "unknown";
}

RegionKind region_from_string(const std::string& s) {
  if (s == "interior") return RegionKind::Interior;
  if (s == "cylinder") return RegionKind::Cylinder;
  if (s == "disk") return RegionKind::Disk;
  throw Error(ErrorKind::Usage, "unknown region: " + s);
}

RegionSpec RegionSpec::interior() { return {RegionKind::Interior, Chart::plane()}; }

RegionSpec RegionSpec::cylinder() { return {RegionKind::Cylinder, Chart::cylinder(1.0, 1.0, 0, 0, true)}; }

RegionSpec RegionSpec::disk() {
  RegionSpec r{RegionKind::Disk, Chart::plane()};
  r.chart.exclude_core = true;
  return r;
}

double WeightFns::rho(double x) const {
  double ax = std::abs(x);
  double b = step(2.0 * (ax - 0.5)).v;
  return (1.0 - b) * ax + b;
}

double WeightFns::r_t(double t, double r) const { return std::sqrt(std::pow(t, -4.0 / 3.0) + r * r); }

ApproximatePair approximate_pair(const RegionSpec& region, double t, std::shared_ptr<const FiducialProfile> profile) {
  if (!(t > 0.0)) throw Error(ErrorKind::BadDomain, "t must be positive");
  ApproximatePair a;
  a.region = region;
  a.t = t;
  switch (region.kind) {
    case RegionKind::Interior: a.pair = interior_pair(); break;
    case RegionKind::Cylinder: a.pair = cylinder_pair(t); break;
    case RegionKind::Disk:
      a.profile = profile ? profile : std::make_shared<const FiducialProfile>(solve_profile(t));
      a.pair = disk_pair(a.profile);
      break;
  }
  a.pair.chart = region.chart;
  return a;
}

GaugePair limiting_pair(const RegionSpec& region) {
  switch (region.kind) {
    case RegionKind::Interior: return interior_pair();
    case RegionKind::Cylinder: return constant_higgs_pair();
    case RegionKind::Disk: return limiting_fiducial();
  }
  return interior_pair();
}

GaugePair exact_pair(const ApproximatePair& a) {
  switch (a.region.kind) {
    case RegionKind::Interior: return interior_pair();
    case RegionKind::Cylinder: return model_pair(a.t);
    case RegionKind::Disk: return fiducial_pair(*a.profile);
  }
  return interior_pair();
}

double error_term(const ApproximatePair& a, Point at) {
  double t = a.t;
  switch (a.region.kind) {
    case RegionKind::Interior: return 0.0;
    case RegionKind::Cylinder: {
      Cutoff c = cutoff(at.x);
      if ((c.value == 1.0 || c.value == 0.0) && c.d1 == 0.0 && c.d2 == 0.0) return 0.0;
      double th = std::abs(std::tanh(t * at.x));
      double am = 0.5 * std::log(th);
      double am1 = t / std::sinh(2.0 * t * at.x);
      double v = t * t * (c.value * std::sinh(4.0 * am) - std::sinh(4.0 * c.value * am)) + 2.0 * c.d1 * am1 +
                 c.d2 * am;
      return frobenius(diag_pm(-I * v));
    }
    case RegionKind::Disk: {
      double r = std::hypot(at.x, at.y);
      Cutoff c = cutoff(r);
      if ((c.value == 1.0 || c.value == 0.0) && c.d1 == 0.0 && c.d2 == 0.0) return 0.0;
      const FiducialProfile& p = *a.profile;
      double l = p.ell(r), l1 = p.dell_dr(r);
      double lap_chi = c.d2 + c.d1 / r;
      double v = 8.0 * t * t * r * (c.value * std::sinh(2.0 * l) - std::sinh(2.0 * c.value * l)) +
                 2.0 * c.d1 * l1 + l * lap_chi;
      return frobenius(diag_pm(0.5 * I * v));
    }
  }
  return 0.0;
}

double error_term_direct(const ApproximatePair& a, Point at) {
  return frobenius(hitchin_curvature_term(a.pair, a.t, at));
}

SlopeFit fit_slope(RegionKind region, const std::vector<SweepRow>& rows) {
  SlopeFit f;
  f.region = region;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& r : rows) {
    if (r.region != region || !(r.sup_err > 0.0)) continue;
    double y = std::log(r.sup_err);
    sx += r.t;
    sy += y;
    sxx += r.t * r.t;
    sxy += r.t * y;
    ++f.points;
  }
  if (f.points < 2) throw Error(ErrorKind::BadDomain, "slope fit needs at least two t values");
  double n = f.points;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

Sweep error_sweep(const std::vector<RegionKind>& regions, const std::vector<double>& ts, int samples, int workers) {
  if (samples < 3) throw Error(ErrorKind::BadDomain, "sweep needs at least three samples");
  struct Job {
    RegionKind region;
    double t;
  };
  std::vector<Job> jobs;
  for (RegionKind k : regions)
    for (double t : ts) jobs.push_back({k, t});
  Sweep out;
  out.rows.resize(jobs.size());
  WeightFns w;
  parallel_for(jobs.size(), workers, [&](std::size_t j) {
    const Job& job = jobs[j];
    RegionSpec spec = job.region == RegionKind::Interior   ? RegionSpec::interior()
                      : job.region == RegionKind::Cylinder ? RegionSpec::cylinder()
                                                           : RegionSpec::disk();
    ApproximatePair a = approximate_pair(spec, job.t);
    SweepRow row{job.t, job.region, 0.0, 0.0};
    for (int k = 0; k < samples; ++k) {
      double s = (k + 0.5) / samples;
      Point at{};
      double weight = 1.0;
      if (job.region == RegionKind::Disk) {
        at = {s, 0.0};
        weight = std::pow(w.r_t(job.t, s), 2);
      } else {
        at = {2.0 * s - 1.0, 0.0};
        if (job.region == RegionKind::Cylinder) weight = std::pow(w.rho(at.x), 2);
      }
      double e = error_term(a, at);
      row.sup_err = std::max(row.sup_err, e);
      row.weighted_sup_err = std::max(row.weighted_sup_err, weight * e);
    }
    out.rows[j] = row;
  });
  for (RegionKind k : regions)
    if (k != RegionKind::Interior) out.fits.push_back(fit_slope(k, out.rows));
  return out;
}

Mat2 higgs_operator(const Mat2& phi, const Mat2& gamma) {
  Mat2 adj = phi.adjoint();
  return 2.0 * (commutator(adj, commutator(phi, gamma)) + commutator(phi, commutator(adj, gamma)));
}

Mat2 linearization_apply(const GaugePair& p, double t, double weight, const MatrixField& gamma, Point at, FdScheme fd) {
  auto cov = [&](const MatrixField& a, const MatrixField& g, bool along_x) {
    return MatrixField(
        [a, g, along_x, fd](double x, double y) {
          Mat2 d = along_x ? g.fd_x(x, y, fd) : g.fd_y(x, y, fd);
          return (d + commutator(a(x, y), g(x, y))).eval();
        },
        fd);
  };
  MatrixField gx = cov(p.ax, gamma, true);
  MatrixField gy = cov(p.ay, gamma, false);
  MatrixField gxx = cov(p.ax, gx, true);
  MatrixField gyy = cov(p.ay, gy, false);
  Mat2 lap = gxx(at) + gyy(at);
  return -weight * lap + t * t * weight * higgs_operator(p.phi(at), gamma(at));
}

Mat2 linearization_apply(const RegionSpec& region, double t, const MatrixField& gamma, Point at) {
  region.chart.require(at);
  switch (region.kind) {
    case RegionKind::Interior: return linearization_apply(interior_pair(), t, 1.0, gamma, at);
    case RegionKind::Cylinder: return linearization_apply(model_pair(t), t, at.x * at.x, gamma, at);
    case RegionKind::Disk: return linearization_apply(limiting_fiducial(), t, 1.0, gamma, at);
  }
  return Mat2::Zero();
}

double core_diagonal_coefficient(double t, double x) {
  double th = std::tanh(t * x);
  return 2.0 * t * t * x * x * (th * th + 1.0 / (th * th));
}

double core_offdiagonal_coefficient(double t, double x) {
  double th = std::tanh(t * x);
  double s = std::sinh(2.0 * t * x);
  return t * t * x * x * (th * th + 1.0 / (th * th)) + 4.0 * x * x * t * t / (s * s);
}

std::vector<long> indicial_polynomial(long zeroth_order_limit) { return {-1, 1, zeroth_order_limit}; }

IndicialData indicial_data() {
  IndicialData d;
  double x = 1e-6;
  d.diagonal_limit = std::lround(core_diagonal_coefficient(1.0, x));
  d.offdiagonal_limit = std::lround(core_offdiagonal_coefficient(1.0, x));
  auto poly = indicial_polynomial(d.diagonal_limit);
  d.a = poly[0];
  d.b = poly[1];
  d.c = poly[2];
  d.discriminant = d.b * d.b - 4 * d.a * d.c;
  long root = std::lround(std::sqrt(static_cast<double>(d.discriminant)));
  if (d.discriminant < 0 || root * root != d.discriminant)
    throw Error(ErrorKind::NoConvergence, "indicial roots are not integral");
  for (long sgn : {1L, -1L}) {
    long num = -d.b + sgn * root;
    if (num % (2 * d.a) != 0) throw Error(ErrorKind::NoConvergence, "indicial roots are not integral");
    d.roots.push_back(num / (2 * d.a));
  }
  std::sort(d.roots.begin(), d.roots.end());
  d.window_lo = d.roots.front();
  d.window_hi = d.roots.back();
  return d;
}

}  // namespace hitchinlab
