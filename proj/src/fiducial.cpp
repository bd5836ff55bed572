#include "hitchinlab/fiducial.hpp"

#include <algorithm>
#include <cmath>

#include "hitchinlab/bessel.hpp"

namespace hitchinlab {

namespace {

struct Cheb {
  std::vector<double> x;
  Eigen::MatrixXd d1, d2;
};

Cheb chebyshev(int n, double a, double b) {
  Cheb c;
  c.x.resize(n + 1);
  Eigen::VectorXd xs(n + 1), cw(n + 1);
  for (int j = 0; j <= n; ++j) {
    xs[j] = std::cos(pi * j / n);
    cw[j] = ((j == 0 || j == n) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0);
  }
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    double row = 0.0;
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      d(i, j) = cw[i] / cw[j] / (xs[i] - xs[j]);
      row += d(i, j);
    }
    d(i, i) = -row;
  }
  const double scale = 2.0 / (b - a);
  for (int j = 0; j <= n; ++j) c.x[j] = a + (xs[j] + 1.0) / scale;
  c.d1 = d * scale;
  c.d2 = c.d1 * c.d1;
  return c;
}

double barycentric(const std::vector<double>& nodes, const std::vector<double>& vals, double at) {
  const int n = static_cast<int>(nodes.size()) - 1;
  double num = 0.0, den = 0.0;
  for (int j = 0; j <= n; ++j) {
    double diff = at - nodes[j];
    if (diff == 0.0) return vals[j];
    double wj = ((j == 0 || j == n) ? 0.5 : 1.0) * ((j % 2) ? -1.0 : 1.0);
    num += wj / diff * vals[j];
    den += wj / diff;
  }
  return num / den;
}

double bessel_ratio(double z) { return std::exp(log_bessel_K(1.0, z) - log_bessel_K(0.0, z)); }

double z_of(double t, double r) { return 8.0 / 3.0 * t * std::pow(r, 1.5); }

}  // namespace

double default_profile_radius(double t) { return 3.2 * std::pow(t, -2.0 / 3.0); }

FiducialProfile solve_profile(double t, double radius, int n) {
  if (!(t > 0.0)) throw Error(ErrorKind::BadDomain, "t must be positive");
  if (radius <= 0.0) radius = default_profile_radius(t);
  if (radius < 3.0 * std::pow(t, -2.0 / 3.0) * (1.0 - 1e-12)) throw Error(ErrorKind::BadDomain, "R below 3 t^(-2/3)");
  if (n < 200) throw Error(ErrorKind::BadDomain, "n must be at least 200");
  FiducialProfile p;
  p.t = t;
  p.eps = 1e-6 * std::pow(t, -2.0 / 3.0);
  p.radius = radius;
  const double sa = std::log(p.eps), sb = std::log(radius);
  Cheb c = chebyshev(n, sa, sb);
  const int m = n + 1;
  const double zb = z_of(t, radius);
  const double robin = 1.5 * zb * bessel_ratio(zb);
  const double t2 = t * t;

  Eigen::VectorXd w(m);
  for (int j = 0; j < m; ++j) {
    double r = std::exp(c.x[j]);
    w[j] = std::exp(log_bessel_K(0.0, z_of(t, r))) / 3.0 + 0.5 * c.x[j];
  }
  auto residual = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd d1 = c.d1 * v, d2 = c.d2 * v, f(m);
    for (int j = 0; j < m; ++j) {
      double s = c.x[j];
      f[j] = d2[j] - 4.0 * t2 * (std::exp(2.0 * v[j] + 2.0 * s) - std::exp(4.0 * s - 2.0 * v[j]));
    }
    f[m - 1] = d1[m - 1] - 2.0 * t2 * std::exp(2.0 * v[m - 1] + 2.0 * sa);
    f[0] = d1[0] - 0.5 + robin * (v[0] - 0.5 * sb);
    return f;
  };
  Eigen::VectorXd f = residual(w);
  double fnorm = f.lpNorm<Eigen::Infinity>();
  int steps = 0;
  for (; steps < 100 && fnorm > 1e-12; ++steps) {
    Eigen::MatrixXd jac = c.d2;
    for (int j = 0; j < m; ++j) {
      double s = c.x[j];
      jac(j, j) -= 8.0 * t2 * (std::exp(2.0 * w[j] + 2.0 * s) + std::exp(4.0 * s - 2.0 * w[j]));
    }
    jac.row(m - 1) = c.d1.row(m - 1);
    jac(m - 1, m - 1) -= 4.0 * t2 * std::exp(2.0 * w[m - 1] + 2.0 * sa);
    jac.row(0) = c.d1.row(0);
    jac(0, 0) += robin;
    Eigen::VectorXd dw = jac.partialPivLu().solve(-f);
    double damp = 1.0;
    Eigen::VectorXd trial;
    double tnorm = 0.0;
    for (int h = 0; h < 30; ++h) {
      trial = w + damp * dw;
      Eigen::VectorXd ft = residual(trial);
      tnorm = ft.lpNorm<Eigen::Infinity>();
      if (std::isfinite(tnorm) && tnorm < fnorm) {
        f = ft;
        break;
      }
      damp *= 0.5;
    }
    if (!(tnorm < fnorm)) break;
    w = trial;
    double change = (damp * dw).lpNorm<Eigen::Infinity>();
    fnorm = tnorm;
    if (change < 1e-14) {
      ++steps;
      break;
    }
  }
  if (!(fnorm < 1e-9)) throw Error(ErrorKind::NoConvergence, "fiducial Newton residual " + std::to_string(fnorm));
  Eigen::VectorXd ws = c.d1 * w, wss = c.d2 * w;
  p.s.assign(c.x.begin(), c.x.end());
  p.w.assign(w.data(), w.data() + m);
  p.w_s.assign(ws.data(), ws.data() + m);
  p.w_ss.assign(wss.data(), wss.data() + m);
  p.newton_steps = steps;
  p.collocation_residual = fnorm;
  double we = w[m - 1];
  p.b0 = we - t2 * std::exp(2.0 * we) * p.eps * p.eps;
  return p;
}

double FiducialProfile::w_at(double r) const {
  if (!(r > 0.0)) throw Error(ErrorKind::OutsideProfile, "r must be positive");
  if (r < eps) return b0 + t * t * std::exp(2.0 * b0) * r * r;
  if (r > radius) return ell(r) + 0.5 * std::log(r);
  return barycentric(s, w, std::log(r));
}

double FiducialProfile::ell(double r) const {
  if (!(r > 0.0)) throw Error(ErrorKind::OutsideProfile, "r must be positive");
  if (r > radius) {
    double lr = barycentric(s, w, std::log(radius)) - 0.5 * std::log(radius);
    return lr * std::exp(log_bessel_K(0.0, z_of(t, r)) - log_bessel_K(0.0, z_of(t, radius)));
  }
  return w_at(r) - 0.5 * std::log(r);
}

double FiducialProfile::dell_dr(double r) const {
  if (!(r > 0.0)) throw Error(ErrorKind::OutsideProfile, "r must be positive");
  if (r < eps) return 2.0 * t * t * std::exp(2.0 * b0) * r - 0.5 / r;
  if (r > radius) {
    double z = z_of(t, r);
    return -ell(r) * bessel_ratio(z) * 1.5 * z / r;
  }
  return (barycentric(s, w_s, std::log(r)) - 0.5) / r;
}

double FiducialProfile::midpoint_residual() const {
  double worst = 0.0;
  for (size_t j = 0; j + 1 < s.size(); ++j) {
    double mid = 0.5 * (s[j] + s[j + 1]);
    double wm = barycentric(s, w, mid);
    double d2 = barycentric(s, w_ss, mid);
    double f = d2 - 4.0 * t * t * (std::exp(2.0 * wm + 2.0 * mid) - std::exp(4.0 * mid - 2.0 * wm));
    worst = std::max(worst, std::abs(f));
  }
  return worst;
}

double FiducialProfile::tail_ratio() const {
  double l = barycentric(s, w, std::log(radius)) - 0.5 * std::log(radius);
  return pi * l / std::exp(log_bessel_K(0.0, z_of(t, radius)));
}

GaugePair fiducial_pair(const FiducialProfile& p, FdScheme fd) {
  auto coeff = [p](double x, double y) {
    double r = std::hypot(x, y);
    if (r <= 0.0) throw Error(ErrorKind::OutsideProfile, "fiducial pair is singular at the origin");
    return 0.125 + 0.25 * r * p.dell_dr(r);
  };
  auto ax = [coeff](double x, double y) {
    double r2 = x * x + y * y;
    return (-2.0 * I * y * coeff(x, y) / r2 * sigma_z()).eval();
  };
  auto ay = [coeff](double x, double y) {
    double r2 = x * x + y * y;
    return (2.0 * I * x * coeff(x, y) / r2 * sigma_z()).eval();
  };
  auto phi = [p](double x, double y) {
    double r = std::hypot(x, y);
    if (r <= 0.0) throw Error(ErrorKind::OutsideProfile, "fiducial pair is singular at the origin");
    double l = p.ell(r);
    Mat2 m;
    m << 0.0, std::sqrt(r) * std::exp(l), cplx(x, y) * std::exp(-l) / std::sqrt(r), 0.0;
    return m;
  };
  GaugePair out;
  out.ax = MatrixField(ax, fd);
  out.ay = MatrixField(ay, fd);
  out.phi = MatrixField(phi, fd);
  out.chart.exclude_core = true;
  return out;
}

GaugePair limiting_fiducial() {
  auto ax = [](double x, double y) { return (-0.25 * I * y / (x * x + y * y) * sigma_z()).eval(); };
  auto ay = [](double x, double y) { return (0.25 * I * x / (x * x + y * y) * sigma_z()).eval(); };
  auto ax_dx = [](double x, double y) {
    double r2 = x * x + y * y;
    return (0.5 * I * x * y / (r2 * r2) * sigma_z()).eval();
  };
  auto ax_dy = [](double x, double y) {
    double r2 = x * x + y * y;
    return (-0.25 * I * (x * x - y * y) / (r2 * r2) * sigma_z()).eval();
  };
  auto ay_dx = [](double x, double y) {
    double r2 = x * x + y * y;
    return (0.25 * I * (y * y - x * x) / (r2 * r2) * sigma_z()).eval();
  };
  auto ay_dy = [](double x, double y) {
    double r2 = x * x + y * y;
    return (-0.5 * I * x * y / (r2 * r2) * sigma_z()).eval();
  };
  auto phi = [](double x, double y) {
    double r = std::hypot(x, y);
    Mat2 m;
    m << 0.0, std::sqrt(r), cplx(x, y) / std::sqrt(r), 0.0;
    return m;
  };
  auto phi_d = [](double x, double y, bool along_x) {
    double r = std::hypot(x, y);
    double c = along_x ? x : y;
    cplx dz = along_x ? cplx(1.0, 0.0) : I;
    Mat2 m;
    m << 0.0, 0.5 * c / std::pow(r, 1.5), dz / std::sqrt(r) - 0.5 * cplx(x, y) * c / std::pow(r, 2.5), 0.0;
    return m;
  };
  GaugePair out;
  out.ax = MatrixField(ax, ax_dx, ax_dy);
  out.ay = MatrixField(ay, ay_dx, ay_dy);
  out.phi = MatrixField(phi, [phi_d](double x, double y) { return phi_d(x, y, true); },
                        [phi_d](double x, double y) { return phi_d(x, y, false); });
  out.chart.exclude_core = true;
  return out;
}

ModeCoefficients fiducial_mode_coefficients(const FiducialProfile& p, int k, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::OutsideProfile, "r must be positive");
  ModeCoefficients m;
  double kh = k + 0.5;
  m.indicial = kh * kh;
  m.potential = 16.0 * p.t * p.t * r * r * r;
  double l = p.ell(r);
  double f = p.f_t(r);
  double pert = k * (1.0 - 4.0 * f) + 0.25 - 4.0 * f * f + 8.0 * p.t * p.t * r * r * r * (1.0 - std::cosh(2.0 * l));
  m.f_hat = pert;
  m.f_check = pert;
  return m;
}

BesselModeData bessel_mode(const FiducialProfile& p, int k) {
  BesselModeData b;
  b.nu = 2.0 / 3.0 * std::abs(k + 0.5);
  b.t = p.t;
  return b;
}

double bessel_mode_potential(const FiducialProfile& p, int k, double x) {
  BesselModeData b = bessel_mode(p, k);
  return 4.0 / 9.0 * fiducial_mode_coefficients(p, k, b.r_of_x(x)).f_check;
}

double decay_constant(const FiducialProfile& p, int samples) {
  double lo = std::pow(p.t, -2.0 / 3.0), hi = p.radius;
  double worst = 0.0;
  for (double r : log_grid(lo, hi, samples)) {
    double tr = p.t * std::pow(r, 1.5);
    double bound = std::exp(-8.0 / 3.0 * tr) / std::sqrt(tr);
    worst = std::max(worst, std::abs(p.ell(r)) / bound);
  }
  return worst;
}

LimitingDistance limiting_distance(const FiducialProfile& p, double r_lo, double r_hi, int samples) {
  if (!(r_lo > 0.0 && r_hi > r_lo) || samples < 2) throw Error(ErrorKind::BadDomain, "bad radial window");
  GaugePair fid = fiducial_pair(p);
  GaugePair lim = limiting_fiducial();
  auto op = [](const Mat2& m) { return Eigen::JacobiSVD<Mat2>(m).singularValues()(0); };
  LimitingDistance d;
  for (int k = 0; k < samples; ++k) {
    double r = r_lo + (r_hi - r_lo) * k / (samples - 1);
    Point at{r * std::cos(0.3), r * std::sin(0.3)};
    Mat2 dax = fid.ax(at) - lim.ax(at), day = fid.ay(at) - lim.ay(at), dphi = fid.phi(at) - lim.phi(at);
    double o = std::max(op(dphi), std::hypot(op(dax), op(day)));
    double f = std::max(frobenius(dphi), std::hypot(frobenius(dax), frobenius(day)));
    if (o > d.operator_norm) d.operator_norm = o, d.at_operator = r;
    if (f > d.frobenius) d.frobenius = f, d.at_frobenius = r;
  }
  return d;
}

}  // namespace hitchinlab
