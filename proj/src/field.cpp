#include "hitchinlab/field.hpp"

#include <cmath>

namespace hitchinlab {

Chart Chart::cylinder(double half_width, double period, int nx, int ny, bool exclude_core) {
  Chart c;
  c.x_lo = -half_width;
  c.x_hi = half_width;
  c.y_lo = 0.0;
  c.y_hi = period;
  c.period = period;
  c.nx = nx;
  c.ny = ny;
  c.exclude_core = exclude_core;
  return c;
}

bool Chart::contains(Point p) const {
  if (!(p.x > x_lo && p.x < x_hi)) return false;
  if (period <= 0.0 && !(p.y > y_lo && p.y < y_hi)) return false;
  if (exclude_core && p.x == 0.0) return false;
  return true;
}

void Chart::require(Point p) const {
  if (!contains(p))
    throw Error(ErrorKind::OutsideChart, "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
}

std::vector<Point> Chart::nodes() const {
  std::vector<Point> out;
  if (nx <= 0 || ny <= 0) return out;
  double hx = (x_hi - x_lo) / nx;
  double hy = (y_hi - y_lo) / ny;
  out.reserve(static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) out.push_back({x_lo + (i + 0.5) * hx, y_lo + (j + 0.5) * hy});
  return out;
}

MatrixField::MatrixField() : MatrixField(Eval([](double, double) { return Mat2::Zero().eval(); })) {}

MatrixField::MatrixField(Eval value, FdScheme fd) : value_(std::move(value)), fd_(fd) {}

MatrixField::MatrixField(Eval value, Eval dx, Eval dy)
    : value_(std::move(value)), dx_(std::move(dx)), dy_(std::move(dy)) {}

MatrixField MatrixField::constant(const Mat2& m) {
  auto zero = [](double, double) { return Mat2::Zero().eval(); };
  return MatrixField([m](double, double) { return m; }, zero, zero);
}

MatrixField MatrixField::with_fd(FdScheme fd) const {
  MatrixField out(value_, fd);
  return out;
}

static Mat2 central(const MatrixField::Eval& f, double x, double y, double ex, double ey, FdScheme fd) {
  const double h = fd.h;
  if (fd.order == 2) return (f(x + h * ex, y + h * ey) - f(x - h * ex, y - h * ey)) / (2.0 * h);
  if (fd.order == 6) {
    auto at = [&](double k) { return f(x + k * h * ex, y + k * h * ey); };
    return (at(3) - 9.0 * at(2) + 45.0 * at(1) - 45.0 * at(-1) + 9.0 * at(-2) - at(-3)) / (60.0 * h);
  }
  return (-f(x + 2 * h * ex, y + 2 * h * ey) + 8.0 * f(x + h * ex, y + h * ey) - 8.0 * f(x - h * ex, y - h * ey) +
          f(x - 2 * h * ex, y - 2 * h * ey)) /
         (12.0 * h);
}

Mat2 MatrixField::fd_x(double x, double y, FdScheme fd) const { return central(value_, x, y, 1, 0, fd); }
Mat2 MatrixField::fd_y(double x, double y, FdScheme fd) const { return central(value_, x, y, 0, 1, fd); }

Mat2 MatrixField::d_x(double x, double y) const { return dx_ ? dx_(x, y) : fd_x(x, y, fd_); }
Mat2 MatrixField::d_y(double x, double y) const { return dy_ ? dy_(x, y) : fd_y(x, y, fd_); }

Mat2 GaugePair::a_z(double x, double y) const { return 0.5 * (ax(x, y) - I * ay(x, y)); }
Mat2 GaugePair::a_zbar(double x, double y) const { return 0.5 * (ax(x, y) + I * ay(x, y)); }

Mat2 curvature(const MatrixField& ax, const MatrixField& ay, Point p, const Chart& chart) {
  chart.require(p);
  return ay.d_x(p.x, p.y) - ax.d_y(p.x, p.y) + commutator(ax(p), ay(p));
}

Mat2 higgs_bracket(const Mat2& phi, Metric metric) {
  Mat2 adj = adjoint(phi, metric);
  return -2.0 * I * (phi * adj - adj * phi);
}

Mat2 hitchin_curvature_term(const GaugePair& p, double t, Point at) {
  return curvature(p.ax, p.ay, at, p.chart) + t * t * higgs_bracket(p.phi(at), p.metric);
}

static Residual residual_impl(const GaugePair& p, double t, Point at) {
  Residual r;
  r.curvature = frobenius(hitchin_curvature_term(p, t, at));
  Mat2 dbar = 0.5 * (p.phi.d_x(at.x, at.y) + I * p.phi.d_y(at.x, at.y));
  r.holomorphic = frobenius(dbar + commutator(p.a_zbar(at.x, at.y), p.phi(at)));
  return r;
}

Residual hitchin_residual(const GaugePair& p, double t, Point at) { return residual_impl(p, t, at); }

Residual su11_residual(const GaugePair& p, double t, Point at) {
  if (p.metric != Metric::Indefinite)
    throw Error(ErrorKind::DimensionMismatch, "su11_residual expects the indefinite metric tag");
  return residual_impl(p, t, at);
}

static void require_unimodular(const Mat2& g) {
  if (std::abs(g.determinant() - 1.0) > 1e-10) throw Error(ErrorKind::NotUnimodular, "det g != 1");
}

GaugePair complex_gauge_action(const GaugePair& p, const MatrixField& g, FdScheme fd) {
  auto azbar = [p, g](double x, double y) {
    Mat2 gv = g(x, y);
    require_unimodular(gv);
    Mat2 gi = gv.inverse();
    Mat2 dbar = 0.5 * (g.d_x(x, y) + I * g.d_y(x, y));
    return (gi * p.a_zbar(x, y) * gv + gi * dbar).eval();
  };
  Metric metric = p.metric;
  auto ax = [azbar, metric](double x, double y) {
    Mat2 zb = azbar(x, y);
    return (zb - adjoint(zb, metric)).eval();
  };
  auto ay = [azbar, metric](double x, double y) {
    Mat2 zb = azbar(x, y);
    return (I * (-adjoint(zb, metric) - zb)).eval();
  };
  auto phi = [p, g](double x, double y) {
    Mat2 gv = g(x, y);
    require_unimodular(gv);
    return (gv.inverse() * p.phi(x, y) * gv).eval();
  };
  GaugePair out;
  out.ax = MatrixField(ax, fd);
  out.ay = MatrixField(ay, fd);
  out.phi = MatrixField(phi, fd);
  out.metric = p.metric;
  out.chart = p.chart;
  return out;
}

Connection connection_gauge(const Connection& d, const MatrixField& g, FdScheme fd) {
  auto make = [g](MatrixField a, bool along_x) {
    return [a, g, along_x](double x, double y) {
      Mat2 gv = g(x, y);
      Mat2 gi = gv.inverse();
      Mat2 dg = along_x ? g.d_x(x, y) : g.d_y(x, y);
      return (gi * a(x, y) * gv + gi * dg).eval();
    };
  };
  return {MatrixField(make(d.ax, true), fd), MatrixField(make(d.ay, false), fd)};
}

LambdaFamily LambdaFamily::of(const GaugePair& p, double t) {
  LambdaFamily f;
  f.ax = p.ax;
  f.ay = p.ay;
  f.metric = p.metric;
  MatrixField phi = p.phi;
  Metric m = p.metric;
  f.phi = MatrixField([phi, t](double x, double y) { return (t * phi(x, y)).eval(); },
                      [phi, t](double x, double y) { return (t * phi.d_x(x, y)).eval(); },
                      [phi, t](double x, double y) { return (t * phi.d_y(x, y)).eval(); });
  f.psi = MatrixField([phi, t, m](double x, double y) { return (t * adjoint(phi(x, y), m)).eval(); },
                      [phi, t, m](double x, double y) { return (t * adjoint(phi.d_x(x, y), m)).eval(); },
                      [phi, t, m](double x, double y) { return (t * adjoint(phi.d_y(x, y), m)).eval(); });
  return f;
}

Connection LambdaFamily::at(cplx lambda) const {
  if (std::abs(lambda) == 0.0) throw Error(ErrorKind::LambdaZero, "lambda = 0");
  cplx li = 1.0 / lambda;
  auto fam = *this;
  auto cx = [fam, li, lambda](double x, double y) { return (fam.ax(x, y) + li * fam.phi(x, y) + lambda * fam.psi(x, y)).eval(); };
  auto cx_dx = [fam, li, lambda](double x, double y) {
    return (fam.ax.d_x(x, y) + li * fam.phi.d_x(x, y) + lambda * fam.psi.d_x(x, y)).eval();
  };
  auto cx_dy = [fam, li, lambda](double x, double y) {
    return (fam.ax.d_y(x, y) + li * fam.phi.d_y(x, y) + lambda * fam.psi.d_y(x, y)).eval();
  };
  auto cy = [fam, li, lambda](double x, double y) {
    return (fam.ay(x, y) + I * li * fam.phi(x, y) - I * lambda * fam.psi(x, y)).eval();
  };
  auto cy_dx = [fam, li, lambda](double x, double y) {
    return (fam.ay.d_x(x, y) + I * li * fam.phi.d_x(x, y) - I * lambda * fam.psi.d_x(x, y)).eval();
  };
  auto cy_dy = [fam, li, lambda](double x, double y) {
    return (fam.ay.d_y(x, y) + I * li * fam.phi.d_y(x, y) - I * lambda * fam.psi.d_y(x, y)).eval();
  };
  return {MatrixField(cx, cx_dx, cx_dy), MatrixField(cy, cy_dx, cy_dy)};
}

std::pair<Mat2, Mat2> LambdaFamily::coefficients(cplx lambda, Point p) const {
  Connection c = at(lambda);
  return {c.ax(p), c.ay(p)};
}

double family_flatness(const LambdaFamily& fam, cplx lambda, Point at) {
  Connection c = fam.at(lambda);
  return frobenius(curvature(c.ax, c.ay, at));
}

Mat2 reality_gauge(RealitySign sign) {
  if (sign == RealitySign::Negative) return Mat2::Identity();
  return I * delta();
}

double reality_check(const LambdaFamily& fam, cplx lambda, const Mat2& g, Point at) {
  if (std::abs(lambda) == 0.0) throw Error(ErrorKind::LambdaZero, "lambda = 0");
  cplx mu = -1.0 / std::conj(lambda);
  auto [mx, my] = fam.coefficients(mu, at);
  auto [lx, ly] = fam.coefficients(lambda, at);
  Mat2 gi = g.inverse();
  Mat2 ex = -mx.adjoint() - gi * lx * g;
  Mat2 ey = -my.adjoint() - gi * ly * g;
  return std::sqrt(ex.squaredNorm() + ey.squaredNorm());
}

FrameSamples parallel_frame(const Connection& d, const std::vector<Point>& path, const Mat2& f0,
                            int steps_per_segment, const SingularLocus& crosses) {
  if (path.empty() || steps_per_segment < 1) throw Error(ErrorKind::BadDomain, "empty path or no steps");
  if (std::abs(f0.determinant() - 1.0) > 1e-9) throw Error(ErrorKind::NotUnimodular, "det F0 != 1");
  FrameSamples out;
  out.points.push_back(path.front());
  out.frames.push_back(f0);
  Mat2 f = f0;
  for (size_t s = 1; s < path.size(); ++s) {
    Point a = path[s - 1], b = path[s];
    if (crosses && crosses(a, b)) throw Error(ErrorKind::PathHitsSingularLocus, "segment meets the singular locus");
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double hs = 1.0 / steps_per_segment;
    auto rhs = [&](double u, const Mat2& m) {
      double x = a.x + u * dx, y = a.y + u * dy;
      return (-(d.ax(x, y) * dx + d.ay(x, y) * dy) * m).eval();
    };
    for (int k = 0; k < steps_per_segment; ++k) {
      double u = k * hs;
      Mat2 k1 = rhs(u, f);
      Mat2 k2 = rhs(u + 0.5 * hs, f + 0.5 * hs * k1);
      Mat2 k3 = rhs(u + 0.5 * hs, f + 0.5 * hs * k2);
      Mat2 k4 = rhs(u + hs, f + hs * k3);
      f += hs / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (std::abs(f.determinant() - f0.determinant()) > 1e-6)
        throw Error(ErrorKind::StepTooLarge, "determinant drift exceeds 1e-6");
      double u1 = (k + 1) * hs;
      out.points.push_back({a.x + u1 * dx, a.y + u1 * dy});
      out.frames.push_back(f);
    }
  }
  return out;
}

Herm2 harmonic_map_from_frame(const Mat2& f, int sign) {
  return Herm2::from_matrix(static_cast<double>(sign >= 0 ? 1 : -1) * f.adjoint() * f, 1e-9);
}

double dirichlet_energy_density(const MapGrid& m, int i, int j) {
  Eigen::VectorXd mx = m.d_x(i, j), my = m.d_y(i, j);
  double s = 0.5 * (mink_inner(mx, mx) + mink_inner(my, my));
  return m.target() == Target::DS3 ? -s : s;
}

double dirichlet_energy_density_herm(const MapGrid& m, int i, int j) {
  if (m.target() != Target::H3 && m.target() != Target::DS3)
    throw Error(ErrorKind::DimensionMismatch, "matrix model needs an H3 or dS3 target");
  Vec4 v = m.at(i, j);
  Mat2 n = herm_of_mink(v).matrix();
  if (std::abs(n.determinant()) < 1e-14) throw Error(ErrorKind::SingularSample, "sample is not invertible");
  Mat2 ni = n.inverse();
  Mat2 px = ni * herm_of_mink(Vec4(m.d_x(i, j))).matrix();
  Mat2 py = ni * herm_of_mink(Vec4(m.d_y(i, j))).matrix();
  return 0.25 * std::real((px * px + py * py).trace());
}

double section_energy_density(const Mat2& phi_z, const Mat2& psi_zbar) {
  return std::real(4.0 * (phi_z * psi_zbar).trace());
}

}  // namespace hitchinlab
