#include "hitchinlab/twist.hpp"

#include <cmath>

#include "hitchinlab/conformal.hpp"
#include "hitchinlab/parallel.hpp"

namespace hitchinlab {

namespace {

Vec2c kernel_vector(const Mat2& m) {
  Vec2c a(m(0, 1), -m(0, 0));
  Vec2c b(-m(1, 1), m(1, 0));
  Vec2c v = a.norm() >= b.norm() ? a : b;
  if (v.norm() == 0.0) v = Vec2c(1.0, 0.0);
  return v / v.norm();
}

Vec2c fix_phase(Vec2c v, int k) {
  if (std::abs(v[k]) < 1e-14) k = 1 - k;
  return v * (std::abs(v[k]) / v[k]);
}

void require_eigenvalue(const Mat2& phi, cplx omega) {
  if (std::abs(omega) <= 1e-10) throw Error(ErrorKind::HopfZero, "|omega| <= 1e-10");
  if (std::abs(phi.determinant() + omega * omega) > 1e-8)
    throw Error(ErrorKind::NotAnEigenvalue, "det(phi) + omega^2 != 0");
}

MatrixField frame_field(std::function<Mat2(double, double)> f, FdScheme fd) { return MatrixField(std::move(f), fd); }

}  // namespace

Vec2c eigenline(const Mat2& phi, cplx omega) {
  require_eigenvalue(phi, omega);
  Vec2c v = fix_phase(kernel_vector(phi - omega * Mat2::Identity()), 0);
  return v;
}

Mat2 adapted_frame(const Vec2c& v) {
  Mat2 g;
  g << v[0], -std::conj(v[1]), v[1], std::conj(v[0]);
  return g;
}

MatrixField adapted_frame_field(const GaugePair& p, double t, cplx omega, FdScheme fd) {
  MatrixField phi = p.phi;
  return frame_field([phi, t, omega](double x, double y) { return adapted_frame(eigenline(t * phi(x, y), omega)); },
                     fd);
}

Split split_components(const GaugePair& p, double t, cplx omega, Point at, FdScheme fd) {
  MatrixField g = adapted_frame_field(p, t, omega, fd);
  Split s;
  s.frame = g(at);
  Mat2 gi = s.frame.adjoint();
  Mat2 dbar = 0.5 * (g.d_x(at.x, at.y) + I * g.d_y(at.x, at.y));
  s.a_zbar = gi * p.a_zbar(at.x, at.y) * s.frame + gi * dbar;
  s.a_z = -s.a_zbar.adjoint();
  s.phi = gi * (t * p.phi(at)) * s.frame;
  s.omega = omega;
  s.gamma = s.a_zbar(0, 1);
  s.alpha = s.phi(0, 1);
  s.lower_connection = std::abs(s.a_zbar(1, 0));
  s.lower_higgs = std::abs(s.phi(1, 0));

  Mat2 blocks_zbar = s.a_zbar;
  blocks_zbar(1, 0) = 0.0;
  Mat2 blocks_phi;
  blocks_phi << omega, s.alpha, 0.0, -omega;
  Mat2 re_zbar = s.frame * (blocks_zbar - gi * dbar) * gi;
  Mat2 re_phi = s.frame * blocks_phi * gi / t;
  s.reassembly_error = std::max(frobenius(re_zbar - p.a_zbar(at.x, at.y)), frobenius(re_phi - p.phi(at)));
  return s;
}

Vec2c opposite_gauss_line(const Split& s) {
  cplx a = s.alpha / s.omega;
  return s.frame.col(0) + 0.5 * a * s.frame.col(1);
}

double line_curvature_residual(const GaugePair& p, double t, cplx omega, Point at, FdScheme fd) {
  MatrixField g = adapted_frame_field(p, t, omega, fd);
  Mat2 gv = g(at);
  Mat2 gi = gv.adjoint();
  Mat2 ax = gi * p.ax(at) * gv + gi * g.d_x(at.x, at.y);
  Mat2 ay = gi * p.ay(at) * gv + gi * g.d_y(at.x, at.y);
  Mat2 f = gi * curvature(p.ax, p.ay, at, p.chart) * gv;
  cplx fl = f(0, 0) - commutator(ax, ay)(0, 0);
  Split s = split_components(p, t, omega, at, fd);
  double norms = std::norm(s.alpha) + std::norm(s.gamma);
  return std::abs(fl - 2.0 * I * norms);
}

GaugePair twist_su2_to_su11(const GaugePair& p, double t, cplx omega, FdScheme fd) {
  if (p.metric != Metric::Definite) throw Error(ErrorKind::DimensionMismatch, "forward twist expects a definite pair");
  auto zbar = [p, t, omega, fd](double x, double y) {
    Split s = split_components(p, t, omega, {x, y}, fd);
    Mat2 m;
    m << s.a_zbar(0, 0), 0.0, std::conj(s.alpha), s.a_zbar(1, 1);
    return m;
  };
  auto z = [zbar](double x, double y) { return (-adjoint(zbar(x, y), Metric::Indefinite)).eval(); };
  auto phi = [p, t, omega, fd](double x, double y) {
    Split s = split_components(p, t, omega, {x, y}, fd);
    Mat2 m;
    m << omega, 0.0, -std::conj(s.gamma), -omega;
    return (m / t).eval();
  };
  GaugePair out;
  out.ax = MatrixField([z, zbar](double x, double y) { return (z(x, y) + zbar(x, y)).eval(); }, fd);
  out.ay = MatrixField([z, zbar](double x, double y) { return (I * (z(x, y) - zbar(x, y))).eval(); }, fd);
  out.phi = MatrixField(phi, fd);
  out.metric = Metric::Indefinite;
  out.chart = p.chart;
  return out;
}

NullFrame indefinite_adapted_frame(const Mat2& phi_hat, cplx omega) {
  require_eigenvalue(phi_hat, omega);
  Vec2c v = kernel_vector(phi_hat + omega * Mat2::Identity());
  double pairing = std::real(v.dot(delta() * v));
  NullFrame nf;
  nf.pairing = pairing;
  if (std::abs(pairing) < null_eigenline_tol)
    throw Error(ErrorKind::NullEigenline, "eigenline pairing " + std::to_string(std::abs(pairing)));
  v = fix_phase(v / std::sqrt(std::abs(pairing)), 1);
  Vec2c w(std::conj(v[1]), std::conj(v[0]));
  if (pairing > 0) w = -w;
  nf.frame << w[0], v[0], w[1], v[1];
  return nf;
}

GaugePair twist_su11_to_su2(const GaugePair& p, double t, cplx omega, FdScheme fd) {
  if (p.metric != Metric::Indefinite) throw Error(ErrorKind::DimensionMismatch, "reverse twist expects an indefinite pair");
  MatrixField phi = p.phi;
  MatrixField g = frame_field([phi, t, omega](double x, double y) { return indefinite_adapted_frame(t * phi(x, y), omega).frame; },
                              fd);
  GaugePair adapted = complex_gauge_action(p, g, fd);
  auto zbar = [adapted, t, omega](double x, double y) {
    Mat2 hz = adapted.a_zbar(x, y);
    Mat2 hphi = t * adapted.phi(x, y);
    Mat2 m;
    m << hz(0, 0), -std::conj(hphi(1, 0)), 0.0, hz(1, 1);
    return m;
  };
  auto z = [zbar](double x, double y) { return (-adjoint(zbar(x, y), Metric::Definite)).eval(); };
  auto higgs = [adapted, t, omega](double x, double y) {
    Mat2 hz = adapted.a_z(x, y);
    Mat2 m;
    m << omega, hz(0, 1), 0.0, -omega;
    return (m / t).eval();
  };
  GaugePair out;
  out.ax = MatrixField([z, zbar](double x, double y) { return (z(x, y) + zbar(x, y)).eval(); }, fd);
  out.ay = MatrixField([z, zbar](double x, double y) { return (I * (z(x, y) - zbar(x, y))).eval(); }, fd);
  out.phi = MatrixField(higgs, fd);
  out.metric = Metric::Definite;
  out.chart = p.chart;
  return out;
}

GaugePair dual_su11_pair(double t) {
  auto sech = [](double u) { return 1.0 / std::cosh(u); };
  auto ay = [t, sech](double x, double) {
    double s = sech(2.0 * t * x);
    Mat2 m;
    m << 0.0, -I * t * s, I * t * s, 0.0;
    return m;
  };
  auto ay_dx = [t, sech](double x, double) {
    double u = 2.0 * t * x;
    double ds = -2.0 * t * sech(u) * std::tanh(u);
    Mat2 m;
    m << 0.0, -I * t * ds, I * t * ds, 0.0;
    return m;
  };
  auto phi = [t, sech](double x, double) {
    double u = 2.0 * t * x;
    Mat2 m;
    m << std::tanh(u), -sech(u), -sech(u), -std::tanh(u);
    return (0.5 * m).eval();
  };
  auto phi_dx = [t, sech](double x, double) {
    double u = 2.0 * t * x;
    double dT = 2.0 * t * sech(u) * sech(u), dS = -2.0 * t * sech(u) * std::tanh(u);
    Mat2 m;
    m << dT, -dS, -dS, -dT;
    return (0.5 * m).eval();
  };
  auto zero = [](double, double) { return Mat2::Zero().eval(); };
  GaugePair p;
  p.ax = MatrixField::zero();
  p.ay = MatrixField(ay, ay_dx, zero);
  p.phi = MatrixField(phi, phi_dx, zero);
  p.metric = Metric::Indefinite;
  return p;
}

MatrixField dual_gauge(double t) {
  auto value = [t](double x, double) {
    double e = std::exp(2.0 * t * x);
    cplx s = std::sqrt(cplx(1.0 - e * e));
    Mat2 m;
    m << 1.0, e, e, 1.0;
    return (m / s).eval();
  };
  auto dx = [t, value](double x, double y) {
    double e = std::exp(2.0 * t * x);
    Mat2 m, dm;
    m << 1.0, e, e, 1.0;
    dm << 0.0, 2.0 * t * e, 2.0 * t * e, 0.0;
    double dlog_s = -2.0 * t * e * e / (1.0 - e * e);
    Mat2 g = value(x, y);
    return (g * (m.inverse() * dm - dlog_s * Mat2::Identity())).eval();
  };
  auto zero = [](double, double) { return Mat2::Zero().eval(); };
  return MatrixField(value, dx, zero);
}

Mat2 lambda_gauge(cplx lambda) {
  if (std::abs(lambda) == 0.0) throw Error(ErrorKind::LambdaZero, "lambda = 0");
  Mat2 g = Mat2::Identity();
  g(1, 1) = lambda;
  return g;
}

Herm2 gauss_map_from_frame(const Mat2& f, const Vec2c& line, int sign) {
  Vec2c v = line / line.norm();
  Mat2 r = 2.0 * v * v.adjoint() - Mat2::Identity();
  return Herm2::from_matrix(static_cast<double>(sign >= 0 ? 1 : -1) * f.adjoint() * r * f, 1e-9);
}

MapGrid gauss_map_from_frames(const GridSpec& spec, const AdaptedFrameSampler& frames, int workers) {
  return MapGrid::sample(
      spec, Target::DS3,
      [&](double x, double y) {
        AdaptedFrame a = frames(x, y);
        return Eigen::VectorXd(mink_of_herm(gauss_map_from_frame(a.frame, a.line, a.sign)));
      },
      workers);
}

EnergyIdentity energy_density_identity(const GaugePair& p, double t, cplx omega, const MapGrid& f, const MapGrid& n,
                                       int i, int j, FdScheme fd) {
  EnergyIdentity e;
  e.e_f = dirichlet_energy_density(f, i, j);
  e.e_n = dirichlet_energy_density(n, i, j);
  Split s = split_components(p, t, omega, {f.node(i, j).x, f.node(i, j).y}, fd);
  e.split_term = 4.0 * (std::norm(s.alpha) + std::norm(s.gamma));
  return e;
}

}  // namespace hitchinlab
