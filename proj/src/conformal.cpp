#include "hitchinlab/conformal.hpp"

#include <cmath>

namespace hitchinlab {

double mink_inner(const Vec4& u, const Vec4& v) {
  return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

double mink_inner(const Vec5& u, const Vec5& v) {
  return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3] + u[4] * v[4];
}

double mink_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size() || u.size() < 1)
    throw Error(ErrorKind::DimensionMismatch, "vectors of size " + std::to_string(u.size()) + " and " +
                                                  std::to_string(v.size()));
  return u.dot(v) - 2.0 * u[0] * v[0];
}

Causal classify(const Vec4& u, double tol) {
  double q = mink_inner(u, u);
  if (q < -tol) return Causal::Timelike;
  if (q > tol) return Causal::Spacelike;
  return Causal::Null;
}

Herm2::Herm2(double a, cplx b, double d) {
  m_ << a, b, std::conj(b), d;
}

Herm2 Herm2::from_matrix(const Mat2& m, double tol) {
  double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > tol * scale)
    throw Error(ErrorKind::SingularSample, "matrix is not Hermitian");
  return Herm2(std::real(m(0, 0)), 0.5 * (m(0, 1) + std::conj(m(1, 0))), std::real(m(1, 1)));
}

Herm2 herm_of_mink(const Vec4& x) { return Herm2(x[0] + x[1], cplx(x[2], x[3]), x[0] - x[1]); }

Vec4 mink_of_herm(const Herm2& a) {
  double p = std::real(a(0, 0)), q = std::real(a(1, 1));
  return Vec4(0.5 * (p + q), 0.5 * (p - q), std::real(a(0, 1)), std::imag(a(0, 1)));
}

PointS3::PointS3(const Vec5& v, double tol) : x(v) {
  if (std::abs(v[0] - 1.0) > tol || std::abs(mink_inner(v, v)) > tol)
    throw Error(ErrorKind::NotOnSlice, "point is not on the unit slice of the light cone");
}

PointH3::PointH3(const Vec4& v, double tol) : x(v) {
  if (std::abs(mink_inner(v, v) + 1.0) > tol * std::max(1.0, v.squaredNorm()))
    throw Error(ErrorKind::NotOnSlice, "point is not on the hyperboloid <x,x> = -1");
}

PointDS3::PointDS3(const Vec4& v, double tol) : x(v) {
  if (std::abs(mink_inner(v, v) - 1.0) > tol * std::max(1.0, v.squaredNorm()))
    throw Error(ErrorKind::NotOnSlice, "point is not on de Sitter space <x,x> = 1");
}

PointH3 xi(const PointS3& p) {
  double h = p.x[4];
  if (std::abs(h) <= equator_tol) throw Error(ErrorKind::EquatorSingular, "x4 vanishes");
  return PointH3(Vec4(p.x[0] / h, p.x[1] / h, p.x[2] / h, p.x[3] / h), 1e-8);
}

PointS3 xi_inv(const PointH3& q) {
  double q0 = q.x[0];
  if (std::abs(q0) <= equator_tol) throw Error(ErrorKind::ZeroHeight, "x0 vanishes");
  Vec5 v;
  v << 1.0, q.x[1] / q0, q.x[2] / q0, q.x[3] / q0, 1.0 / q0;
  return PointS3(v, 1e-8);
}

static Mat2 trace_free(const Mat2& m) { return m - 0.5 * m.trace() * Mat2::Identity(); }

Mat2 upsilon(const SlicePoint& p, double tol) {
  if (std::abs(p.a.trace() - 2.0) > tol || std::abs(p.a.det() - p.r * p.r) > tol)
    throw Error(ErrorKind::NotOnSlice, "expected tr A = 2 and det A = r^2");
  return p.r * Mat2::Identity() + I * trace_free(p.a.matrix());
}

SlicePoint upsilon_inv(const Mat2& u, double tol) {
  if ((u.adjoint() * u - Mat2::Identity()).norm() > tol || std::abs(u.determinant() - 1.0) > tol)
    throw Error(ErrorKind::NotOnSlice, "matrix is not special unitary");
  double r = std::real(u.trace()) / 2.0;
  Mat2 h = -I * (u - r * Mat2::Identity());
  return {Herm2::from_matrix(Mat2::Identity() + h, tol), r};
}

SlicePoint slice_of_sphere(const PointS3& p) {
  return {herm_of_mink(Vec4(p.x[0], p.x[1], p.x[2], p.x[3])), p.x[4]};
}

Herm2 xi_su2(const Mat2& b) {
  cplx tr = b.trace();
  if (std::abs(tr) <= equator_tol) throw Error(ErrorKind::EquatorSingular, "tr B vanishes");
  Mat2 a = (2.0 / tr) * (Mat2::Identity() - I * trace_free(b));
  return Herm2::from_matrix(a, 1e-9);
}

Mat2 xi_su2_inv(const Herm2& a) {
  double tr = a.trace();
  if (std::abs(tr) <= equator_tol) throw Error(ErrorKind::EquatorSingular, "tr A vanishes");
  return (2.0 / tr) * (Mat2::Identity() + I * trace_free(a.matrix()));
}

Herm2 sl2c_action(const Mat2& g, const Herm2& x, double tol) {
  if (std::abs(g.determinant() - 1.0) > tol) throw Error(ErrorKind::NotUnimodular, "det g != 1");
  return Herm2::from_matrix(g * x.matrix() * g.adjoint(), 1e-8);
}

}  // namespace hitchinlab
