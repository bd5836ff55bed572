#pragma once

#include "hitchinlab/core.hpp"

namespace hitchinlab {

double mink_inner(const Vec4& u, const Vec4& v);
double mink_inner(const Vec5& u, const Vec5& v);
double mink_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

enum class Causal { Timelike, Spacelike, Null };
Causal classify(const Vec4& u, double tol = 1e-12);

class Herm2 {
 public:
  Herm2() : m_(Mat2::Zero()) {}
  Herm2(double a, cplx b, double d);
  static Herm2 from_matrix(const Mat2& m, double tol = 1e-10);

  const Mat2& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }
  double det() const { return std::real(m_.determinant()); }
  double trace() const { return std::real(m_.trace()); }

 private:
  Mat2 m_;
};

Herm2 herm_of_mink(const Vec4& x);
Vec4 mink_of_herm(const Herm2& a);

inline constexpr double target_tol = 1e-10;

struct PointS3 {
  Vec5 x;
  explicit PointS3(const Vec5& v, double tol = target_tol);
};

struct PointH3 {
  Vec4 x;
  explicit PointH3(const Vec4& v, double tol = target_tol);
};

struct PointDS3 {
  Vec4 x;
  explicit PointDS3(const Vec4& v, double tol = target_tol);
  Herm2 herm() const { return herm_of_mink(x); }
};

inline constexpr double equator_tol = 1e-12;

PointH3 xi(const PointS3& p);
PointS3 xi_inv(const PointH3& q);

struct SlicePoint {
  Herm2 a;
  double r;
};

Mat2 upsilon(const SlicePoint& p, double tol = 1e-10);
SlicePoint upsilon_inv(const Mat2& u, double tol = 1e-10);
SlicePoint slice_of_sphere(const PointS3& p);

Herm2 xi_su2(const Mat2& b);
Mat2 xi_su2_inv(const Herm2& a);

Herm2 sl2c_action(const Mat2& g, const Herm2& x, double tol = 1e-10);

}  // namespace hitchinlab
