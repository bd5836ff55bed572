#include "hitchinlab/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hitchinlab {

static void require_off_core(double x) {
  if (x == 0.0) throw Error(ErrorKind::OnCoreLoop, "x = 0");
}

static Mat2 diag_i() {
  Mat2 m;
  m << -I, 0, 0, I;
  return m;
}

GaugePair model_pair(double t) {
  GaugePair p;
  auto zero = [](double, double) { return Mat2::Zero().eval(); };
  p.ax = MatrixField(zero, zero, zero);
  p.ay = MatrixField([t](double x, double) { return ((t / std::sinh(2 * t * x)) * diag_i()).eval(); },
                     [t](double x, double) {
                       double s = std::sinh(2 * t * x);
                       return ((-2 * t * t * std::cosh(2 * t * x) / (s * s)) * diag_i()).eval();
                     },
                     zero);
  p.phi = MatrixField(
      [t](double x, double) {
        Mat2 m;
        double th = std::tanh(t * x);
        m << 0, 0.5 / th, 0.5 * th, 0;
        return m;
      },
      [t](double x, double) {
        Mat2 m;
        double sh = std::sinh(t * x), ch = std::cosh(t * x);
        m << 0, -0.5 * t / (sh * sh), 0.5 * t / (ch * ch), 0;
        return m;
      },
      zero);
  p.metric = Metric::Definite;
  p.chart.exclude_core = true;
  return p;
}

GaugePair constant_higgs_pair() {
  GaugePair p;
  p.ax = MatrixField::zero();
  p.ay = MatrixField::zero();
  p.phi = MatrixField::constant(0.5 * sigma_x());
  return p;
}

MatrixField model_gauge(double t) {
  auto value = [t](double x, double) {
    cplx r = std::sqrt(cplx(std::tanh(t * x)));
    Mat2 m;
    m << r, 0, 0, 1.0 / r;
    return m;
  };
  auto dx = [t](double x, double) {
    double ch = std::cosh(t * x);
    cplx rho = std::tanh(t * x);
    double drho = t / (ch * ch);
    cplx r = std::sqrt(rho);
    Mat2 m;
    m << drho / (2.0 * r), 0, 0, -drho / (2.0 * r * rho);
    return m;
  };
  auto dy = [](double, double) { return Mat2::Zero().eval(); };
  return MatrixField(value, dx, dy);
}

Connection model_flat_connection(double t) {
  auto dxv = [t](double x, double) {
    require_off_core(x);
    double th = std::tanh(t * x);
    double c = 0.5 * t * (th + 1.0 / th);
    Mat2 m;
    m << 0, c, c, 0;
    return m;
  };
  auto dyv = [t](double x, double) {
    require_off_core(x);
    double th = std::tanh(t * x), cs = 1.0 / std::sinh(2 * t * x);
    double d = 0.5 * t * (1.0 / th - th);
    Mat2 m;
    m << -t * cs, d, -d, t * cs;
    return (I * m).eval();
  };
  return {MatrixField(dxv, FdScheme{1e-4, 4}), MatrixField(dyv, FdScheme{1e-4, 4})};
}

Mat2 model_frame(double t, double x, double y) {
  require_off_core(x);
  cplx h = std::sqrt(cplx(std::sinh(2 * t * x) / (2 * t)));
  cplx a = h + 1.0 / h, b = 1.0 / h - h;
  Mat2 hm;
  hm << 0.5 * a, 0.5 * b, 0.5 * b, 0.5 * a;
  Mat2 u;
  u << 1.0 + 0.5 * I * y, -0.5 * I * y, 0.5 * I * y, 1.0 - 0.5 * I * y;
  return hm * u;
}

MatrixField model_frame_field(double t) {
  auto parts = [t](double x, double y) {
    require_off_core(x);
    cplx h = std::sqrt(cplx(std::sinh(2 * t * x) / (2 * t)));
    cplx h1 = std::cosh(2 * t * x) / (2.0 * h);
    Mat2 hm, dh, u, du;
    hm << 0.5 * (h + 1.0 / h), 0.5 * (1.0 / h - h), 0.5 * (1.0 / h - h), 0.5 * (h + 1.0 / h);
    cplx a1 = 0.5 * h1 * (1.0 - 1.0 / (h * h)), b1 = -0.5 * h1 * (1.0 + 1.0 / (h * h));
    dh << a1, b1, b1, a1;
    u << 1.0 + 0.5 * I * y, -0.5 * I * y, 0.5 * I * y, 1.0 - 0.5 * I * y;
    du << 0.5 * I, -0.5 * I, 0.5 * I, -0.5 * I;
    return std::array<Mat2, 4>{hm, dh, u, du};
  };
  return MatrixField([t](double x, double y) { return model_frame(t, x, y); },
                     [parts](double x, double y) {
                       auto p = parts(x, y);
                       return (p[1] * p[2]).eval();
                     },
                     [parts](double x, double y) {
                       auto p = parts(x, y);
                       return (p[0] * p[3]).eval();
                     });
}

Mat2 model_frame_normalization(double t) {
  Mat2 p;
  p << 1, 1, 1, -1;
  p /= std::sqrt(2.0);
  Mat2 m;
  m << 0, 1.0 / std::sqrt(2 * t), std::sqrt(2 * t), 0;
  return I * p * m * p;
}

Vec4 model_f_hyp(double t, double x, double y) {
  require_off_core(x);
  double s = std::sinh(2 * t * x);
  double p = 8 * t * t * y * y + std::cosh(4 * t * x);
  return Vec4((p + 1) / (4 * s), 0.0, (p - 3) / (4 * s), 2 * t * y / s);
}

Vec4 model_gauss_map(double t, double x, double y, Branch branch) {
  double c = std::cosh(2 * t * x);
  double yy = 8 * t * t * y * y, c4 = std::cosh(4 * t * x);
  Vec4 n(yy - c4 + 3, 4, yy - c4 - 1, 8 * t * y);
  n /= 4 * c;
  if (branch == Branch::Opposite) n[1] = -n[1];
  return n;
}

Vec5 model_f_sph(double t, double x, double y) {
  double p = 8 * t * t * y * y + std::cosh(4 * t * x);
  Vec5 v;
  v << 1.0, 0.0, (p - 3) / (p + 1), 8 * t * y / (p + 1), 4 * std::sinh(2 * t * x) / (p + 1);
  return v;
}

ModelMaps model_maps(double t, double x, double y) {
  return {model_f_hyp(t, x, y), model_gauss_map(t, x, y), model_f_sph(t, x, y)};
}

cplx model_hopf_root(double t) { return -t; }
cplx model_higgs_eigenvalue(double t) { return 0.5 * t; }

Herm2 model_reflection(double t, double x) {
  double th = std::tanh(t * x);
  double n = 1 + th * th;
  return Herm2((1 - th * th) / n, 2 * th / n, (th * th - 1) / n);
}

Mat2 singular_gauge(double x) {
  require_off_core(x);
  cplx s = std::sqrt(cplx(x));
  Mat2 g;
  g << -s, 1.0 / s, s, 1.0 / s;
  return (I / std::sqrt(2.0)) * g;
}

Connection singular_gauged_connection(double t) {
  Connection d = model_flat_connection(t);
  auto dg = [](double x, double) {
    cplx s = std::sqrt(cplx(x));
    cplx ds = 0.5 / s, dinv = -0.5 / (s * s * s);
    Mat2 g;
    g << -ds, dinv, ds, dinv;
    return ((I / std::sqrt(2.0)) * g).eval();
  };
  MatrixField g([](double x, double) { return singular_gauge(x); }, dg,
                [](double, double) { return Mat2::Zero().eval(); });
  return connection_gauge(d, g, FdScheme{1e-5, 4});
}

double SymmetryReport::max() const { return std::max({pair, f_hyp_odd, n_even, reflection, frame}); }

SymmetryReport model_symmetry_check(double t, const std::vector<Point>& points) {
  SymmetryReport r;
  GaugePair p = model_pair(t);
  Mat2 u = sigma_x();
  for (Point q : points) {
    if (q.x == 0.0) continue;
    double x = q.x, y = q.y;
    double e = std::max({(p.ax(x, y) + p.ax(-x, y).conjugate()).norm(),
                         (p.ay(x, y) - p.ay(-x, y).conjugate()).norm(),
                         (p.phi(x, y) + p.phi(-x, y).conjugate()).norm()});
    r.pair = std::max(r.pair, e);
    r.f_hyp_odd = std::max(r.f_hyp_odd, (model_f_hyp(t, x, y) + model_f_hyp(t, -x, y)).cwiseAbs().maxCoeff());
    r.n_even = std::max(r.n_even, (model_gauss_map(t, x, y) - model_gauss_map(t, -x, y)).cwiseAbs().maxCoeff());
    Mat2 rr = model_reflection(t, -x).matrix() + u * model_reflection(t, x).matrix() * u;
    r.reflection = std::max(r.reflection, rr.norm());
    double a = std::abs(x);
    r.frame = std::max(r.frame, (model_frame(t, -a, y) + I * u * model_frame(t, a, y)).norm());
  }
  return r;
}

}  // namespace hitchinlab
