#include "hitchinlab/gauss.hpp"

#include <algorithm>
#include <cmath>

#include "hitchinlab/parallel.hpp"

namespace hitchinlab {

namespace {

Vec4 head4(const Eigen::VectorXd& v) { return Vec4(v[0], v[1], v[2], v[3]); }
Vec4 tail4(const Eigen::VectorXd& v) { return Vec4(v[1], v[2], v[3], v[4]); }

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  Eigen::Matrix4d m;
  m << a, b, c, d;
  return m.determinant();
}

Vec4 cofactor_normal(const Vec4& a, const Vec4& b, const Vec4& c) {
  Vec4 w;
  for (int k = 0; k < 4; ++k) {
    Vec4 e = Vec4::Zero();
    e[k] = 1.0;
    w[k] = det4(e, a, b, c);
  }
  return w;
}

Vec4 minkowski_normal(const Vec4& a, const Vec4& b, const Vec4& c) {
  Vec4 w = cofactor_normal(a, b, c);
  w[0] = -w[0];
  return w;
}

Eigen::Vector2d pairing_target(cplx omega) { return {2.0 * omega.real(), -2.0 * omega.imag()}; }

cplx closest_root(cplx r, cplx guess) { return std::abs(r - guess) <= std::abs(-r - guess) ? r : -r; }

double max_abs_x4_in_row(const MapGrid& f, int j, int* where) {
  double best = -1.0;
  for (int i = 0; i < f.nx(); ++i) {
    double a = std::abs(f.at(i, j)[4]);
    if (a > best) {
      best = a;
      *where = i;
    }
  }
  return best;
}

}  // namespace

cplx hopf(const MapGrid& f, int i, int j) {
  Eigen::VectorXd fx = f.d_x(i, j), fy = f.d_y(i, j);
  cplx q = 0.25 * cplx(mink_inner(fx, fx) - mink_inner(fy, fy), -2.0 * mink_inner(fx, fy));
  if (f.target() == Target::S3 || f.target() == Target::PL) {
    double f0 = f.at(i, j)[0];
    q /= f0 * f0;
  }
  return q;
}

// sqrt of a noisy near-zero q is unreliable on the zero set of x4; omega is smooth there
static void interpolate_through_gamma(const MapGrid& f, HopfSample& h) {
  const double gamma_tol = 1e-9;
  auto on_gamma = [&](int i, int j) { return std::abs(f.at(i, j)[4]) <= gamma_tol; };
  std::vector<std::pair<size_t, cplx>> fixes;
  for (int j = 0; j < h.ny; ++j)
    for (int i = 0; i < h.nx; ++i) {
      if (!on_gamma(i, j)) continue;
      bool along_x = std::abs(f.d_x(i, j)[4]) >= std::abs(f.d_y(i, j)[4]);
      int n = along_x ? h.nx : h.ny, pos = along_x ? i : j;
      std::vector<double> nodes;
      std::vector<cplx> values;
      for (int off = 1; off < n && nodes.size() < 6; ++off)
        for (int s : {-1, 1}) {
          int q = pos + s * off;
          if (q < 0 || q >= n) continue;
          int qi = along_x ? q : i, qj = along_x ? j : q;
          if (on_gamma(qi, qj)) continue;
          nodes.push_back(s * off);
          values.push_back(h.omega_at(qi, qj));
        }
      if (nodes.size() < 2) continue;
      auto w = fornberg_weights(0.0, nodes, 0);
      cplx v = 0.0;
      for (size_t k = 0; k < nodes.size(); ++k) v += w[k] * values[k];
      fixes.push_back({static_cast<size_t>(j) * h.nx + i, v});
    }
  for (const auto& [k, v] : fixes) h.omega[k] = v;
}

HopfSample hopf_sample(const MapGrid& f, int branch) {
  HopfSample h;
  h.nx = f.nx();
  h.ny = f.ny();
  h.branch = branch >= 0 ? +1 : -1;
  const size_t n = static_cast<size_t>(h.nx) * h.ny;
  h.q.resize(n);
  h.omega.resize(n);
  for (int j = 0; j < h.ny; ++j)
    for (int i = 0; i < h.nx; ++i) h.q[static_cast<size_t>(j) * h.nx + i] = hopf(f, i, j);
  const double sgn = f.target() == Target::DS3 ? -1.0 : 1.0;
  auto root = [&](int i, int j) { return std::sqrt(sgn * h.q[static_cast<size_t>(j) * h.nx + i]); };
  auto set = [&](int i, int j, cplx w) {
    h.omega[static_cast<size_t>(j) * h.nx + i] = w;
    if (std::abs(h.q[static_cast<size_t>(j) * h.nx + i]) < 1e-10) h.events.push_back({i, j, "hopf-zero"});
  };
  auto track = [&](int i, int j, cplx prev, cplx prev2, bool have2) {
    cplx guess = have2 ? 2.0 * prev - prev2 : prev;
    return closest_root(root(i, j), guess);
  };
  const double seed_sign = h.branch > 0 ? -1.0 : 1.0;

  if (f.target() == Target::S3 || f.target() == Target::PL) {
    for (int j = 0; j < h.ny; ++j) {
      int s = 0;
      max_abs_x4_in_row(f, j, &s);
      double x4 = f.at(s, j)[4];
      cplx rh = std::sqrt(h.q_at(s, j) / (x4 * x4));
      set(s, j, x4 * seed_sign * rh);
      for (int dir : {+1, -1}) {
        for (int i = s + dir; i >= 0 && i < h.nx; i += dir) {
          bool have2 = (i - 2 * dir) >= 0 && (i - 2 * dir) < h.nx && std::abs(i - 2 * dir - s) <= std::abs(i - s);
          set(i, j, track(i, j, h.omega_at(i - dir, j), have2 ? h.omega_at(i - 2 * dir, j) : cplx(0), have2));
        }
      }
    }
    interpolate_through_gamma(f, h);
    return h;
  }

  set(0, 0, seed_sign * root(0, 0));
  for (int j = 1; j < h.ny; ++j)
    set(0, j, track(0, j, h.omega_at(0, j - 1), j >= 2 ? h.omega_at(0, j - 2) : cplx(0), j >= 2));
  for (int j = 0; j < h.ny; ++j)
    for (int i = 1; i < h.nx; ++i)
      set(i, j, track(i, j, h.omega_at(i - 1, j), i >= 2 ? h.omega_at(i - 2, j) : cplx(0), i >= 2));
  for (int j = 0; j < h.ny; ++j)
    for (int i = 1; i < h.nx; ++i) {
      cplx a = h.omega_at(i - 1, j), b = h.omega_at(i, j);
      if (std::abs(a) > 1e-8 && std::abs(b) > 1e-8 && std::real(a * std::conj(b)) < 0.0)
        h.events.push_back({i, j, "branch-flip"});
    }
  return h;
}

static Vec4 gauss_point(const Vec4& f, const Vec4& fx_raw, const Vec4& fy_raw, cplx omega, bool* ambiguous) {
  Vec4 fx = fx_raw + mink_inner(f, fx_raw) * f;
  Vec4 fy = fy_raw + mink_inner(f, fy_raw) * f;
  Eigen::Matrix2d g;
  g << mink_inner(fx, fx), mink_inner(fx, fy), mink_inner(fx, fy), mink_inner(fy, fy);
  if (g.determinant() <= 1e-10) throw Error(ErrorKind::NotImmersive, "Gram determinant of df vanishes");
  Eigen::Vector2d c = g.inverse() * (pairing_target(omega));
  Vec4 n0 = c[0] * fx + c[1] * fy;
  double q = mink_inner(n0, n0);
  if (q >= 1.0) throw Error(ErrorKind::PairingInfeasible, "<n0,n0> >= 1");
  Vec4 nu = minkowski_normal(f, fx, fy);
  nu /= std::sqrt(mink_inner(nu, nu));
  double s = std::sqrt(1.0 - q);
  double d = det4(f, nu, fx, fy);
  if (ambiguous) *ambiguous = std::abs(s * d) < 1e-10;
  return d > 0 ? Vec4(n0 + s * nu) : Vec4(n0 - s * nu);
}

MapGrid oblique_gauss_map(const MapGrid& f, const HopfSample& omega, int workers) {
  if (f.target() != Target::H3) throw Error(ErrorKind::DimensionMismatch, "oblique Gauss map expects an H3 grid");
  MapGrid n(f.spec(), Target::DS3);
  n.set_stencil(f.stencil());
  std::vector<char> ambiguous(static_cast<size_t>(f.nx()) * f.ny(), 0);
  parallel_for(ambiguous.size(), workers, [&](size_t k) {
    int i = static_cast<int>(k % f.nx()), j = static_cast<int>(k / f.nx());
    bool amb = false;
    n.at(i, j) = gauss_point(head4(f.at(i, j)), head4(f.d_x(i, j)), head4(f.d_y(i, j)), omega.omega_at(i, j), &amb);
    ambiguous[k] = amb;
  });
  for (size_t k = 0; k < ambiguous.size(); ++k)
    if (ambiguous[k])
      n.events.push_back({static_cast<int>(k % f.nx()), static_cast<int>(k / f.nx()), "orientation-ambiguous"});
  n.events.insert(n.events.end(), omega.events.begin(), omega.events.end());
  return n;
}

const char* to_string(DualCase c) {
  switch (c) {
    case DualCase::Spacelike: return "(0,2)";
    case DualCase::Lorentzian: return "(1,1)";
    case DualCase::Degenerate: return "null";
  }
  return "?";
}

Vec4 dual_point(const Vec4& n, const Vec4& nx_raw, const Vec4& ny_raw, cplx omega, DualCase* which) {
  if (std::abs(omega) < 1e-6) throw Error(ErrorKind::NearHopfZero, "|omega| < 1e-6");
  Vec4 nx = nx_raw - mink_inner(n, nx_raw) * n;
  Vec4 ny = ny_raw - mink_inner(n, ny_raw) * n;
  Eigen::Matrix2d g;
  g << mink_inner(nx, nx), mink_inner(nx, ny), mink_inner(nx, ny), mink_inner(ny, ny);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g);
  Eigen::Vector2d ev = es.eigenvalues();
  double scale = std::abs(ev[0]) + std::abs(ev[1]);
  if (scale < 1e-14) throw Error(ErrorKind::NotImmersive, "dN vanishes");
  Vec4 f;
  if (std::min(std::abs(ev[0]), std::abs(ev[1])) < 1e-6 * scale) {
    if (which) *which = DualCase::Degenerate;
    double r = std::abs(omega);
    double a = omega.real() / r, b = -omega.imag() / r;
    Vec4 dnx = a * nx + b * ny;
    Vec4 dnjx = -b * nx + a * ny;
    Eigen::Matrix<double, 2, 4> rows;
    Vec4 en = n, ej = dnjx;
    en[0] = -en[0];
    ej[0] = -ej[0];
    rows.row(0) = en.transpose();
    rows.row(1) = ej.transpose();
    Eigen::FullPivLU<Eigen::Matrix<double, 2, 4>> lu(rows);
    Eigen::Matrix<double, 4, Eigen::Dynamic> ker = lu.kernel();
    if (ker.cols() != 2) throw Error(ErrorKind::NotImmersive, "degenerate plane has wrong dimension");
    Vec4 e1 = ker.col(0), e2 = ker.col(1);
    double p = mink_inner(e1, e1), q = mink_inner(e1, e2), s = mink_inner(e2, e2);
    double disc = q * q - p * s;
    if (disc <= 0) throw Error(ErrorKind::PairingInfeasible, "degenerate plane has no null directions");
    std::vector<Vec4> nulls;
    if (std::abs(s) > std::abs(p)) {
      for (double sg : {1.0, -1.0}) nulls.push_back(s * e1 + (-q + sg * std::sqrt(disc)) * e2);
    } else {
      for (double sg : {1.0, -1.0}) nulls.push_back((-q + sg * std::sqrt(disc)) * e1 + p * e2);
    }
    double best = -1.0;
    for (const Vec4& v : nulls) {
      double pr = mink_inner(v, dnx);
      if (std::abs(pr) < 1e-12 * v.norm() * dnx.norm()) continue;
      Vec4 nu = v / pr;
      Vec4 cand = dnx / (4.0 * r) - 2.0 * r * nu;
      double d = det4(n, cand, nx, ny);
      if (d > best) {
        best = d;
        f = cand;
      }
    }
    if (best < 0) throw Error(ErrorKind::PairingInfeasible, "no positively oriented null-frame solution");
    return f;
  }
  if (which) *which = (ev[0] > 0 && ev[1] > 0) ? DualCase::Spacelike : DualCase::Lorentzian;
  Eigen::Vector2d c = g.inverse() * (-pairing_target(omega));
  Vec4 m0 = c[0] * nx + c[1] * ny;
  Vec4 mu = minkowski_normal(n, nx, ny);
  double mm = mink_inner(mu, mu);
  mu /= std::sqrt(std::abs(mm));
  double sig = mm > 0 ? 1.0 : -1.0;
  double gam2 = (-1.0 - mink_inner(m0, m0)) / sig;
  if (gam2 < 0) throw Error(ErrorKind::PairingInfeasible, "dual map quadratic has no real root");
  double gam = std::sqrt(gam2);
  return det4(n, mu, nx, ny) > 0 ? Vec4(m0 + gam * mu) : Vec4(m0 - gam * mu);
}

MapGrid dual_map(const MapGrid& n, const HopfSample& omega, int workers) {
  if (n.target() != Target::DS3) throw Error(ErrorKind::DimensionMismatch, "dual map expects a dS3 grid");
  MapGrid f(n.spec(), Target::H3);
  f.set_stencil(n.stencil());
  std::vector<DualCase> cases(static_cast<size_t>(n.nx()) * n.ny());
  parallel_for(cases.size(), workers, [&](size_t k) {
    int i = static_cast<int>(k % n.nx()), j = static_cast<int>(k / n.nx());
    f.at(i, j) = dual_point(head4(n.at(i, j)), head4(n.d_x(i, j)), head4(n.d_y(i, j)), omega.omega_at(i, j), &cases[k]);
  });
  for (int j = 0; j < n.ny(); ++j)
    for (int i = 0; i < n.nx(); ++i) {
      DualCase c = cases[static_cast<size_t>(j) * n.nx() + i];
      if (c == DualCase::Degenerate) f.events.push_back({i, j, "null-branch"});
      if (i > 0 && c != cases[static_cast<size_t>(j) * n.nx() + i - 1])
        f.events.push_back({i, j, std::string("signature-change ") + to_string(c)});
    }
  size_t spacelike = std::count(cases.begin(), cases.end(), DualCase::Spacelike);
  size_t lorentz = std::count(cases.begin(), cases.end(), DualCase::Lorentzian);
  f.diagnostics.push_back({"nodes_(0,2)", static_cast<double>(spacelike)});
  f.diagnostics.push_back({"nodes_(1,1)", static_cast<double>(lorentz)});
  f.diagnostics.push_back({"nodes_null", static_cast<double>(cases.size() - spacelike - lorentz)});
  return f;
}

Vec4 spherical_gauss_vector(const Vec4& p, const Vec4& px, const Vec4& py, cplx omega) {
  Eigen::Matrix2d g;
  g << px.dot(px), px.dot(py), px.dot(py), py.dot(py);
  if (g.determinant() <= 1e-14) throw Error(ErrorKind::NotImmersive, "Gram determinant of df vanishes");
  Eigen::Vector2d c = g.inverse() * (pairing_target(omega));
  Vec4 n0 = c[0] * px + c[1] * py;
  double q = n0.squaredNorm();
  if (q >= 1.0) throw Error(ErrorKind::PairingInfeasible, "|n0| >= 1");
  Vec4 nu = cofactor_normal(p, px, py);
  nu.normalize();
  double s = std::sqrt(1.0 - q);
  return det4(p, nu, px, py) < 0 ? Vec4(n0 + s * nu) : Vec4(n0 - s * nu);
}

namespace {

struct Crossing {
  int i0, j0;
  bool along_x;
  double theta;
};

std::vector<Crossing> gamma_crossings(const MapGrid& f) {
  std::vector<Crossing> out;
  auto x4 = [&](int i, int j) { return f.at(i, j)[4]; };
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) {
      if (x4(i, j) == 0.0) {
        out.push_back({i, j, true, 0.0});
        continue;
      }
      if (i + 1 < f.nx() && x4(i, j) * x4(i + 1, j) < 0.0)
        out.push_back({i, j, true, x4(i, j) / (x4(i, j) - x4(i + 1, j))});
    }
  return out;
}

template <typename T, typename F>
T cubic_at(const MapGrid& f, const Crossing& c, F value) {
  int n = f.nx();
  int start = std::clamp(c.i0 - 1, 0, std::max(0, n - 4));
  int width = std::min(4, n);
  std::vector<double> nodes(width);
  for (int k = 0; k < width; ++k) nodes[k] = start + k;
  auto w = fornberg_weights(c.i0 + c.theta, nodes, 0);
  T acc = value(start, c.j0) * w[0];
  for (int k = 1; k < width; ++k) acc += value(start + k, c.j0) * w[k];
  return acc;
}

}  // namespace

TransgressivityReport transgressivity_check(const MapGrid& f) {
  TransgressivityReport r;
  if (f.target() != Target::S3) throw Error(ErrorKind::DimensionMismatch, "transgressivity needs an S3 grid");
  auto crossings = gamma_crossings(f);
  r.gamma_points = static_cast<int>(crossings.size());
  for (const auto& c : crossings) {
    cplx q = cubic_at<cplx>(f, c, [&](int i, int j) { return hopf(f, i, j); });
    Eigen::VectorXd fx = cubic_at<Eigen::VectorXd>(f, c, [&](int i, int j) { return Eigen::VectorXd(f.d_x(i, j)); });
    Eigen::VectorXd fy = cubic_at<Eigen::VectorXd>(f, c, [&](int i, int j) { return Eigen::VectorXd(f.d_y(i, j)); });
    Eigen::Matrix<double, 4, 2> a;
    a.col(0) = tail4(fx);
    a.col(1) = tail4(fy);
    Vec4 e4(0, 0, 0, 1);
    Eigen::Vector2d sol = a.colPivHouseholderQr().solve(e4);
    r.max_hopf = std::max(r.max_hopf, std::abs(q));
    r.max_normal_residual = std::max(r.max_normal_residual, (a * sol - e4).norm());
  }
  return r;
}

// ratio n4/f4 at a node on the zero set of f4, interpolated from neighbours off the zero set
static double gamma_ratio(const MapGrid& f, const MapGrid& nsph, int i, int j, double gamma_tol) {
  double gx = f.d_x(i, j)[4], gy = f.d_y(i, j)[4];
  bool along_x = std::abs(gx) >= std::abs(gy);
  int n = along_x ? f.nx() : f.ny(), pos = along_x ? i : j;
  std::vector<double> nodes, values;
  for (int off = 1; off <= n && static_cast<int>(nodes.size()) < 6; ++off)
    for (int s : {-1, 1}) {
      int q = pos + s * off;
      if (q < 0 || q >= n) continue;
      const auto& fv = along_x ? f.at(q, j) : f.at(i, q);
      if (std::abs(fv[4]) <= gamma_tol) continue;
      const auto& nv = along_x ? nsph.at(q, j) : nsph.at(i, q);
      nodes.push_back(s * off);
      values.push_back(nv[4] / fv[4]);
    }
  if (nodes.size() < 2) throw Error(ErrorKind::NotTransgressive, "no nodes off the zero set near a gamma node");
  auto w = fornberg_weights(0.0, nodes, 0);
  double r = 0.0;
  for (size_t k = 0; k < nodes.size(); ++k) r += w[k] * values[k];
  return r;
}

MapGrid transgressive_extend(const MapGrid& f, int branch, double tol, int workers) {
  TransgressivityReport rep = transgressivity_check(f);
  if (!rep.pass(tol))
    throw Error(ErrorKind::NotTransgressive, "hopf " + std::to_string(rep.max_hopf) + ", normal residual " +
                                                 std::to_string(rep.max_normal_residual));
  HopfSample w = hopf_sample(f, branch);
  MapGrid nsph(f.spec(), Target::S3);
  nsph.set_stencil(f.stencil());
  parallel_for(static_cast<size_t>(f.nx()) * f.ny(), workers, [&](size_t k) {
    int i = static_cast<int>(k % f.nx()), j = static_cast<int>(k / f.nx());
    Vec4 v = spherical_gauss_vector(tail4(f.at(i, j)), tail4(f.d_x(i, j)), tail4(f.d_y(i, j)), w.omega_at(i, j));
    Eigen::VectorXd e(5);
    e << 0.0, v[0], v[1], v[2], v[3];
    nsph.at(i, j) = e;
  });
  MapGrid out(f.spec(), Target::DS3);
  out.set_stencil(f.stencil());
  const double gamma_tol = 1e-9;
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) {
      const auto& fs = f.at(i, j);
      const auto& ns = nsph.at(i, j);
      double ratio;
      if (std::abs(fs[4]) > gamma_tol) {
        ratio = ns[4] / fs[4];
      } else {
        ratio = gamma_ratio(f, nsph, i, j, gamma_tol);
        out.events.push_back({i, j, "gamma-node"});
      }
      Eigen::VectorXd v = ns - ratio * fs;
      out.at(i, j) = v.head(4);
    }
  out.diagnostics.push_back({"gamma_points", static_cast<double>(rep.gamma_points)});
  out.diagnostics.push_back({"gamma_max_hopf", rep.max_hopf});
  out.diagnostics.push_back({"gamma_normal_residual", rep.max_normal_residual});
  return out;
}

double harmonicity_residual(const MapGrid& m, int i, int j) {
  Eigen::VectorXd v = 0.25 * m.laplacian5(i, j);
  Eigen::VectorXd p = m.at(i, j);
  if (m.target() == Target::S3 || m.target() == Target::PL) {
    Vec4 q = tail4(p), w = tail4(v);
    return (w - (w.dot(q) / q.dot(q)) * q).norm();
  }
  Eigen::VectorXd r = v - (mink_inner(v, p) / mink_inner(p, p)) * p;
  return r.norm();
}

double DefiningResidual::max() const { return std::max({tangency, pairing, norm, orientation}); }

DefiningResidual gauss_defining_residual(const MapGrid& f, const MapGrid& n, const HopfSample& omega, int i, int j) {
  DefiningResidual r;
  Vec4 fv = head4(f.at(i, j)), nv = head4(n.at(i, j)), fx = head4(f.d_x(i, j)), fy = head4(f.d_y(i, j));
  Eigen::Vector2d want = pairing_target(omega.omega_at(i, j));
  r.tangency = std::abs(mink_inner(fv, nv));
  r.pairing = std::max(std::abs(mink_inner(fx, nv) - want[0]), std::abs(mink_inner(fy, nv) - want[1]));
  r.norm = std::abs(mink_inner(nv, nv) - 1.0);
  r.orientation = std::max(0.0, -det4(fv, nv, fx, fy));
  return r;
}

DefiningResidual dual_defining_residual(const MapGrid& n, const MapGrid& f, const HopfSample& omega, int i, int j) {
  DefiningResidual r;
  Vec4 fv = head4(f.at(i, j)), nv = head4(n.at(i, j)), nx = head4(n.d_x(i, j)), ny = head4(n.d_y(i, j));
  Eigen::Vector2d want = -pairing_target(omega.omega_at(i, j));
  r.tangency = std::abs(mink_inner(fv, nv));
  r.pairing = std::max(std::abs(mink_inner(nx, fv) - want[0]), std::abs(mink_inner(ny, fv) - want[1]));
  r.norm = std::abs(mink_inner(fv, fv) + 1.0);
  r.orientation = std::max(0.0, -det4(nv, fv, nx, ny));
  return r;
}

}  // namespace hitchinlab
