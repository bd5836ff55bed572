#include "hitchinlab/mapgrid.hpp"

#include <algorithm>
#include <cmath>

#include "hitchinlab/conformal.hpp"
#include "hitchinlab/parallel.hpp"

namespace hitchinlab {

const char* to_string(Target t) {
  switch (t) {
    case Target::H3: return "H3";
    case Target::DS3: return "dS3";
    case Target::S3: return "S3";
    case Target::PL: return "PL";
  }
  return "?";
}

Target target_from_string(const std::string& s) {
  if (s == "H3") return Target::H3;
  if (s == "dS3") return Target::DS3;
  if (s == "S3") return Target::S3;
  if (s == "PL") return Target::PL;
  throw Error(ErrorKind::Usage, "unknown target '" + s + "'");
}

int target_dim(Target t) { return (t == Target::H3 || t == Target::DS3) ? 4 : 5; }

GridSpec GridSpec::span(double x_lo, double x_hi, int nx, double y_lo, double y_hi, int ny) {
  GridSpec g;
  g.x0 = x_lo;
  g.y0 = y_lo;
  g.nx = nx;
  g.ny = ny;
  g.hx = nx > 1 ? (x_hi - x_lo) / (nx - 1) : 1.0;
  g.hy = ny > 1 ? (y_hi - y_lo) / (ny - 1) : 1.0;
  return g;
}

std::vector<double> fornberg_weights(double at, const std::vector<double>& nodes, int order) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0, c4 = nodes[0] - at;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, order);
    double c2 = 1.0, c5 = c4;
    c4 = nodes[i] - at;
    for (int j = 0; j < i; ++j) {
      double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

MapGrid::MapGrid(const GridSpec& spec, Target target)
    : spec_(spec), target_(target), samples_(static_cast<size_t>(spec.nx) * spec.ny,
                                             Eigen::VectorXd::Zero(target_dim(target))) {}

MapGrid MapGrid::sample(const GridSpec& spec, Target target, const Sampler& f, int workers) {
  MapGrid g(spec, target);
  parallel_for(static_cast<size_t>(spec.nx) * spec.ny, workers, [&](size_t k) {
    int i = static_cast<int>(k % spec.nx), j = static_cast<int>(k / spec.nx);
    Point p = spec.node(i, j);
    g.samples_[k] = f(p.x, p.y);
  });
  return g;
}

void MapGrid::set_stencil(int width) {
  if (width < 3 || width % 2 == 0) throw Error(ErrorKind::BadDomain, "stencil width must be odd and at least 3");
  stencil_ = width;
}

Eigen::VectorXd MapGrid::derivative(int i, int j, bool along_x) const {
  const int n = along_x ? spec_.nx : spec_.ny;
  const int pos = along_x ? i : j;
  const double h = along_x ? spec_.hx : spec_.hy;
  const int width = std::min(stencil_, n);
  if (width < 2) throw Error(ErrorKind::OutsideChart, "grid too small for differentiation");
  int start = pos - width / 2;
  start = std::clamp(start, 0, n - width);
  std::vector<double> nodes(width);
  for (int k = 0; k < width; ++k) nodes[k] = static_cast<double>(start + k - pos);
  auto w = fornberg_weights(0.0, nodes, 1);
  Eigen::VectorXd d = Eigen::VectorXd::Zero(dim());
  for (int k = 0; k < width; ++k) {
    const auto& s = along_x ? at(start + k, j) : at(i, start + k);
    d += w[k] * s;
  }
  return d / h;
}

Eigen::VectorXd MapGrid::d_x(int i, int j) const { return derivative(i, j, true); }
Eigen::VectorXd MapGrid::d_y(int i, int j) const { return derivative(i, j, false); }

bool MapGrid::interior(int i, int j, int margin) const {
  return i >= margin && j >= margin && i < spec_.nx - margin && j < spec_.ny - margin;
}

Eigen::VectorXd MapGrid::laplacian5(int i, int j) const {
  if (!interior(i, j)) throw Error(ErrorKind::OutsideChart, "five-point stencil needs an interior node");
  const double hx2 = spec_.hx * spec_.hx, hy2 = spec_.hy * spec_.hy;
  return (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / hx2 + (at(i, j + 1) - 2.0 * at(i, j) + at(i, j - 1)) / hy2;
}

double MapGrid::constraint_error(int i, int j) const {
  const auto& v = at(i, j);
  double q = mink_inner(v, v);
  switch (target_) {
    case Target::H3: return std::abs(q + 1.0);
    case Target::DS3: return std::abs(q - 1.0);
    case Target::S3: return std::max(std::abs(q), std::abs(v[0] - 1.0));
    case Target::PL: return std::abs(q) / std::max(1e-300, v[0] * v[0]);
  }
  return 0.0;
}

double MapGrid::max_constraint_error() const {
  double m = 0.0;
  for (int j = 0; j < spec_.ny; ++j)
    for (int i = 0; i < spec_.nx; ++i) m = std::max(m, constraint_error(i, j));
  return m;
}

void MapGrid::validate(double tol) const {
  double e = max_constraint_error();
  if (!(e <= tol))
    throw Error(ErrorKind::NotOnSlice, std::string("samples leave the ") + to_string(target_) +
                                           " quadric by " + std::to_string(e));
}

}  // namespace hitchinlab
