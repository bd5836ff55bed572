#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "hitchinlab/conformal.hpp"
#include "hitchinlab/core.hpp"
#include "hitchinlab/mapgrid.hpp"

namespace hitchinlab {

struct Chart {
  double x_lo = -std::numeric_limits<double>::infinity();
  double x_hi = std::numeric_limits<double>::infinity();
  double y_lo = -std::numeric_limits<double>::infinity();
  double y_hi = std::numeric_limits<double>::infinity();
  double period = 0.0;
  bool exclude_core = false;
  int nx = 0;
  int ny = 0;

  static Chart plane() { return {}; }
  static Chart cylinder(double half_width, double period, int nx, int ny, bool exclude_core);
  bool contains(Point p) const;
  void require(Point p) const;
  std::vector<Point> nodes() const;
};

struct FdScheme {
  double h = 1e-3;
  int order = 4;
};

class MatrixField {
 public:
  using Eval = std::function<Mat2(double, double)>;

  MatrixField();
  explicit MatrixField(Eval value, FdScheme fd = {});
  MatrixField(Eval value, Eval dx, Eval dy);

  static MatrixField constant(const Mat2& m);
  static MatrixField zero() { return constant(Mat2::Zero()); }

  Mat2 operator()(double x, double y) const { return value_(x, y); }
  Mat2 operator()(Point p) const { return value_(p.x, p.y); }
  Mat2 d_x(double x, double y) const;
  Mat2 d_y(double x, double y) const;
  Mat2 fd_x(double x, double y, FdScheme fd) const;
  Mat2 fd_y(double x, double y, FdScheme fd) const;
  bool analytic() const { return static_cast<bool>(dx_); }
  const FdScheme& scheme() const { return fd_; }

  MatrixField with_fd(FdScheme fd) const;

 private:
  Eval value_;
  Eval dx_;
  Eval dy_;
  FdScheme fd_;
};

struct GaugePair {
  MatrixField ax;
  MatrixField ay;
  MatrixField phi;
  Metric metric = Metric::Definite;
  Chart chart = Chart::plane();

  Mat2 a_z(double x, double y) const;
  Mat2 a_zbar(double x, double y) const;
};

Mat2 curvature(const MatrixField& ax, const MatrixField& ay, Point p, const Chart& chart = Chart::plane());
Mat2 higgs_bracket(const Mat2& phi, Metric metric);

struct Residual {
  double curvature = 0.0;
  double holomorphic = 0.0;
  double max() const { return std::max(curvature, holomorphic); }
};

Mat2 hitchin_curvature_term(const GaugePair& p, double t, Point at);
Residual hitchin_residual(const GaugePair& p, double t, Point at);
Residual su11_residual(const GaugePair& p, double t, Point at);

GaugePair complex_gauge_action(const GaugePair& p, const MatrixField& g, FdScheme fd = {});

struct Connection {
  MatrixField ax;
  MatrixField ay;
};
Connection connection_gauge(const Connection& d, const MatrixField& g, FdScheme fd = {});

struct LambdaFamily {
  MatrixField ax;
  MatrixField ay;
  MatrixField phi;
  MatrixField psi;
  Metric metric = Metric::Definite;

  static LambdaFamily of(const GaugePair& p, double t);
  Connection at(cplx lambda) const;
  std::pair<Mat2, Mat2> coefficients(cplx lambda, Point p) const;
};

double family_flatness(const LambdaFamily& fam, cplx lambda, Point at);

enum class RealitySign { Negative, Positive };
Mat2 reality_gauge(RealitySign sign);
double reality_check(const LambdaFamily& fam, cplx lambda, const Mat2& g, Point at);

struct FrameSamples {
  std::vector<Point> points;
  std::vector<Mat2> frames;
};

using SingularLocus = std::function<bool(Point, Point)>;

FrameSamples parallel_frame(const Connection& d, const std::vector<Point>& path, const Mat2& f0,
                            int steps_per_segment, const SingularLocus& crosses = {});

Herm2 harmonic_map_from_frame(const Mat2& f, int sign);

double dirichlet_energy_density(const MapGrid& m, int i, int j);
double dirichlet_energy_density_herm(const MapGrid& m, int i, int j);

double section_energy_density(const Mat2& phi_z, const Mat2& psi_zbar);

}  // namespace hitchinlab
