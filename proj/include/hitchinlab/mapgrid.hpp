#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hitchinlab/core.hpp"

namespace hitchinlab {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class Target { H3, DS3, S3, PL };
const char* to_string(Target t);
Target target_from_string(const std::string& s);
int target_dim(Target t);

struct GridSpec {
  double x0 = 0.0;
  double y0 = 0.0;
  double hx = 1.0;
  double hy = 1.0;
  int nx = 1;
  int ny = 1;

  static GridSpec span(double x_lo, double x_hi, int nx, double y_lo, double y_hi, int ny);
  Point node(int i, int j) const { return {x0 + i * hx, y0 + j * hy}; }
};

std::vector<double> fornberg_weights(double at, const std::vector<double>& nodes, int order);

struct BranchEvent {
  int i = 0;
  int j = 0;
  std::string what;
};

class MapGrid {
 public:
  using Sampler = std::function<Eigen::VectorXd(double, double)>;

  MapGrid() = default;
  MapGrid(const GridSpec& spec, Target target);

  static MapGrid sample(const GridSpec& spec, Target target, const Sampler& f, int workers = 1);

  const GridSpec& spec() const { return spec_; }
  Target target() const { return target_; }
  int dim() const { return target_dim(target_); }
  int nx() const { return spec_.nx; }
  int ny() const { return spec_.ny; }
  Point node(int i, int j) const { return spec_.node(i, j); }

  Eigen::VectorXd& at(int i, int j) { return samples_[index(i, j)]; }
  const Eigen::VectorXd& at(int i, int j) const { return samples_[index(i, j)]; }

  Eigen::VectorXd d_x(int i, int j) const;
  Eigen::VectorXd d_y(int i, int j) const;
  Eigen::VectorXd laplacian5(int i, int j) const;
  bool interior(int i, int j, int margin = 1) const;
  int stencil() const { return stencil_; }
  void set_stencil(int width);

  double constraint_error(int i, int j) const;
  double max_constraint_error() const;
  void validate(double tol) const;

  std::vector<BranchEvent> events;
  std::vector<std::pair<std::string, double>> diagnostics;

 private:
  int index(int i, int j) const { return j * spec_.nx + i; }
  Eigen::VectorXd derivative(int i, int j, bool along_x) const;

  GridSpec spec_;
  Target target_ = Target::H3;
  int stencil_ = 9;
  std::vector<Eigen::VectorXd> samples_;
};

}  // namespace hitchinlab
