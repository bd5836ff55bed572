#pragma once

#include <vector>

#include "hitchinlab/conformal.hpp"
#include "hitchinlab/mapgrid.hpp"

namespace hitchinlab {

cplx hopf(const MapGrid& f, int i, int j);

struct HopfSample {
  int nx = 0;
  int ny = 0;
  std::vector<cplx> q;
  std::vector<cplx> omega;
  int branch = +1;
  std::vector<BranchEvent> events;

  cplx omega_at(int i, int j) const { return omega[static_cast<size_t>(j) * nx + i]; }
  cplx q_at(int i, int j) const { return q[static_cast<size_t>(j) * nx + i]; }
};

HopfSample hopf_sample(const MapGrid& f, int branch);

MapGrid oblique_gauss_map(const MapGrid& f, const HopfSample& omega, int workers = 1);

enum class DualCase { Spacelike, Lorentzian, Degenerate };
const char* to_string(DualCase c);

Vec4 dual_point(const Vec4& n, const Vec4& nx, const Vec4& ny, cplx omega, DualCase* which = nullptr);
MapGrid dual_map(const MapGrid& n, const HopfSample& omega, int workers = 1);

struct TransgressivityReport {
  int gamma_points = 0;
  double max_hopf = 0.0;
  double max_normal_residual = 0.0;
  bool pass(double tol = 1e-4) const { return max_hopf < tol && max_normal_residual < tol; }
};

TransgressivityReport transgressivity_check(const MapGrid& f_sph);
MapGrid transgressive_extend(const MapGrid& f_sph, int branch, double tol = 1e-4, int workers = 1);

Vec4 spherical_gauss_vector(const Vec4& p, const Vec4& px, const Vec4& py, cplx omega);

double harmonicity_residual(const MapGrid& m, int i, int j);

struct DefiningResidual {
  double tangency = 0.0;
  double pairing = 0.0;
  double norm = 0.0;
  double orientation = 0.0;
  double max() const;
};
DefiningResidual gauss_defining_residual(const MapGrid& f, const MapGrid& n, const HopfSample& omega, int i, int j);
DefiningResidual dual_defining_residual(const MapGrid& n, const MapGrid& f, const HopfSample& omega, int i, int j);

}  // namespace hitchinlab
