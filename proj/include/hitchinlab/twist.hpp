#pragma once

#include <functional>

#include "hitchinlab/field.hpp"
#include "hitchinlab/mapgrid.hpp"

namespace hitchinlab {

Vec2c eigenline(const Mat2& phi, cplx omega);
Mat2 adapted_frame(const Vec2c& v);

struct Split {
  Mat2 frame;
  Mat2 a_z;
  Mat2 a_zbar;
  Mat2 phi;
  cplx gamma;
  cplx alpha;
  cplx omega;
  double lower_connection = 0.0;
  double lower_higgs = 0.0;
  double reassembly_error = 0.0;
};

Vec2c opposite_gauss_line(const Split& s);

MatrixField adapted_frame_field(const GaugePair& p, double t, cplx omega, FdScheme fd = {});
Split split_components(const GaugePair& p, double t, cplx omega, Point at, FdScheme fd = {});

double line_curvature_residual(const GaugePair& p, double t, cplx omega, Point at, FdScheme fd = {});

GaugePair twist_su2_to_su11(const GaugePair& p, double t, cplx omega, FdScheme fd = {});

struct NullFrame {
  Mat2 frame;
  double pairing = 0.0;
};
inline constexpr double null_eigenline_tol = 1e-6;
NullFrame indefinite_adapted_frame(const Mat2& phi_hat, cplx omega);
GaugePair twist_su11_to_su2(const GaugePair& p, double t, cplx omega, FdScheme fd = {});

GaugePair dual_su11_pair(double t);
MatrixField dual_gauge(double t);
Mat2 lambda_gauge(cplx lambda);

Herm2 gauss_map_from_frame(const Mat2& f, const Vec2c& line, int sign = 1);

struct AdaptedFrame {
  Mat2 frame;
  Vec2c line;
  int sign = 1;
};
using AdaptedFrameSampler = std::function<AdaptedFrame(double, double)>;
MapGrid gauss_map_from_frames(const GridSpec& spec, const AdaptedFrameSampler& frames, int workers = 1);

struct EnergyIdentity {
  double e_f = 0.0;
  double e_n = 0.0;
  double split_term = 0.0;
  double residual() const { return e_f - e_n - split_term; }
};
EnergyIdentity energy_density_identity(const GaugePair& p, double t, cplx omega, const MapGrid& f, const MapGrid& n,
                                       int i, int j, FdScheme fd = {});

}  // namespace hitchinlab
