#pragma once

#include <vector>

#include "hitchinlab/conformal.hpp"
#include "hitchinlab/field.hpp"

namespace hitchinlab {

enum class Branch { Model, Opposite };

GaugePair model_pair(double t);
GaugePair constant_higgs_pair();
MatrixField model_gauge(double t);

Connection model_flat_connection(double t);
Mat2 model_frame(double t, double x, double y);
MatrixField model_frame_field(double t);
Mat2 model_frame_normalization(double t);

Vec4 model_f_hyp(double t, double x, double y);
Vec4 model_gauss_map(double t, double x, double y, Branch branch = Branch::Model);
Vec5 model_f_sph(double t, double x, double y);

struct ModelMaps {
  Vec4 f_hyp;
  Vec4 n;
  Vec5 f_sph;
};
ModelMaps model_maps(double t, double x, double y);

cplx model_hopf_root(double t);
cplx model_higgs_eigenvalue(double t);

Herm2 model_reflection(double t, double x);
Mat2 singular_gauge(double x);
Connection singular_gauged_connection(double t);

struct SymmetryReport {
  double pair = 0.0;
  double f_hyp_odd = 0.0;
  double n_even = 0.0;
  double reflection = 0.0;
  double frame = 0.0;
  double max() const;
};

SymmetryReport model_symmetry_check(double t, const std::vector<Point>& points);

}  // namespace hitchinlab
