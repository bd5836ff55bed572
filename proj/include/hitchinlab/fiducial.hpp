#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hitchinlab/field.hpp"

namespace hitchinlab {

struct FiducialProfile {
  double t = 1.0;
  double eps = 0.0;
  double radius = 0.0;
  std::vector<double> s;
  std::vector<double> w;
  std::vector<double> w_s;
  std::vector<double> w_ss;
  double b0 = 0.0;
  int newton_steps = 0;
  double collocation_residual = 0.0;

  double ell(double r) const;
  double dell_dr(double r) const;
  double w_at(double r) const;
  double f_t(double r) const { return 0.5 * (0.5 + r * dell_dr(r)); }
  double midpoint_residual() const;
  double tail_ratio() const;
};

FiducialProfile solve_profile(double t, double radius = 0.0, int n = 200);
double default_profile_radius(double t);

GaugePair fiducial_pair(const FiducialProfile& p, FdScheme fd = {});
GaugePair limiting_fiducial();

struct ModeCoefficients {
  double indicial = 0.0;
  double potential = 0.0;
  double f_hat = 0.0;
  double f_check = 0.0;
};
ModeCoefficients fiducial_mode_coefficients(const FiducialProfile& p, int k, double r);

struct BesselModeData {
  double nu = 0.0;
  double x_of_r(double r) const { return 8.0 / 3.0 * t * std::pow(r, 1.5); }
  double r_of_x(double x) const { return std::pow(3.0 * x / (8.0 * t), 2.0 / 3.0); }
  double t = 1.0;
};
BesselModeData bessel_mode(const FiducialProfile& p, int k);
double bessel_mode_potential(const FiducialProfile& p, int k, double x);

double decay_constant(const FiducialProfile& p, int samples = 400);

struct LimitingDistance {
  double operator_norm = 0.0;
  double frobenius = 0.0;
  double at_operator = 0.0;
  double at_frobenius = 0.0;
};
LimitingDistance limiting_distance(const FiducialProfile& p, double r_lo, double r_hi, int samples = 201);

}  // namespace hitchinlab
