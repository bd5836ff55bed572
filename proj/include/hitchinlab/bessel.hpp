#pragma once

#include <functional>
#include <vector>

namespace hitchinlab {

double log_bessel_I(double nu, double x);
double log_bessel_K(double nu, double x);
double bessel_I(double nu, double x);
double bessel_K(double nu, double x);
double bessel_I_scaled(double nu, double x);
double bessel_K_scaled(double nu, double x);

struct ScaledValue {
  double mantissa = 0.0;
  long exponent = 0;
  double log() const;
};
ScaledValue bessel_I_pair(double nu, double x);
ScaledValue bessel_K_pair(double nu, double x);

double bessel_K_quadrature(double nu, double x);
double debye_polynomial(int k, double p);

struct ProductBound {
  double nu = 0.0;
  double max_excess = 0.0;
  double at = 0.0;
  double epsilon() const { return max_excess; }
};
ProductBound product_bound(double nu, const std::vector<double>& xs);

std::vector<double> log_grid(double lo, double hi, int n);

struct MonotoneScan {
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
  double worst = 0.0;
};
MonotoneScan monotone_scan(const std::function<double(double)>& log_f, double lo, double hi, int n, bool increasing);

struct MonotonicityReport {
  double nu = 0.0;
  std::vector<MonotoneScan> i_scans;
  std::vector<MonotoneScan> k_scans;
  bool pass() const;
};
MonotonicityReport monotonicity_check(double nu, int n = 400);

struct DecayCertificate {
  std::function<double(double)> h;
  double a = 1.0;
  double alpha = 1.0;
};

struct PerturbedOptions {
  double step = 1e-3;
  double length = 40.0;
  double tol = 1e-10;
  int max_iterations = 200;
};

struct PerturbedSolution {
  std::vector<double> x;
  std::vector<double> u;
  double lambda = 0.0;
  double contraction_bound = 0.0;
  double kappa = 0.0;
  int iterations = 0;
  std::vector<double> ratios;
  double max_ratio_after_first() const;
};

DecayCertificate fitted_certificate(std::function<double(double)> h, double alpha, double x0,
                                    const PerturbedOptions& opt = {});

PerturbedSolution perturbed_bessel_solve(const DecayCertificate& h, double nu, double x0, double u0,
                                         const PerturbedOptions& opt = {});
PerturbedSolution perturbed_euler_solve(const DecayCertificate& h, double nu, double x0, double u0,
                                        const PerturbedOptions& opt = {});

double bessel_ode_residual(const PerturbedSolution& s, const std::function<double(double)>& h, double nu, bool euler,
                           int stride = 3, int margin = 30);
double fitted_decay_rate(const PerturbedSolution& s, double from, double to);

}  // namespace hitchinlab
