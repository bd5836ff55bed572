#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hitchinlab/fiducial.hpp"
#include "hitchinlab/field.hpp"

namespace hitchinlab {

struct Cutoff {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};
Cutoff cutoff(double s);
inline double cutoff_chi(double s) { return cutoff(s).value; }
double cutoff_derivative_bound(int samples = 20001);

enum class RegionKind { Interior, Cylinder, Disk };
const char* to_string(RegionKind k);
RegionKind region_from_string(const std::string& s);

struct RegionSpec {
  RegionKind kind = RegionKind::Cylinder;
  Chart chart;
  static RegionSpec interior();
  static RegionSpec cylinder();
  static RegionSpec disk();
};

struct WeightFns {
  double rho(double x) const;
  double r_t(double t, double r) const;
};

struct ApproximatePair {
  RegionSpec region;
  double t = 1.0;
  std::shared_ptr<const FiducialProfile> profile;
  GaugePair pair;
};

ApproximatePair approximate_pair(const RegionSpec& region, double t,
                                 std::shared_ptr<const FiducialProfile> profile = nullptr);
GaugePair limiting_pair(const RegionSpec& region);
GaugePair exact_pair(const ApproximatePair& a);

double error_term(const ApproximatePair& a, Point at);
double error_term_direct(const ApproximatePair& a, Point at);

struct SweepRow {
  double t = 0.0;
  RegionKind region = RegionKind::Cylinder;
  double sup_err = 0.0;
  double weighted_sup_err = 0.0;
};
struct SlopeFit {
  RegionKind region = RegionKind::Cylinder;
  double slope = 0.0;
  double intercept = 0.0;
  int points = 0;
};
struct Sweep {
  std::vector<SweepRow> rows;
  std::vector<SlopeFit> fits;
};
Sweep error_sweep(const std::vector<RegionKind>& regions, const std::vector<double>& ts, int samples = 4001,
                  int workers = 1);
SlopeFit fit_slope(RegionKind region, const std::vector<SweepRow>& rows);

Mat2 higgs_operator(const Mat2& phi, const Mat2& gamma);
Mat2 linearization_apply(const GaugePair& p, double t, double weight, const MatrixField& gamma, Point at,
                         FdScheme fd = {});
Mat2 linearization_apply(const RegionSpec& region, double t, const MatrixField& gamma, Point at);

double core_diagonal_coefficient(double t, double x);
double core_offdiagonal_coefficient(double t, double x);

struct IndicialData {
  long a = 0;
  long b = 0;
  long c = 0;
  long discriminant = 0;
  std::vector<long> roots;
  long window_lo = 0;
  long window_hi = 0;
  long diagonal_limit = 0;
  long offdiagonal_limit = 0;
};
IndicialData indicial_data();
std::vector<long> indicial_polynomial(long zeroth_order_limit);

}  // namespace hitchinlab
