#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace hitchinlab {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4d;
using Vec5 = Eigen::Matrix<double, 5, 1>;

inline constexpr cplx I{0.0, 1.0};
inline constexpr double pi = 3.14159265358979323846;
inline constexpr const char* version = "0.3.1";

enum class ErrorKind {
  DimensionMismatch,
  EquatorSingular,
  ZeroHeight,
  NotOnSlice,
  NotUnimodular,
  OutsideChart,
  LambdaZero,
  PathHitsSingularLocus,
  StepTooLarge,
  SingularSample,
  OnCoreLoop,
  NotImmersive,
  PairingInfeasible,
  NearHopfZero,
  NotTransgressive,
  NotAnEigenvalue,
  HopfZero,
  NullEigenline,
  NoConvergence,
  BadDomain,
  OutsideProfile,
  Overflow,
  ContractionFailed,
  QuadratureFail,
  Usage,
  Io,
  Parse,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

enum class Metric { Definite, Indefinite };

Mat2 sigma_x();
Mat2 sigma_y();
Mat2 sigma_z();
Mat2 delta();

Mat2 adjoint(const Mat2& m, Metric metric);
Mat2 commutator(const Mat2& a, const Mat2& b);
double frobenius(const Mat2& m);

}  // namespace hitchinlab
