#include "hitchinlab/core.hpp"

namespace hitchinlab {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EquatorSingular: return "EquatorSingular";
    case ErrorKind::ZeroHeight: return "ZeroHeight";
    case ErrorKind::NotOnSlice: return "NotOnSlice";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::OutsideChart: return "OutsideChart";
    case ErrorKind::LambdaZero: return "LambdaZero";
    case ErrorKind::PathHitsSingularLocus: return "PathHitsSingularLocus";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::SingularSample: return "SingularSample";
    case ErrorKind::OnCoreLoop: return "OnCoreLoop";
    case ErrorKind::NotImmersive: return "NotImmersive";
    case ErrorKind::PairingInfeasible: return "PairingInfeasible";
    case ErrorKind::NearHopfZero: return "NearHopfZero";
    case ErrorKind::NotTransgressive: return "NotTransgressive";
    case ErrorKind::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorKind::HopfZero: return "HopfZero";
    case ErrorKind::NullEigenline: return "NullEigenline";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BadDomain: return "BadDomain";
    case ErrorKind::OutsideProfile: return "OutsideProfile";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ContractionFailed: return "ContractionFailed";
    case ErrorKind::QuadratureFail: return "QuadratureFail";
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Mat2 sigma_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 sigma_y() {
  Mat2 m;
  m << 0, -I, I, 0;
  return m;
}

Mat2 sigma_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 delta() { return sigma_z(); }

Mat2 adjoint(const Mat2& m, Metric metric) {
  if (metric == Metric::Definite) return m.adjoint();
  Mat2 d = delta();
  return d * m.adjoint() * d;
}

Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }

double frobenius(const Mat2& m) { return m.norm(); }

}  // namespace hitchinlab
