#include <doctest.h>

#include "hitchinlab/field.hpp"
#include "hitchinlab/model.hpp"

using namespace hitchinlab;

TEST_SUITE("field") {
  TEST_CASE("pauli algebra") {
    CHECK((commutator(sigma_x(), sigma_y()) - 2.0 * I * sigma_z()).norm() < 1e-15);
    CHECK(frobenius(sigma_x()) == doctest::Approx(std::sqrt(2.0)));
  }

  TEST_CASE("constant higgs pair solves the t-rescaled equations") {
    GaugePair p = constant_higgs_pair();
    for (double t : {0.5, 2.0})
      for (Point at : {Point{0.2, 0.1}, Point{-0.7, 0.4}}) CHECK(hitchin_residual(p, t, at).max() < 1e-12);
  }

  TEST_CASE("scheme orders converge") {
    MatrixField f([](double x, double y) { return Mat2(std::sin(3 * x) * std::cos(y) * sigma_z()); });
    Mat2 exact = 3 * std::cos(3 * 0.4) * std::cos(0.2) * sigma_z();
    double e2 = (f.fd_x(0.4, 0.2, {1e-3, 2}) - exact).norm();
    double e4 = (f.fd_x(0.4, 0.2, {1e-3, 4}) - exact).norm();
    double e6 = (f.fd_x(0.4, 0.2, {1e-2, 6}) - exact).norm();
    CHECK(e2 < 1e-5);
    CHECK(e4 < 1e-10);
    CHECK(e6 < 1e-10);
    CHECK(e4 < e2);
  }

  TEST_CASE("unitary gauge preserves the residual") {
    double t = 1.0;
    MatrixField u([](double x, double y) {
      cplx e = std::exp(I * (0.3 * x + 0.2 * y * y));
      Mat2 m;
      m << e, 0, 0, 1.0 / e;
      return m;
    });
    GaugePair q = complex_gauge_action(model_pair(t), u);
    CHECK(hitchin_residual(q, t, {0.6, 0.1}).max() < 1e-8);
  }

  TEST_CASE("complex gauge keeps the spectral data") {
    double t = 1.0;
    MatrixField g([](double x, double y) {
      Mat2 m;
      m << cplx(std::cosh(0.2 * x), 0), cplx(0, 0.1 * y), cplx(0, 0), cplx(1.0 / std::cosh(0.2 * x), 0);
      return m;
    });
    GaugePair p = model_pair(t);
    GaugePair q = complex_gauge_action(p, g);
    CHECK(std::abs(q.phi(0.6, 0.1).determinant() - p.phi(0.6, 0.1).determinant()) < 1e-12);
  }
}
