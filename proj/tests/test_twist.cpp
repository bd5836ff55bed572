#include <doctest.h>

#include <cmath>

#include "hitchinlab/model.hpp"
#include "hitchinlab/twist.hpp"

using namespace hitchinlab;

TEST_SUITE("twist") {
  TEST_CASE("eigenline is an eigenvector") {
    double t = 1.0;
    cplx omega = -model_higgs_eigenvalue(t);
    Mat2 phi = t * model_pair(t).phi(0.4, 0.1);
    Vec2c v = eigenline(phi, omega);
    CHECK((phi * v - omega * v).norm() < 1e-12);
    Mat2 g = adapted_frame(v);
    CHECK((g.adjoint() * g - Mat2::Identity()).norm() < 1e-12);
  }

  TEST_CASE("eigenvalue and zero checks") {
    Mat2 phi = 0.5 * sigma_x();
    try {
      eigenline(phi, cplx(0.3, 0));
      FAIL("expected NotAnEigenvalue");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotAnEigenvalue);
    }
    try {
      eigenline(phi, cplx(0, 0));
      FAIL("expected HopfZero");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::HopfZero);
    }
  }

  TEST_CASE("split reassembles the pair and is upper triangular in the higgs field") {
    double t = 1.0;
    cplx omega = -model_higgs_eigenvalue(t);
    for (Point at : {Point{0.3, 0.0}, Point{-0.7, 0.25}}) {
      Split s = split_components(model_pair(t), t, omega, at);
      CHECK(s.reassembly_error < 1e-9);
      CHECK(s.lower_higgs < 1e-12);
    }
  }

  TEST_CASE("eigenline curvature identity") {
    double t = 1.0;
    cplx omega = -model_higgs_eigenvalue(t);
    for (Point at : {Point{0.35, 0.1}, Point{0.9, -0.2}}) CHECK(line_curvature_residual(model_pair(t), t, omega, at) < 1e-7);
  }

  TEST_CASE("forward twist solves the indefinite equations") {
    for (double t : {0.5, 1.0, 2.0}) {
      FdScheme fd{1e-3, 6};
      GaugePair q = twist_su2_to_su11(model_pair(t), t, -model_higgs_eigenvalue(t), fd);
      CHECK(q.metric == Metric::Indefinite);
      for (Point at : {Point{0.3, 0.0}, Point{-0.5, 0.2}}) CHECK(su11_residual(q, t, at).max() < 1e-7);
    }
  }

  TEST_CASE("dual display solves the indefinite equations") {
    double t = 1.0;
    GaugePair d = dual_su11_pair(t);
    for (Point at : {Point{0.3, 0.0}, Point{-0.5, 0.2}}) CHECK(su11_residual(d, t, at).max() < 1e-7);
  }

  TEST_CASE("dual gauge extends across the core loop") {
    double t = 1.0;
    GaugePair d = dual_su11_pair(t);
    for (double y : {0.0, 0.3}) {
      CHECK(frobenius(d.ax(1e-4, y) - d.ax(-1e-4, y)) < 1e-3);
      CHECK(frobenius(d.ay(1e-4, y) - d.ay(-1e-4, y)) < 1e-3);
      CHECK(frobenius(d.phi(1e-4, y) - d.phi(-1e-4, y)) < 1e-3);
    }
  }

  TEST_CASE("reverse twist fails only on the null band") {
    double t = 0.5;
    GaugePair back = twist_su11_to_su2(dual_su11_pair(t), t, -model_higgs_eigenvalue(t));
    auto kind = [&](double x) {
      try {
        back.phi(x, 0.1);
      } catch (const Error& e) {
        return e.kind();
      }
      return ErrorKind::Usage;
    };
    CHECK(kind(5e-7) == ErrorKind::NullEigenline);
    CHECK(kind(-5e-7) == ErrorKind::NullEigenline);
    CHECK(kind(2e-6) == ErrorKind::Usage);
    CHECK(kind(0.3) == ErrorKind::Usage);
  }

  TEST_CASE("reverse twist returns a self-dual pair away from the band") {
    double t = 1.0;
    FdScheme fd{1e-3, 6};
    GaugePair back = twist_su11_to_su2(dual_su11_pair(t), t, -model_higgs_eigenvalue(t), fd);
    for (double x : {-1.0, -0.4, -0.1, 0.1, 0.4, 1.0}) CHECK(hitchin_residual(back, t, {x, 0.25}).max() < 1e-6);
  }

  TEST_CASE("lambda gauge") {
    CHECK_THROWS_AS(lambda_gauge(cplx(0, 0)), Error);
    Mat2 g = lambda_gauge(cplx(2.0, 0));
    CHECK(std::abs(g(1, 1) - cplx(2.0, 0)) < 1e-15);
  }
}
