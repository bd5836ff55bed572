#include <doctest.h>

#include <cmath>
#include <iostream>

#include "hitchinlab/bessel.hpp"
#include "hitchinlab/fiducial.hpp"

using namespace hitchinlab;

TEST_SUITE("fiducial") {
  TEST_CASE("profile residuals") {
    for (double t : {1.0, 4.0}) {
      FiducialProfile p = solve_profile(t);
      CHECK(p.midpoint_residual() < 1e-8);
      CHECK(p.collocation_residual < 1e-9);
      CHECK(p.newton_steps > 0);
    }
  }

  TEST_CASE("profile is positive and decreasing") {
    FiducialProfile p = solve_profile(1.0);
    double prev = p.ell(p.eps * 2.0);
    for (double r : log_grid(p.eps * 2.0, p.radius, 300)) {
      double l = p.ell(r);
      CHECK(l > 0.0);
      CHECK(l <= prev);
      prev = l;
    }
  }

  TEST_CASE("scaling law") {
    FiducialProfile p1 = solve_profile(1.0), p4 = solve_profile(4.0);
    double k = std::pow(4.0, 2.0 / 3.0), worst = 0.0;
    for (double r : log_grid(0.05, 0.7, 60)) worst = std::max(worst, std::abs(p4.ell(r) / p1.ell(k * r) - 1.0));
    CHECK(worst < 1e-5);
  }

  TEST_CASE("coefficient tends to a quarter at the outer radius") {
    FiducialProfile p = solve_profile(4.0);
    CHECK(std::abs(p.f_t(p.radius) - 0.25) < 1e-6);
  }

  TEST_CASE("tail matches the modified Bessel decay") {
    FiducialProfile p = solve_profile(1.0);
    double r = p.radius;
    double k0 = bessel_K(0.0, 8.0 / 3.0 * std::pow(r, 1.5)) / M_PI;
    CHECK(std::abs(p.ell(r) / k0 - 1.0) < 1e-6);
  }

  TEST_CASE("decay constant and weighted bound") {
    FiducialProfile p = solve_profile(4.0);
    CHECK(decay_constant(p) <= 1.0);
    double worst = 0.0;
    for (double r : log_grid(p.eps * 2.0, 1.0, 200))
      worst = std::max({worst, std::sqrt(r) * std::exp(p.ell(r)), std::sqrt(r) * std::exp(-p.ell(r))});
    CHECK(worst <= 3.0);
  }

  TEST_CASE("grid refinement") {
    FiducialProfile a = solve_profile(4.0, 0.0, 200), b = solve_profile(4.0, 0.0, 400);
    double worst = 0.0;
    for (double r : log_grid(a.eps * 2.0, a.radius, 200)) worst = std::max(worst, std::abs(a.ell(r) - b.ell(r)));
    CHECK(worst < 1e-7);
  }

  TEST_CASE("bad requests") {
    CHECK_THROWS_AS(solve_profile(-1.0), Error);
    CHECK_THROWS_AS(solve_profile(1.0, 0.0, 50), Error);
    CHECK_THROWS_AS(solve_profile(1.0, 0.5), Error);
  }

  TEST_CASE("fiducial pair is self-dual") {
    double t = 2.0;
    FiducialProfile p = solve_profile(t);
    GaugePair g = fiducial_pair(p);
    for (Point at : {Point{0.3, 0.1}, Point{-0.2, 0.4}, Point{0.5, -0.5}}) CHECK(hitchin_residual(g, t, at).max() < 1e-6);
  }

  TEST_CASE("limiting configuration") {
    GaugePair l = limiting_fiducial();
    Mat2 phi = l.phi(1.0, 0.0);
    CHECK(std::abs(phi(0, 1) - 1.0) < 1e-14);
    CHECK(std::abs(phi(1, 0) - 1.0) < 1e-14);
    for (Point at : {Point{0.6, 0.2}, Point{-0.4, 0.7}}) {
      CHECK(frobenius(curvature(l.ax, l.ay, at)) < 1e-9);
      CHECK(frobenius(higgs_bracket(l.phi(at), Metric::Definite)) < 1e-9);
    }
  }

  TEST_CASE("convergence to the limiting configuration") {
    FiducialProfile p = solve_profile(8.0);
    LimitingDistance d = limiting_distance(p, 0.5, 1.0);
    std::cout << "limiting distance at t=8: operator " << d.operator_norm << " frobenius " << d.frobenius << "\n";
    CHECK(d.operator_norm < 1e-3);
    FiducialProfile p4 = solve_profile(4.0);
    CHECK(limiting_distance(p4, 0.5, 1.0).operator_norm > d.operator_norm);
  }

  TEST_CASE("mode perturbation is negligible beyond unit radius at t=4") {
    FiducialProfile p = solve_profile(4.0);
    for (double r : {1.0, 1.2}) {
      double f = std::abs(fiducial_mode_coefficients(p, 0, r).f_hat);
      std::cout << "mode perturbation at r=" << r << ": " << f << "\n";
      CHECK(f < 1e-10);
    }
  }

  TEST_CASE("mode perturbation decays faster than any exponential in r") {
    FiducialProfile p = solve_profile(4.0);
    double prev_rate = 0.0;
    for (double r : {0.6, 0.8, 1.0, 1.2}) {
      double a = std::abs(fiducial_mode_coefficients(p, 0, r).f_hat);
      double b = std::abs(fiducial_mode_coefficients(p, 0, r + 0.05).f_hat);
      double rate = std::log(a / b) / 0.05;
      CHECK(rate > prev_rate);
      prev_rate = rate;
    }
  }

  TEST_CASE("mode operator indicial part") {
    FiducialProfile p = solve_profile(4.0);
    ModeCoefficients c = fiducial_mode_coefficients(p, 0, 0.3);
    CHECK(c.indicial == doctest::Approx(0.25));
    CHECK(bessel_mode(p, 0).nu == doctest::Approx(1.0 / 3.0));
  }
}
