#include <doctest.h>

#include <cmath>

#include "hitchinlab/bessel.hpp"

using namespace hitchinlab;

TEST_SUITE("bessel") {
  TEST_CASE("wronskian identity") {
    for (double nu : {0.0, 1.0 / 3.0, 2.0, 10.0})
      for (double x : {0.5, 5.0, 50.0}) {
        double w = x * (bessel_I_scaled(nu, x) * bessel_K_scaled(nu + 1, x) +
                        bessel_I_scaled(nu + 1, x) * bessel_K_scaled(nu, x));
        CHECK(std::abs(w - 1.0) < 1e-9);
      }
  }

  TEST_CASE("K against the integral representation") {
    CHECK(std::abs(bessel_K_quadrature(0.0, 8.0 / 3.0) / bessel_K(0.0, 8.0 / 3.0) - 1.0) < 1e-8);
    for (double nu : {0.5, 3.0, 20.0})
      for (double x : {0.3, 4.0, 30.0}) CHECK(std::abs(bessel_K_quadrature(nu, x) / bessel_K(nu, x) - 1.0) < 1e-8);
  }

  TEST_CASE("half-integer closed forms") {
    for (double x : {0.2, 1.0, 7.0}) {
      CHECK(bessel_K(0.5, x) == doctest::Approx(std::sqrt(M_PI / (2 * x)) * std::exp(-x)).epsilon(1e-12));
      CHECK(bessel_I(0.5, x) == doctest::Approx(std::sqrt(2 / (M_PI * x)) * std::sinh(x)).epsilon(1e-12));
    }
  }

  TEST_CASE("third-order I solves its ODE") {
    double nu = 1.0 / 3.0, h = 2e-3;
    for (double x : {0.5, 2.0, 8.0}) {
      double s = std::log(x);
      auto u = [nu](double ss) { return bessel_I(nu, std::exp(ss)); };
      double u2 = (-u(s + 2 * h) + 16 * u(s + h) - 30 * u(s) + 16 * u(s - h) - u(s - 2 * h)) / (12 * h * h);
      double r = -u2 + (x * x + nu * nu) * u(s);
      CHECK(std::abs(r) / ((x * x + nu * nu) * u(s)) < 1e-6);
    }
  }

  TEST_CASE("wronskian holds across the evaluation switch") {
    for (double nu : {12.0, 40.0})
      for (double x : {0.5 * nu - 0.01, 0.5 * nu + 0.01, nu, 10.0 - 0.01, 10.0 + 0.01}) {
        double w = x * (bessel_I_scaled(nu, x) * bessel_K_scaled(nu + 1, x) +
                        bessel_I_scaled(nu + 1, x) * bessel_K_scaled(nu, x));
        CHECK(std::abs(w - 1.0) < 1e-6);
      }
    CHECK(std::abs(log_bessel_I(30.0, 15.0) - std::log(bessel_I(30.0, 15.0))) < 1e-9);
  }

  TEST_CASE("scaled pair survives overflow") {
    ScaledValue i = bessel_I_pair(0.0, 1000.0);
    ScaledValue k = bessel_K_pair(0.0, 1000.0);
    CHECK(std::isfinite(i.log()));
    CHECK(std::isfinite(k.log()));
    CHECK(i.log() == doctest::Approx(log_bessel_I(0.0, 1000.0)));
    CHECK(i.log() + k.log() == doctest::Approx(-std::log(2000.0)).epsilon(1e-6));
  }

  TEST_CASE("product bound") {
    std::vector<double> xs = log_grid(1e-3, 1e3, 400);
    CHECK(product_bound(50.0, xs).epsilon() < 0.01);
    double prev = 1e300;
    for (double nu : {10.0, 20.0, 50.0, 100.0}) {
      double e = product_bound(nu, xs).max_excess;
      CHECK(e < prev);
      prev = e;
    }
    CHECK(2e-3 * bessel_I(10.0, 1e-3) * bessel_K(10.0, 1e-3) <= 1.0);
  }

  TEST_CASE("monotonicity") {
    for (double nu : {10.0, 50.0}) {
      MonotonicityReport r = monotonicity_check(nu);
      CHECK(r.pass());
      CHECK(r.i_scans.size() == 3);
    }
  }

  TEST_CASE("monotone scan flags a counterexample") {
    double nu = 10.0;
    MonotoneScan s =
        monotone_scan([nu](double x) { return log_bessel_I(nu, x) - 2.0 * x; }, 1.0, 5.0 * nu, 400, true);
    CHECK_FALSE(s.pass);
  }

  TEST_CASE("debye polynomials") {
    CHECK(debye_polynomial(0, 0.3) == doctest::Approx(1.0));
    CHECK(debye_polynomial(1, 0.3) == doctest::Approx((3 * 0.3 - 5 * 0.027) / 24));
  }
}
