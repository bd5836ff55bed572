#include <doctest.h>

#include <cmath>
#include <iostream>

#include "hitchinlab/bessel.hpp"
#include "hitchinlab/core.hpp"

using namespace hitchinlab;

TEST_SUITE("perturbed") {
  TEST_CASE("unforced bessel solution is the decaying K") {
    DecayCertificate zero{[](double) { return 0.0; }, 0.0, 1.0};
    double nu = 10.0, x0 = 2.0, u0 = 1.5;
    PerturbedSolution s = perturbed_bessel_solve(zero, nu, x0, u0);
    double worst = 0.0;
    for (size_t k = 0; k < s.x.size(); ++k)
      worst = std::max(worst, std::abs(s.u[k] - u0 * std::exp(log_bessel_K(nu, s.x[k]) - log_bessel_K(nu, x0))));
    CHECK(worst < 1e-12);
  }

  TEST_CASE("forced bessel solution decays and solves the equation") {
    auto h = [](double x) { return std::exp(-x); };
    double nu = 10.0, x0 = 2.0;
    PerturbedSolution s = perturbed_bessel_solve({h, 1.0, 1.0}, nu, x0, 1.0);
    CHECK(s.u.front() == doctest::Approx(1.0));
    CHECK(fitted_decay_rate(s, x0, x0 + 40.0) <= -0.25);
    CHECK(bessel_ode_residual(s, h, nu, false) < 1e-7);
    CHECK(s.max_ratio_after_first() <= 0.6);
  }

  TEST_CASE("contraction failure is reported") {
    auto h = [](double x) { return 50.0 * std::exp(-x); };
    CHECK_THROWS_AS(perturbed_bessel_solve({h, 50.0, 1.0}, 0.5, 0.05, 1.0), Error);
  }

  TEST_CASE("certificate violations are rejected") {
    auto h = [](double x) { return std::exp(-0.5 * x); };
    CHECK_THROWS_AS(perturbed_bessel_solve({h, 1.0, 1.0}, 10.0, 2.0, 1.0), Error);
    DecayCertificate c = fitted_certificate(h, 0.5, 2.0);
    CHECK(c.a >= std::exp(-1.0) * std::exp(1.0) - 1e-12);
  }

  TEST_CASE("unforced euler solution is a power") {
    DecayCertificate zero{[](double) { return 0.0; }, 0.0, 1.0};
    double nu = 5.0, x0 = 2.0;
    PerturbedSolution s = perturbed_euler_solve(zero, nu, x0, 1.0);
    double worst = 0.0;
    for (size_t k = 0; k < s.x.size(); ++k) worst = std::max(worst, std::abs(s.u[k] - std::pow(s.x[k] / x0, -nu)));
    CHECK(worst < 1e-12);
  }

  TEST_CASE("forced euler solution solves the equation") {
    auto h = [](double x) { return std::exp(-2.0 * x); };
    PerturbedSolution s = perturbed_euler_solve({h, 1.0, 2.0}, 5.0, 2.0, 1.0);
    CHECK(bessel_ode_residual(s, h, 5.0, true) < 1e-7);
  }

  TEST_CASE("forced euler solution decays exponentially") {
    auto h = [](double x) { return std::exp(-2.0 * x); };
    double x0 = 2.0;
    PerturbedSolution s = perturbed_euler_solve({h, 1.0, 2.0}, 5.0, x0, 1.0);
    double kappa = 0.5;
    double rate = fitted_decay_rate(s, x0, x0 + 40.0);
    std::cout << "euler fitted decay rate " << rate << " against -" << kappa << "\n";
    CHECK(rate <= -kappa);
  }
}
