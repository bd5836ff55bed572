#include <doctest.h>

#include <cmath>

#include "hitchinlab/gluing.hpp"

using namespace hitchinlab;

TEST_SUITE("gluing") {
  TEST_CASE("cutoff values") {
    CHECK(cutoff_chi(0.0) == doctest::Approx(1.0));
    CHECK(cutoff_chi(0.6) == 0.0);
    CHECK(cutoff_chi(-0.6) == 0.0);
    CHECK(cutoff_chi(0.1) == doctest::Approx(1.0));
    CHECK(cutoff_chi(0.375) == doctest::Approx(0.5));
    for (double s : {0.0, 0.2, 0.3, 0.45}) CHECK(cutoff_chi(-s) == doctest::Approx(cutoff_chi(s)));
  }

  TEST_CASE("cutoff derivatives match differences") {
    for (double s : {0.16, 0.22, 0.3, 0.41}) {
      double h = 1e-5;
      Cutoff c = cutoff(s);
      CHECK(c.d1 == doctest::Approx((cutoff_chi(s + h) - cutoff_chi(s - h)) / (2 * h)).epsilon(1e-6));
      CHECK(c.d2 == doctest::Approx((cutoff(s + h).d1 - cutoff(s - h).d1) / (2 * h)).epsilon(1e-5));
    }
    CHECK(cutoff_derivative_bound() == doctest::Approx(8.0).epsilon(1e-6));
  }

  TEST_CASE("region names") {
    for (RegionKind k : {RegionKind::Interior, RegionKind::Cylinder, RegionKind::Disk})
      CHECK(region_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(region_from_string("cone"), Error);
  }

  TEST_CASE("error term vanishes outside the collars") {
    for (RegionSpec r : {RegionSpec::cylinder(), RegionSpec::disk()}) {
      ApproximatePair a = approximate_pair(r, 6.0);
      for (double s : {0.02, 0.1, 0.55, 0.8}) {
        Point at = r.kind == RegionKind::Cylinder ? Point{2 * s - 1, 0.3} : Point{s * std::cos(0.4), s * std::sin(0.4)};
        if (std::abs(r.kind == RegionKind::Cylinder ? at.x : s) < 0.25 || s > 0.5) CHECK(error_term(a, at) < 1e-12);
      }
    }
  }

  TEST_CASE("closed form matches the curvature term") {
    for (RegionSpec r : {RegionSpec::cylinder(), RegionSpec::disk()}) {
      ApproximatePair a = approximate_pair(r, 4.0);
      for (double s : {0.3, 0.35, 0.4}) {
        Point at = r.kind == RegionKind::Cylinder ? Point{s, 0.2} : Point{s * std::cos(0.7), s * std::sin(0.7)};
        double closed = error_term(a, at), direct = error_term_direct(a, at);
        CHECK(std::abs(closed - direct) < 1e-5 * std::max(1.0, closed));
      }
    }
  }

  TEST_CASE("interior pair is exact") {
    ApproximatePair a = approximate_pair(RegionSpec::interior(), 5.0);
    CHECK(error_term_direct(a, {0.2, 0.3}) < 1e-12);
  }

  TEST_CASE("sweep decays with t") {
    Sweep sw = error_sweep({RegionKind::Cylinder, RegionKind::Disk}, {4, 6, 8, 12, 16}, 2001);
    REQUIRE(sw.fits.size() == 2);
    CHECK(sw.fits[0].slope <= -0.4);
    CHECK(sw.fits[1].slope <= -0.25);
    for (const auto& r : sw.rows) CHECK(r.weighted_sup_err <= r.sup_err);
  }

  TEST_CASE("sweep is independent of the worker count") {
    Sweep a = error_sweep({RegionKind::Disk}, {4, 8}, 1001, 1);
    Sweep b = error_sweep({RegionKind::Disk}, {4, 8}, 1001, 6);
    for (size_t k = 0; k < a.rows.size(); ++k) CHECK(a.rows[k].sup_err == b.rows[k].sup_err);
  }

  TEST_CASE("higgs operator is positive on the interior") {
    Mat2 phi = sigma_x();
    Mat2 g = sigma_z();
    Mat2 h = higgs_operator(phi, g);
    CHECK(std::real((g.adjoint() * h).trace()) > 0.0);
  }

  TEST_CASE("linearization annihilates constant diagonal sections on the interior only up to the higgs term") {
    MatrixField c = MatrixField::constant(I * sigma_x());
    Mat2 l = linearization_apply(RegionSpec::interior(), 2.0, c, {0.1, 0.2});
    CHECK(frobenius(l) < 1e-9);
    MatrixField d = MatrixField::constant(I * sigma_z());
    CHECK(frobenius(linearization_apply(RegionSpec::interior(), 2.0, d, {0.1, 0.2})) > 1.0);
  }

  TEST_CASE("indicial roots") {
    IndicialData d = indicial_data();
    CHECK(d.a == -1);
    CHECK(d.b == 1);
    CHECK(d.c == 2);
    CHECK(d.discriminant == 9);
    REQUIRE(d.roots.size() == 2);
    CHECK(d.roots[0] == -1);
    CHECK(d.roots[1] == 2);
    CHECK(d.diagonal_limit == 2);
    CHECK(d.offdiagonal_limit == 2);
    CHECK(indicial_polynomial(2) == std::vector<long>{-1, 1, 2});
  }

  TEST_CASE("core coefficients approach their limits") {
    CHECK(core_diagonal_coefficient(1.0, 1e-5) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(core_offdiagonal_coefficient(1.0, 1e-5) == doctest::Approx(2.0).epsilon(1e-6));
  }
}
