#include <doctest.h>

#include <cmath>

#include "hitchinlab/conformal.hpp"

using namespace hitchinlab;

TEST_SUITE("conformal") {
  TEST_CASE("hemisphere chart round trip") {
    for (double a : {0.1, 0.7, 1.3}) {
      Vec4 q(std::cosh(a), std::sinh(a) * 0.6, std::sinh(a) * 0.8, 0.0);
      PointH3 back = xi(xi_inv(PointH3(q)));
      CHECK((back.x - q).norm() < 1e-12);
    }
  }

  TEST_CASE("equator is rejected") {
    Vec5 p;
    p << 0.0, 1.0, 0.0, 0.0, 0.0;
    CHECK_THROWS_AS(xi(PointS3(p)), Error);
  }

  TEST_CASE("minkowski pairing and causal type") {
    Vec4 u(1, 0, 0, 0), v(0, 1, 0, 0), w(1, 1, 0, 0);
    CHECK(mink_inner(u, u) == doctest::Approx(-1.0));
    CHECK(mink_inner(v, v) == doctest::Approx(1.0));
    CHECK(classify(u) == Causal::Timelike);
    CHECK(classify(v) == Causal::Spacelike);
    CHECK(classify(w) == Causal::Null);
  }

  TEST_CASE("hermitian model of minkowski space") {
    Vec4 x(2.0, 0.5, -0.3, 0.7);
    Herm2 a = herm_of_mink(x);
    CHECK(a.det() == doctest::Approx(-mink_inner(x, x)));
    CHECK((mink_of_herm(a) - x).norm() < 1e-14);
  }

  TEST_CASE("unitary slice inverts") {
    Vec5 p;
    double c = std::cos(0.4), s = std::sin(0.4);
    p << 1.0, 0.3 * s, 0.4 * s, 0.0, c;
    p[3] = std::sqrt(s * s - 0.25 * s * s);
    SlicePoint sp = slice_of_sphere(PointS3(p));
    Mat2 u = upsilon(sp);
    SlicePoint back = upsilon_inv(u);
    CHECK(back.r == doctest::Approx(sp.r));
    CHECK((back.a.matrix() - sp.a.matrix()).norm() < 1e-12);
  }

  TEST_CASE("su2 chart and sl2c action") {
    Mat2 b;
    b << cplx(0.8, 0.2), cplx(0.3, 0.1), cplx(-0.3, 0.1), cplx(0.8, -0.2);
    b /= std::sqrt(b.determinant());
    Herm2 a = xi_su2(b);
    CHECK((xi_su2_inv(a) - b).norm() < 1e-12);
    Mat2 g;
    g << 2.0, 1.0, 1.0, 1.0;
    Herm2 ga = sl2c_action(g, a);
    CHECK(ga.det() == doctest::Approx(a.det()));
    Mat2 bad = 2.0 * Mat2::Identity();
    CHECK_THROWS_AS(sl2c_action(bad, a), Error);
  }
}
