#include <doctest.h>

#include <cmath>
#include <vector>

#include "hitchinlab/model.hpp"

using namespace hitchinlab;

TEST_SUITE("model") {
  TEST_CASE("model pair is self-dual on both sides of the core loop") {
    for (double t : {0.5, 1.0, 4.0})
      for (double x : {-0.9, -0.2, 0.05, 0.6})
        for (double y : {0.0, 0.37}) CHECK(hitchin_residual(model_pair(t), t, {x, y}).max() < 1e-7);
  }

  TEST_CASE("higgs determinant is constant") {
    GaugePair p = model_pair(2.0);
    for (double x : {0.1, 0.5, 1.5}) CHECK(std::abs(p.phi(x, 0.3).determinant() + 0.25) < 1e-12);
  }

  TEST_CASE("symmetry identities for mirrored samples") {
    std::vector<Point> pts;
    for (int k = -6; k <= 6; ++k)
      if (k != 0) pts.push_back({0.15 * k, 0.05 * k});
    for (double t : {0.5, 1.0, 3.0}) CHECK(model_symmetry_check(t, pts).max() < 1e-10);
  }

  TEST_CASE("model maps lie on their targets") {
    ModelMaps m = model_maps(1.0, 0.4, 0.2);
    auto q4 = [](const Vec4& v) { return -v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]; };
    CHECK(q4(m.f_hyp) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(q4(m.n) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.f_sph[0] == 1.0);
    CHECK(std::abs(m.f_sph.tail<4>().norm() - 1.0) < 1e-12);
  }

  TEST_CASE("opposite branch gives the other root") {
    Vec4 n = model_gauss_map(1.0, 0.5, 0.1);
    Vec4 m = model_gauss_map(1.0, 0.5, 0.1, Branch::Opposite);
    CHECK((n - m).norm() > 1e-3);
    CHECK(-m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3] == doctest::Approx(1.0));
  }

  TEST_CASE("frame is parallel for the flat connection") {
    double t = 1.5;
    MatrixField f = model_frame_field(t);
    Connection d = model_flat_connection(t);
    for (Point at : {Point{0.3, 0.1}, Point{1.1, -0.4}}) {
      Mat2 rx = f.d_x(at.x, at.y) + d.ax(at) * f(at);
      Mat2 ry = f.d_y(at.x, at.y) + d.ay(at) * f(at);
      CHECK(rx.norm() < 1e-12);
      CHECK(ry.norm() < 1e-12);
    }
  }

  TEST_CASE("singular gauge rejects the core loop") {
    CHECK_THROWS_AS(singular_gauge(0.0), Error);
    CHECK_NOTHROW(singular_gauge(0.3));
  }

  TEST_CASE("reflection is an involution") {
    Herm2 r = model_reflection(1.0, 0.4);
    CHECK((r.matrix() * r.matrix() - Mat2::Identity()).norm() < 1e-12);
  }
}
