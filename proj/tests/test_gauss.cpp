#include <doctest.h>

#include <cmath>

#include "hitchinlab/conformal.hpp"
#include "hitchinlab/gauss.hpp"
#include "hitchinlab/model.hpp"

using namespace hitchinlab;

namespace {

MapGrid model_hyp_grid(double t, double x_lo, double x_hi, int nx) {
  GridSpec spec = GridSpec::span(x_lo, x_hi, nx, 0.0, 0.4, 21);
  return MapGrid::sample(spec, Target::H3, [t](double x, double y) { return Eigen::VectorXd(model_f_hyp(t, x, y)); });
}

double interior_match(const MapGrid& n, double t, Branch b, double sign = 1.0) {
  double worst = 0.0;
  for (int j = 4; j < n.ny() - 4; ++j)
    for (int i = 4; i < n.nx() - 4; ++i) {
      Point p = n.node(i, j);
      worst = std::max(worst, (Vec4(n.at(i, j)) - sign * model_gauss_map(t, p.x, p.y, b)).norm());
    }
  return worst;
}

}  // namespace

TEST_SUITE("gauss") {
  TEST_CASE("model branch reproduces the closed form") {
    double t = 1.0;
    MapGrid f = model_hyp_grid(t, 0.3, 1.3, 81);
    MapGrid n = oblique_gauss_map(f, hopf_sample(f, +1));
    CHECK(interior_match(n, t, Branch::Model) < 1e-6);
    for (int j = 0; j < f.ny(); ++j)
      for (int i = 0; i < f.nx(); ++i) CHECK(gauss_defining_residual(f, n, hopf_sample(f, +1), i, j).max() < 1e-8);
  }

  TEST_CASE("negated hopf root gives minus the other root") {
    double t = 1.0;
    MapGrid f = model_hyp_grid(t, 0.3, 1.3, 81);
    HopfSample w = hopf_sample(f, -1);
    MapGrid m = oblique_gauss_map(f, w);
    CHECK(interior_match(m, t, Branch::Opposite, -1.0) < 1e-6);
    CHECK(interior_match(m, t, Branch::Model) > 0.1);
    double norm = 0.0;
    for (int j = 0; j < m.ny(); ++j)
      for (int i = 0; i < m.nx(); ++i) norm = std::max(norm, std::abs(mink_inner(Vec4(m.at(i, j)), Vec4(m.at(i, j))) - 1));
    CHECK(norm < 1e-12);
  }

  TEST_CASE("dual map inverts the Gauss map") {
    double t = 1.0;
    MapGrid f = model_hyp_grid(t, 0.3, 1.3, 81);
    MapGrid n = oblique_gauss_map(f, hopf_sample(f, +1));
    MapGrid g = dual_map(n, hopf_sample(n, +1));
    double worst = 0.0;
    for (int j = 4; j < f.ny() - 4; ++j)
      for (int i = 4; i < f.nx() - 4; ++i) worst = std::max(worst, (g.at(i, j) - f.at(i, j)).norm());
    CHECK(worst < 1e-6);
  }

  TEST_CASE("dual map records the Gram signature per node") {
    double t = 1.0;
    GridSpec spec = GridSpec::span(0.05, 2.0, 79, 0.0, 0.4, 11);
    MapGrid n = MapGrid::sample(spec, Target::DS3, [t](double x, double y) { return Eigen::VectorXd(model_gauss_map(t, x, y)); });
    MapGrid f = dual_map(n, hopf_sample(n, +1));
    double spacelike = 0.0, lorentz = 0.0;
    for (const auto& [k, v] : f.diagnostics) {
      if (k == "nodes_(0,2)") spacelike = v;
      if (k == "nodes_(1,1)") lorentz = v;
    }
    CHECK(spacelike + lorentz > 0);
    for (const auto& e : f.events)
      if (e.what.rfind("signature-change", 0) == 0) CHECK(e.i > 0);
  }

  TEST_CASE("synthetic spacelike and null tangent planes") {
    Vec4 n(0, 0, 0, 1);
    cplx omega(0.5, 0.0);
    DualCase which{};
    Vec4 f = dual_point(n, Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0), omega, &which);
    CHECK(which == DualCase::Spacelike);
    CHECK(mink_inner(f, f) == doctest::Approx(-1.0));
    CHECK(std::abs(mink_inner(f, n)) < 1e-14);
    CHECK(mink_inner(Vec4(0, 1, 0, 0), f) == doctest::Approx(-1.0));

    Vec4 nx(1, 1, 0, 0), ny(0, 0, -1, 0);
    Vec4 g = dual_point(n, nx, ny, omega, &which);
    CHECK(which == DualCase::Degenerate);
    CHECK(mink_inner(g, g) == doctest::Approx(-1.0));
    CHECK(std::abs(mink_inner(g, n)) < 1e-12);
    CHECK(mink_inner(nx, g) == doctest::Approx(-1.0));
    CHECK(std::abs(mink_inner(ny, g)) < 1e-12);
  }

  TEST_CASE("lorentzian tangent plane") {
    Vec4 n(0, 0, 0, 1);
    DualCase which{};
    Vec4 nx(0, 1, 0, 0), ny(1, -std::sqrt(2.0), 0, 0);
    Vec4 f = dual_point(n, nx, ny, cplx(0.5, 0.0), &which);
    CHECK(which == DualCase::Lorentzian);
    CHECK(mink_inner(f, f) == doctest::Approx(-1.0));
    CHECK(std::abs(mink_inner(f, n)) < 1e-12);
    CHECK(mink_inner(nx, f) == doctest::Approx(-1.0));
    CHECK(std::abs(mink_inner(ny, f)) < 1e-12);
  }

  TEST_CASE("tiny hopf root is rejected") {
    Vec4 n(0, 0, 0, 1);
    try {
      dual_point(n, Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0), cplx(1e-8, 0));
      FAIL("expected NearHopfZero");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NearHopfZero);
    }
  }

  TEST_CASE("constant map is not immersive") {
    GridSpec spec = GridSpec::span(0.0, 1.0, 11, 0.0, 1.0, 11);
    MapGrid f = MapGrid::sample(spec, Target::H3, [](double, double) {
      Eigen::VectorXd v(4);
      v << 1, 0, 0, 0;
      return v;
    });
    CHECK_THROWS_AS(oblique_gauss_map(f, hopf_sample(f, +1)), Error);
  }

  TEST_CASE("model sphere map is transgressive and extends") {
    double t = 1.0;
    GridSpec spec = GridSpec::span(-1.0, 1.0, 161, -0.5, 0.5, 81);
    MapGrid s = MapGrid::sample(spec, Target::S3, [t](double x, double y) { return Eigen::VectorXd(model_f_sph(t, x, y)); });
    TransgressivityReport rep = transgressivity_check(s);
    CHECK(rep.gamma_points > 0);
    CHECK(rep.pass());
    MapGrid n = transgressive_extend(s, +1);
    double worst = 0.0;
    for (int j = 0; j < n.ny(); ++j)
      for (int i = 0; i < n.nx(); ++i) {
        Point p = n.node(i, j);
        worst = std::max(worst, (Vec4(n.at(i, j)) - model_gauss_map(t, p.x, p.y)).norm());
      }
    CHECK(worst < 1e-5);
  }

  TEST_CASE("extension on a grid that straddles the core loop") {
    double t = 1.0;
    GridSpec spec{-1.0 + 1.0 / 160, -0.5, 1.0 / 80, 1.0 / 80, 160, 81};
    MapGrid s = MapGrid::sample(spec, Target::S3, [t](double x, double y) { return Eigen::VectorXd(model_f_sph(t, x, y)); });
    CHECK(transgressivity_check(s).pass());
    MapGrid n = transgressive_extend(s, +1);
    double worst = 0.0;
    for (int j = 0; j < n.ny(); ++j)
      for (int i = 0; i < n.nx(); ++i) worst = std::max(worst, std::abs(mink_inner(Vec4(n.at(i, j)), Vec4(n.at(i, j))) - 1));
    CHECK(worst < 1e-5);
  }

  TEST_CASE("lifted sphere map off the equator is not transgressive") {
    double t = 1.0;
    GridSpec spec = GridSpec::span(-1.0, 1.0, 81, -0.5, 0.5, 41);
    MapGrid s = MapGrid::sample(spec, Target::S3, [t](double x, double y) {
      Vec5 v = model_f_sph(t, x, y);
      double c = std::cos(0.3 * x), sn = std::sin(0.3 * x);
      double a = v[0], b = v[4];
      v[0] = c * a - sn * b;
      v[4] = sn * a + c * b;
      return Eigen::VectorXd(v);
    });
    CHECK_THROWS_AS(transgressive_extend(s, +1), Error);
  }

  TEST_CASE("harmonicity residual converges at second order on the model map") {
    double t = 1.0;
    auto at_centre = [t](int n) {
      GridSpec spec = GridSpec::span(0.3, 1.3, n, 0.0, 0.4, n);
      MapGrid f = MapGrid::sample(spec, Target::H3, [t](double x, double y) { return Eigen::VectorXd(model_f_hyp(t, x, y)); });
      return harmonicity_residual(f, (n - 1) / 2, (n - 1) / 2);
    };
    double coarse = at_centre(41), fine = at_centre(81);
    CHECK(fine < 1e-3);
    CHECK(coarse / fine > 3.5);
  }

  TEST_CASE("harmonicity residual sees a non-harmonic map") {
    GridSpec spec = GridSpec::span(0.3, 1.3, 41, 0.0, 0.4, 41);
    MapGrid f = MapGrid::sample(spec, Target::H3, [](double x, double y) {
      double a = x * x + y;
      Eigen::VectorXd v(4);
      v << std::cosh(a), std::sinh(a), 0.0, 0.0;
      return v;
    });
    CHECK(harmonicity_residual(f, 20, 20) > 0.1);
  }
}
