#include <doctest.h>

#include <cmath>

#include "hitchinlab/mapgrid.hpp"

using namespace hitchinlab;

namespace {

MapGrid circle_grid(int n, int stencil) {
  GridSpec spec = GridSpec::span(0.0, 1.0, n, 0.0, 1.0, n);
  MapGrid g = MapGrid::sample(spec, Target::S3, [](double x, double y) {
    Eigen::VectorXd v(5);
    v << 1.0, std::cos(x) * std::cos(y), std::sin(x) * std::cos(y), std::sin(y), 0.0;
    return v;
  });
  g.set_stencil(stencil);
  return g;
}

}  // namespace

TEST_SUITE("mapgrid") {
  TEST_CASE("fornberg weights reproduce polynomials") {
    std::vector<double> nodes{-2, -1, 0, 1, 2};
    auto w = fornberg_weights(0.0, nodes, 1);
    double d = 0.0;
    for (size_t k = 0; k < nodes.size(); ++k) d += w[k] * std::pow(nodes[k], 3);
    CHECK(d == doctest::Approx(0.0).scale(1.0));
    auto w2 = fornberg_weights(0.5, nodes, 2);
    double s = 0.0;
    for (size_t k = 0; k < nodes.size(); ++k) s += w2[k] * nodes[k] * nodes[k];
    CHECK(s == doctest::Approx(2.0));
  }

  TEST_CASE("derivative accuracy improves with stencil width") {
    MapGrid g7 = circle_grid(21, 7);
    MapGrid g9 = circle_grid(21, 9);
    auto err = [](const MapGrid& g) {
      double worst = 0.0;
      for (int i = 0; i < g.nx(); ++i) {
        Point p = g.node(i, 10);
        worst = std::max(worst, std::abs(g.d_x(i, 10)[1] + std::sin(p.x) * std::cos(p.y)));
      }
      return worst;
    };
    CHECK(err(g9) < err(g7));
    CHECK(err(g9) < 1e-9);
  }

  TEST_CASE("stencil must be odd and at least three") {
    MapGrid g = circle_grid(11, 9);
    CHECK_THROWS_AS(g.set_stencil(4), Error);
    CHECK_THROWS_AS(g.set_stencil(1), Error);
  }

  TEST_CASE("constraint is checked against the target") {
    MapGrid g = circle_grid(11, 9);
    CHECK(g.max_constraint_error() < 1e-14);
    g.at(3, 3)[1] += 1e-3;
    CHECK(g.max_constraint_error() > 1e-4);
    CHECK_THROWS_AS(g.validate(1e-8), Error);
  }

  TEST_CASE("target names round trip") {
    for (Target t : {Target::H3, Target::DS3, Target::S3, Target::PL}) CHECK(target_from_string(to_string(t)) == t);
  }
}
