#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "hitchinlab/acceptance.hpp"
#include "hitchinlab/model.hpp"
#include "hitchinlab/report.hpp"

using namespace hitchinlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("hitchinlab_report_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("numbers round trip exactly") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_number(v)) == v);
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  }

  TEST_CASE("check comparisons") {
    CHECK(check_below("a", "r", 1.0, 1.0).pass == false);
    CHECK(check_at_most("a", "r", 1.0, 1.0).pass == true);
    CHECK(check_at_least("a", "r", 1.0, 1.0).pass == true);
    CHECK(check_below("a", "r", std::nan(""), 1.0).pass == false);
    CHECK(all_pass({check_below("a", "r", 0.5, 1.0), check_at_least("b", "r", 2.0, 1.0)}));
    CHECK_FALSE(all_pass({check_below("a", "r", 2.0, 1.0)}));
  }

  TEST_CASE("report schema") {
    Provenance prov{"glue err", {{"t-list", "4,8"}, {"out", "g"}}};
    auto j = nlohmann::json::parse(report_json({check_below("x.y", "something", 0.25, 1.0)}, prov));
    CHECK(j["version"] == version);
    CHECK(j["subcommand"] == "glue err");
    REQUIRE(j["checks"].size() == 1);
    auto c = j["checks"][0];
    for (const char* key : {"check_id", "paper_ref", "value", "threshold", "pass"}) CHECK(c.contains(key));
    CHECK(c["value"].get<double>() == 0.25);
    CHECK(j["pass"] == true);
    auto e = nlohmann::json::parse(error_json("NoConvergence", "stalled", prov));
    CHECK(e["pass"] == false);
    CHECK(e["error"] == "NoConvergence");
  }

  TEST_CASE("csv header names tool, subcommand and flags") {
    Provenance prov{"model eval", {{"t", "1"}, {"workers", "auto"}}};
    CsvTable t{{"a", "b"}, {{"1", "2"}}};
    std::string text = render_csv(t, prov);
    CHECK(text.rfind("# hitchinlab 0.3.1\n# subcommand: model eval\n# flags: --t=1 --workers=auto\na,b\n1,2\n", 0) == 0);
    CsvTable back = parse_csv(text);
    CHECK(back.columns == t.columns);
    CHECK(back.rows == t.rows);
    CHECK_THROWS_AS(parse_csv("# only comments\n"), Error);
    CHECK_THROWS_AS(parse_csv("a,b\n1\n"), Error);
  }

  TEST_CASE("writes are atomic and create directories") {
    fs::path d = scratch("write");
    write_text(d / "deep" / "f.txt", "hello\n");
    CHECK(slurp(d / "deep" / "f.txt") == "hello\n");
    CHECK_FALSE(fs::exists(d / "deep" / "f.txt.partial"));
    fs::remove_all(d);
  }

  TEST_CASE("map grid round trip") {
    fs::path d = scratch("grid");
    double t = 1.0;
    GridSpec spec = GridSpec::span(0.2, 1.0, 17, 0.0, 0.5, 9);
    MapGrid g = MapGrid::sample(spec, Target::DS3, [t](double x, double y) { return Eigen::VectorXd(model_gauss_map(t, x, y)); });
    g.events.push_back({3, 4, "null-branch"});
    g.diagnostics.push_back({"nodes_null", 1.0});
    Provenance prov{"gauss map", {{"in", "f.csv"}}};
    write_mapgrid(d / "n.csv", g, prov);
    CHECK(fs::exists(sidecar_path(d / "n.csv")));
    MapGrid h = read_mapgrid(d / "n.csv");
    CHECK(h.target() == Target::DS3);
    CHECK(h.nx() == 17);
    CHECK(h.ny() == 9);
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) CHECK((h.at(i, j) - g.at(i, j)).norm() == 0.0);
    REQUIRE(h.events.size() == 1);
    CHECK(h.events[0].what == "null-branch");
    CHECK(mapgrid_csv(h, prov) == mapgrid_csv(g, prov));
    fs::remove_all(d);
  }

  TEST_CASE("missing sidecar is an error") {
    fs::path d = scratch("nosidecar");
    write_text(d / "n.csv", "x,y,c0,c1,c2,c3\n0,0,0,1,0,0\n");
    CHECK_THROWS_AS(read_mapgrid(d / "n.csv"), Error);
    fs::remove_all(d);
  }

  TEST_CASE("matrix field table layout") {
    Mat2 m;
    m << cplx(1, 2), cplx(3, 4), cplx(5, 6), cplx(7, 8);
    CsvTable t = matrix_field_table({{0.5, 0.25}}, {m});
    CHECK(t.columns == std::vector<std::string>{"x", "y", "re00", "im00", "re01", "im01", "re10", "im10", "re11", "im11"});
    CHECK(t.rows[0] == std::vector<std::string>{"0.5", "0.25", "1", "2", "3", "4", "5", "6", "7", "8"});
  }

  TEST_CASE("acceptance flattening keeps criterion failures") {
    CriterionResult ok{1, "one", 0.1, 10.0, {check_below("a", "r", 0.0, 1.0)}, ""};
    CriterionResult bad{2, "two", 0.1, 10.0, {}, "NoConvergence: stalled"};
    CHECK(ok.pass());
    CHECK_FALSE(bad.pass());
    auto flat = flatten({ok, bad});
    bool found = false;
    for (const auto& c : flat) found = found || (c.check_id == "criterion.2.error" && !c.pass);
    CHECK(found);
    CHECK(summary_line(ok).find("PASS") != std::string::npos);
    CHECK(summary_line(bad).find("FAIL") != std::string::npos);
  }
}
