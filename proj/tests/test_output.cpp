#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "ddcasimir/output.hpp"

using namespace ddcasimir;
namespace out = ddcasimir::output;

namespace {

GridSweep small_grid() {
  GridSweep g;
  g.x_axis = AxisSpec{AxisParameter::mu1, 0.5, 1.5, 3, Spacing::linear};
  g.y_axis = AxisSpec{AxisParameter::lambda1, -1.0, 1.0, 2, Spacing::linear};
  g.fixed = CavityConfig{delta_mirror(1.0), delta_mirror(1.0), 1.0};
  g.values = {0.1, -0.2, 1.0 / 3.0, std::numeric_limits<double>::quiet_NaN(), 2e-9, -7.0};
  g.zero_contours = {{{0.6, -1.0}, {0.7, 1.0}}, {{1.2, -1.0}, {1.3, 0.0}, {1.4, 1.0}}};
  return g;
}

}  // namespace

TEST_CASE("number formatting keeps 12 significant digits") {
  CHECK(out::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(out::format_number(-0.130899693899575) == "-0.1308996939");
  CHECK(out::format_number(1e-300) == "1e-300");
  CHECK(out::format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(out::round12(1.0 / 3.0) == 0.333333333333);
}

TEST_CASE("grid CSV round trip") {
  const GridSweep g = small_grid();
  std::stringstream ss;
  out::write_grid_csv(ss, g);
  const auto table = out::read_csv(ss);
  REQUIRE(table.header == std::vector<std::string>{"x", "y", "F"});
  REQUIRE(table.rows.size() == 6);
  // Row order: y outer, x inner.
  CHECK(table.rows[1][0] == 1.0);
  CHECK(table.rows[1][1] == -1.0);
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    if (std::isnan(g.values[k])) {
      CHECK(std::isnan(table.rows[k][2]));
    } else {
      CHECK(table.rows[k][2] == out::round12(g.values[k]));
    }
  }
}

TEST_CASE("contour CSV") {
  std::stringstream ss;
  out::write_contours_csv(ss, small_grid().zero_contours);
  const auto table = out::read_csv(ss);
  REQUIRE(table.header == std::vector<std::string>{"contour_id", "x", "y"});
  REQUIRE(table.rows.size() == 5);
  CHECK(table.rows[0][0] == 0.0);
  CHECK(table.rows[4][0] == 1.0);
  CHECK(table.rows[3][1] == 1.3);
}

TEST_CASE("grid JSON") {
  const auto doc = out::grid_json(small_grid());
  CHECK(doc["x_axis"]["parameter"] == "mu1");
  CHECK(doc["x"].size() == 3);
  CHECK(doc["y"].size() == 2);
  CHECK(doc["values"].size() == 2);
  CHECK(doc["values"][0].size() == 3);
  CHECK(doc["values"][1][0].is_null());
  CHECK(doc["contours"].size() == 2);
  CHECK(doc["fixed"]["q"] == 1.0);
}

TEST_CASE("distance and profile outputs") {
  std::vector<DistancePoint> pts{{1.0, -0.5, true, ""}, {2.0, std::nan(""), false, "ratio undefined"}};
  std::stringstream ss;
  out::write_distance_csv(ss, pts);
  const auto table = out::read_csv(ss);
  REQUIRE(table.header == std::vector<std::string>{"q", "value", "ok"});
  CHECK(table.rows[0][1] == -0.5);
  CHECK(table.rows[1][2] == 0.0);
  const auto doc = out::distance_json(pts, DistanceMode::ratio);
  CHECK(doc["mode"] == "ratio");
  CHECK(doc["points"][1]["note"] == "ratio undefined");

  const auto prof = transparency_profile(MirrorSpec{1.0, 3.0, cutoff::None{}}, 40.0, 4);
  std::stringstream ps;
  out::write_profile_csv(ps, prof);
  CHECK(out::read_csv(ps).header == std::vector<std::string>{"omega", "abs_r_plus", "abs_s_plus"});
  CHECK(out::profile_json(prof)["transparency"] == "partial");
}

TEST_CASE("SVG renderings are well-formed documents") {
  std::stringstream a;
  out::write_line_svg(a, {{"f", {{1.0, 2.0}, {10.0, 3.0}}}}, "x", "y", true);
  CHECK(a.str().rfind("<svg", 0) == 0);
  CHECK(a.str().find("</svg>") != std::string::npos);
  CHECK(a.str().find("<polyline") != std::string::npos);

  std::stringstream b;
  out::write_heatmap_svg(b, small_grid());
  CHECK(b.str().find("<rect") != std::string::npos);
  CHECK(b.str().find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("malformed CSV cells throw") {
  std::stringstream ss("a,b\n1,x\n");
  CHECK_THROWS(out::read_csv(ss));
}
