#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "ddcasimir/errors.hpp"
#include "ddcasimir/sweeps.hpp"

using namespace ddcasimir;

namespace {

MirrorSpec exp_mirror(double mu, double lambda, double beta) {
  return MirrorSpec{mu, lambda, cutoff::Exponential{beta}};
}

AxisSpec axis(AxisParameter p, double lo, double hi, int n, Spacing s = Spacing::linear) {
  return AxisSpec{p, lo, hi, n, s};
}

// A grid filled from an analytic function, for contour tests.
GridSweep analytic_grid(const PlaneFunction& f, double lo, double hi, int n) {
  GridSweep g;
  g.x_axis = axis(AxisParameter::lambda1, lo, hi, n);
  g.y_axis = axis(AxisParameter::lambda2, lo, hi, n);
  for (double y : g.y_axis.values()) {
    for (double x : g.x_axis.values()) g.values.push_back(f(x, y));
  }
  return g;
}

}  // namespace

TEST_CASE("axis values and validation") {
  const auto lin = axis(AxisParameter::q, 1.0, 2.0, 5).values();
  REQUIRE(lin.size() == 5);
  CHECK(lin[1] == doctest::Approx(1.25));
  CHECK(lin.back() == 2.0);
  const auto lg = axis(AxisParameter::q, 0.1, 10.0, 3, Spacing::log).values();
  CHECK(lg[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(axis(AxisParameter::q, 2.0, 1.0, 5).validate(), DomainError);
  CHECK_THROWS_AS(axis(AxisParameter::q, 1.0, 2.0, 1).validate(), DomainError);
  CHECK_THROWS_AS(axis(AxisParameter::q, 0.0, 2.0, 3, Spacing::log).validate(), DomainError);
}

TEST_CASE("axis parameter names") {
  CHECK(parse_axis_parameter("mu") == AxisParameter::mu_both);
  CHECK(parse_axis_parameter("lambda") == AxisParameter::lambda_both);
  CHECK(parse_axis_parameter("beta2") == AxisParameter::beta2);
  CHECK_FALSE(parse_axis_parameter("omega").has_value());
  for (AxisParameter p : {AxisParameter::q, AxisParameter::mu1, AxisParameter::beta_both}) {
    CHECK(parse_axis_parameter(to_string(p)) == p);
  }
}

TEST_CASE("apply_parameter") {
  CavityConfig c{delta_mirror(1.0), delta_mirror(1.0), 1.0};
  apply_parameter(c, AxisParameter::lambda_both, 2.0);
  CHECK(c.mirror1.lambda == 2.0);
  CHECK(c.mirror2.lambda == 2.0);
  apply_parameter(c, AxisParameter::beta1, 0.5);
  CHECK(std::holds_alternative<cutoff::Exponential>(c.mirror1.cutoff));
  CHECK(cutoff_beta(c.mirror1.cutoff) == 0.5);
  CHECK(is_identity(c.mirror2.cutoff));
  apply_parameter(c, AxisParameter::q, 3.0);
  CHECK(c.q == 3.0);
}

TEST_CASE("thread count honours CASIMIR_THREADS") {
  setenv("CASIMIR_THREADS", "1", 1);
  CHECK(default_thread_count() == 1);
  unsetenv("CASIMIR_THREADS");
  CHECK(default_thread_count() >= 1);
}

TEST_CASE("distance sweep values") {
  const CavityConfig base{exp_mirror(1.0, 3.0, 1.0), exp_mirror(3.0, -2.0, 1.0), 1.0};
  const auto pts = sweep_distance(base, axis(AxisParameter::q, 0.5, 4.0, 6, Spacing::log), DistanceMode::force);
  REQUIRE(pts.size() == 6);
  for (const auto& p : pts) {
    CavityConfig c = base;
    c.q = p.q;
    CHECK(p.ok);
    CHECK(p.value == casimir_force(c).force);
  }
  CHECK_THROWS_AS(sweep_distance(base, axis(AxisParameter::mu1, 1.0, 2.0, 3), DistanceMode::force),
                  DomainError);
}

TEST_CASE("undefined ratio points are flagged, not fatal") {
  auto f0 = [](double mu) {
    return casimir_force(CavityConfig{exp_mirror(mu, 2.0, 0.0), exp_mirror(mu, 2.0, 0.0), 1.0}).force;
  };
  double lo = 1.0, hi = 3.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f0(mid) > 0.0 ? lo : hi) = mid;
  }
  const CavityConfig base{exp_mirror(lo, 2.0, 1.0), exp_mirror(lo, 2.0, 1.0), 1.0};
  const auto pts = sweep_distance(base, axis(AxisParameter::q, 1.0, 2.0, 2), DistanceMode::ratio);
  CHECK_FALSE(pts[0].ok);
  CHECK(std::isnan(pts[0].value));
  CHECK_FALSE(pts[0].note.empty());
  CHECK(pts[1].ok);
}

TEST_CASE("plane sweep is deterministic and matches direct evaluation") {
  const CavityConfig fixed{exp_mirror(1.0, 0.0, 1.0), exp_mirror(1.0, 2.0, 1.0), 1.0};
  const auto xa = axis(AxisParameter::mu1, 0.5, 3.0, 5);
  const auto ya = axis(AxisParameter::lambda1, -2.0, 2.0, 4);
  SweepOptions one;
  one.threads = 1;
  SweepOptions many;
  many.threads = 4;
  const GridSweep a = sweep_plane(xa, ya, fixed, one);
  const GridSweep b = sweep_plane(xa, ya, fixed, many);
  REQUIRE(a.values.size() == 20);
  CHECK(a.values == b.values);
  CHECK(a.zero_contours == b.zero_contours);
  const auto xs = xa.values();
  const auto ys = ya.values();
  CHECK(a.at(2, 3) == casimir_force(a.cavity_at(xs[2], ys[3])).force);
  CHECK(a.cavity_at(xs[1], ys[0]).mirror1.mu == xs[1]);
}

TEST_CASE("overlapping axes are rejected") {
  const CavityConfig fixed{delta_mirror(1.0), delta_mirror(1.0), 1.0};
  CHECK_THROWS_AS(sweep_plane(axis(AxisParameter::mu_both, 1, 2, 2), axis(AxisParameter::mu1, 1, 2, 2), fixed),
                  DomainError);
  CHECK_THROWS_AS(sweep_plane(axis(AxisParameter::q, 1, 2, 2), axis(AxisParameter::q, 1, 2, 2), fixed),
                  DomainError);
}

TEST_CASE("contour of a circle") {
  auto f = [](double x, double y) { return x * x + y * y - 1.0; };
  const GridSweep g = analytic_grid(f, -2.0, 2.0, 21);
  const auto lines = zero_force_contour(g, f);
  REQUIRE(lines.size() == 1);
  const auto& line = lines[0];
  CHECK(line.front() == line.back());
  CHECK(line.size() > 20);
  for (const auto& [x, y] : line) CHECK(std::abs(f(x, y)) < 1e-10);
}

TEST_CASE("open contour ends on the boundary") {
  auto f = [](double x, double y) { return y - 0.3 * x - 0.1; };
  const GridSweep g = analytic_grid(f, -1.0, 1.0, 9);
  const auto lines = zero_force_contour(g, f);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].front().first == doctest::Approx(-1.0));
  CHECK(lines[0].back().first == doctest::Approx(1.0));
}

TEST_CASE("saddle cells follow the centre value") {
  auto f = [](double x, double y) { return x * y + 0.1; };
  const GridSweep g = analytic_grid(f, -1.0, 1.0, 4);
  const auto lines = zero_force_contour(g, f);
  REQUIRE(lines.size() == 2);
  // Each branch of x y = -0.1 stays on one side of x = 0.
  for (const auto& line : lines) {
    const bool right = line.front().first > 0.0;
    for (const auto& [x, y] : line) {
      CHECK((x > 0.0) == right);
      CHECK(std::abs(f(x, y)) < 1e-10);
    }
  }
}

TEST_CASE("contours of the force map satisfy F = 0") {
  const CavityConfig fixed{exp_mirror(1.0, 2.0, 0.0), exp_mirror(1.0, 2.0, 0.0), 1.0};
  const GridSweep g = sweep_plane(axis(AxisParameter::mu_both, 0.5, 4.0, 8),
                                  axis(AxisParameter::lambda_both, 1.0, 3.0, 6), fixed);
  REQUIRE_FALSE(g.zero_contours.empty());
  for (const auto& line : g.zero_contours) {
    for (const auto& [x, y] : line) {
      CHECK(std::abs(casimir_force(g.cavity_at(x, y)).force) < 1e-10);
    }
  }
  CHECK(zero_force_contour(g) == g.zero_contours);
}
