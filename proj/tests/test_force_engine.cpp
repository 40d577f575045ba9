#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ddcasimir/errors.hpp"
#include "ddcasimir/force_engine.hpp"
#include "oracles.hpp"

using namespace ddcasimir;

namespace {

constexpr double pi = std::numbers::pi;

MirrorSpec exp_mirror(double mu, double lambda, double beta) {
  return MirrorSpec{mu, lambda, cutoff::Exponential{beta}};
}

// Naive integrand, written from the round-trip formula without the library.
double naive_integrand(double mu1, double l1, double b1, double mu2, double l2, double b2, double q,
                       double xi) {
  const double a1 = l1 * std::exp(-b1 * xi), a2 = l2 * std::exp(-b2 * xi);
  const double rp1 = (2.0 * xi * a1 - mu1) / (xi * (1.0 + a1 * a1) + mu1);
  const double rm2 = -(2.0 * xi * a2 + mu2) / (xi * (1.0 + a2 * a2) + mu2);
  const double R = rp1 * rm2;
  return -(xi / pi) * R / (std::exp(2.0 * xi * q) - R);
}

// Simpson on the substituted variable xi = t / (1 - t). The integrand has a
// finite limit at xi = 0, sampled just inside.
double simpson_force(double mu1, double l1, double b1, double mu2, double l2, double b2, double q) {
  auto g = [&](double t) {
    if (t >= 1.0) return 0.0;
    t = std::max(t, 1e-9);
    const double xi = t / (1.0 - t);
    return naive_integrand(mu1, l1, b1, mu2, l2, b2, q, xi) / ((1.0 - t) * (1.0 - t));
  };
  return oracle::simpson(g, 0.0, 1.0, 400000);
}

}  // namespace

TEST_CASE("perfect mirrors reproduce -pi/(24 q^2)") {
  for (double q : {0.5, 1.0, 3.0}) {
    const auto res = casimir_force(CavityConfig{delta_mirror(1e6), delta_mirror(1e6), q});
    CHECK(res.force == doctest::Approx(perfect_mirror_reference(q)).epsilon(1e-3));
    CHECK(res.abs_error_estimate > 0.0);
    CHECK(res.truncation_xi > 0.0);
  }
  CHECK(perfect_mirror_reference(2.0) == doctest::Approx(-pi / 96.0));
}

TEST_CASE("force agrees with an independent Simpson integration") {
  struct Case {
    double mu1, l1, b1, mu2, l2, b2, q;
  };
  for (const Case c : {Case{1, 0, 0, 1, 0, 0, 1}, Case{1, 2, 0, 1, 2, 0, 1}, Case{3, 2, 1, 3, 2, 1, 1},
                       Case{1, 3, 1, 3, -2, 1, 0.7}, Case{0.5, -1.5, 2, 4, 0.5, 0.3, 2}}) {
    const CavityConfig cav{exp_mirror(c.mu1, c.l1, c.b1), exp_mirror(c.mu2, c.l2, c.b2), c.q};
    const double ref = simpson_force(c.mu1, c.l1, c.b1, c.mu2, c.l2, c.b2, c.q);
    const auto res = casimir_force(cav, 1e-10);
    CHECK(res.force == doctest::Approx(ref).epsilon(1e-8));
    CHECK(std::abs(res.force - ref) <= res.abs_error_estimate + 1e-10 * std::abs(ref));
  }
}

TEST_CASE("stable integrand matches the naive form where both are accurate") {
  const CavityConfig cav{exp_mirror(1.0, 3.0, 1.0), exp_mirror(3.0, -2.0, 1.0), 1.0};
  for (double xi : {0.01, 0.1, 1.0, 5.0, 20.0}) {
    CHECK(integrand_imaginary(cav, xi) ==
          doctest::Approx(naive_integrand(1, 3, 1, 3, -2, 1, 1.0, xi)).epsilon(1e-12));
  }
}

TEST_CASE("round trip reflectivity times B factors is one") {
  oracle::Draw draw(8);
  for (int i = 0; i < 20; ++i) {
    const CavityConfig cav{exp_mirror(draw.uniform(0, 10), draw.uniform(-5, 5), draw.uniform(0, 5)),
                           exp_mirror(draw.uniform(0, 10), draw.uniform(-5, 5), draw.uniform(0, 5)), 1.0};
    for (double xi : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
      const double prod = round_trip_reflectivity(cav, xi) * b_factor(cav, 1, xi) * b_factor(cav, 2, xi);
      CHECK(std::abs(prod - 1.0) < 1e-12);
    }
  }
  const CavityConfig cav{delta_mirror(1.0), delta_mirror(1.0), 1.0};
  CHECK_THROWS_AS(b_factor(cav, 3, 1.0), DomainError);
}

TEST_CASE("truncation frequency and tail envelope") {
  const CavityConfig cav{delta_mirror(1.0), delta_mirror(1.0), 1.0};
  const double loose = truncation_frequency(cav, 1e-4);
  const double tight = truncation_frequency(cav, 1e-10);
  CHECK(tight > loose);
  const double scale = pi / 24.0;
  CHECK(imaginary_tail_bound(1.0, tight) <= 1e-10 * scale * (1.0 + 1e-9));
  // Envelope really bounds the tail of a near-perfect cavity.
  const CavityConfig perfect{delta_mirror(1e8), delta_mirror(1e8), 1.0};
  const double xq = 3.0;
  auto tail = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double xi = xq + t / (1.0 - t);
    return integrand_imaginary(perfect, xi) / ((1.0 - t) * (1.0 - t));
  };
  CHECK(std::abs(oracle::simpson(tail, 0.0, 1.0, 20000)) <= imaginary_tail_bound(1.0, xq));
  // xi_q scales as 1/q.
  const CavityConfig near{delta_mirror(1.0), delta_mirror(1.0), 0.25};
  CHECK(truncation_frequency(near, 1e-8) == doctest::Approx(4.0 * truncation_frequency(cav, 1e-8)).epsilon(1e-6));
}

TEST_CASE("cavity validation") {
  CHECK_THROWS_AS(casimir_force(CavityConfig{delta_mirror(1.0), delta_mirror(1.0), 0.0}), DomainError);
  CHECK_THROWS_AS(casimir_force(CavityConfig{delta_mirror(-1.0), delta_mirror(1.0), 1.0}), DomainError);
  CHECK_THROWS_AS(casimir_force(CavityConfig{delta_mirror(1.0), delta_mirror(1.0), 1.0}, 0.0), DomainError);
}

TEST_CASE("exchange plus parity leaves the force unchanged") {
  oracle::Draw draw(44);
  for (int i = 0; i < 10; ++i) {
    const MirrorSpec a = exp_mirror(draw.uniform(0, 10), draw.uniform(-5, 5), draw.uniform(0, 5));
    const MirrorSpec b = exp_mirror(draw.uniform(0, 10), draw.uniform(-5, 5), draw.uniform(0, 5));
    MirrorSpec pa = a, pb = b;
    pa.lambda = -a.lambda;
    pb.lambda = -b.lambda;
    const double q = draw.uniform(0.2, 3.0);
    const double f = casimir_force(CavityConfig{a, b, q}, 1e-12).force;
    CHECK(casimir_force(CavityConfig{pb, pa, q}, 1e-12).force == doctest::Approx(f).epsilon(1e-10));
  }
}

TEST_CASE("a tight panel budget throws with the partial result") {
  ForceOptions opts;
  opts.max_panels = 1;
  opts.rel_tol = 1e-14;
  const CavityConfig cav{exp_mirror(1.0, 3.0, 1.0), exp_mirror(3.0, -2.0, 1.0), 1.0};
  try {
    casimir_force(cav, opts);
    FAIL("expected QuadratureFailure");
  } catch (const QuadratureFailure& e) {
    CHECK(std::isfinite(e.partial_result()));
    CHECK(e.error_estimate() > 0.0);
  }
}

TEST_CASE("force ratio") {
  const CavityConfig plain{delta_mirror(2.0), delta_mirror(2.0), 1.0};
  CHECK(force_ratio(plain) == 1.0);

  const CavityConfig cav{exp_mirror(3.0, 2.0, 1.0), exp_mirror(3.0, 2.0, 1.0), 1.0};
  CHECK(force_ratio(cav) ==
        doctest::Approx(casimir_force(cav).force / casimir_force(strip_cutoffs(cav)).force).epsilon(1e-12));
  CHECK(is_identity(strip_cutoffs(cav).mirror1.cutoff));

  // Bisect mu for a cutoff-free cavity with zero force; the ratio is then undefined.
  auto f0 = [](double mu) {
    return casimir_force(CavityConfig{exp_mirror(mu, 2.0, 0.0), exp_mirror(mu, 2.0, 0.0), 1.0}).force;
  };
  double lo = 1.0, hi = 3.0;
  REQUIRE(f0(lo) > 0.0);
  REQUIRE(f0(hi) < 0.0);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f0(mid) > 0.0 ? lo : hi) = mid;
  }
  const CavityConfig at_zero{exp_mirror(lo, 2.0, 1.0), exp_mirror(lo, 2.0, 1.0), 1.0};
  CHECK_THROWS_AS(force_ratio(at_zero), RatioUndefinedError);
}

TEST_CASE("real-axis integrand") {
  // Delta mirrors: the real-axis integral approaches the imaginary-axis force,
  // with an oscillating truncation error of order 1/Omega.
  const CavityConfig cav{delta_mirror(1.0), delta_mirror(1.0), 1.0};
  const double ref = casimir_force(cav, 1e-10).force;
  const auto res = real_axis_force(cav, 400.0);
  CHECK(res.converged);
  CHECK(std::abs(res.value - ref) < 1e-2 * std::abs(ref));
  CHECK(std::abs(res.value - ref) < std::abs(real_axis_force(cav, 40.0).value - ref));

  // mu = 0, lambda = 1: R = -1 on the real axis, resonant at w q = pi/2.
  const MirrorSpec opaque{0.0, 1.0, cutoff::None{}};
  const CavityConfig res_cav{opaque, opaque, 1.0};
  CHECK_THROWS_AS(integrand_real_axis(res_cav, pi / 2.0), ResonanceError);
}
