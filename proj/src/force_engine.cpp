#include "ddcasimir/force_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ddcasimir/errors.hpp"

namespace ddcasimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kXiStart = 1e-12;
constexpr double kResonance = 1e-14;

struct ImaginaryTerms {
  double a1, a2;  // lambda_j f_j(xi)
};

ImaginaryTerms couplings(const CavityConfig& c, double xi) {
  return {c.mirror1.lambda * cutoff_value(c.mirror1.cutoff, xi),
          c.mirror2.lambda * cutoff_value(c.mirror2.cutoff, xi)};
}

}  // namespace

void CavityConfig::validate() const {
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("cavity: q must be > 0");
  mirror1.validate();
  mirror2.validate();
}

CavityConfig strip_cutoffs(const CavityConfig& cavity) {
  CavityConfig out = cavity;
  out.mirror1.cutoff = cutoff::None{};
  out.mirror2.cutoff = cutoff::None{};
  return out;
}

double round_trip_reflectivity(const CavityConfig& cavity, double xi) {
  return reflection_imaginary(cavity.mirror1, xi, Side::plus) *
         reflection_imaginary(cavity.mirror2, xi, Side::minus);
}

double b_factor(const CavityConfig& cavity, int j, double xi) {
  if (j != 1 && j != 2) throw DomainError("b_factor: j must be 1 or 2");
  if (!(xi > 0.0)) throw DomainError("b_factor: xi must be > 0");
  const MirrorSpec& m = j == 1 ? cavity.mirror1 : cavity.mirror2;
  const double lf = m.lambda * cutoff_value(m.cutoff, xi);
  const double sign = j == 1 ? -1.0 : 1.0;
  return (xi * (1.0 + lf * lf) + m.mu) / (sign * 2.0 * xi * lf + m.mu);
}

double integrand_imaginary(const CavityConfig& cavity, double xi) {
  if (!(xi > 0.0) || !std::isfinite(xi)) throw DomainError("integrand_imaginary: xi must be > 0");
  const double mu1 = cavity.mirror1.mu;
  const double mu2 = cavity.mirror2.mu;
  const auto [a1, a2] = couplings(cavity, xi);

  const double d1 = xi * (1.0 + a1 * a1) + mu1;
  const double d2 = xi * (1.0 + a2 * a2) + mu2;
  const double n1 = 2.0 * xi * a1 - mu1;
  const double n2 = -(2.0 * xi * a2 + mu2);
  const double r = (n1 / d1) * (n2 / d2);

  // 1 - R = xi { xi [(1 + a1 a2)^2 + (a1 + a2)^2] + (1 + a1)^2 mu2 + (1 - a2)^2 mu1 } / (d1 d2),
  // free of the mu1 mu2 cancellation; every term is non-negative.
  const double g = xi * ((1.0 + a1 * a2) * (1.0 + a1 * a2) + (a1 + a2) * (a1 + a2)) +
                   (1.0 + a1) * (1.0 + a1) * mu2 + (1.0 - a2) * (1.0 - a2) * mu1;
  const double one_minus_r = xi * (g / d1) / d2;
  const double denom = std::expm1(2.0 * xi * cavity.q) + one_minus_r;
  if (!std::isfinite(denom)) return 0.0;
  return -(xi / kPi) * r / denom;
}

double imaginary_tail_bound(double q, double xi_q) {
  const double x = 2.0 * xi_q * q;
  // (1/pi) Int_{xi_q}^inf xi e^{-2 xi q} dxi / (1 - e^{-x})
  return (1.0 + x) * std::exp(-x) / (4.0 * kPi * q * q * (-std::expm1(-x)));
}

double truncation_frequency(const CavityConfig& cavity, double tol, double scale) {
  if (!(tol > 0.0)) throw DomainError("truncation_frequency: tol must be > 0");
  if (!(cavity.q > 0.0)) throw DomainError("truncation_frequency: q must be > 0");
  const double q = cavity.q;
  if (!(scale > 0.0)) scale = std::abs(perfect_mirror_reference(q));
  const double target = tol * scale;

  // The envelope tail is decreasing in x = 2 xi q; bisect in log x.
  auto tail = [q](double x) { return imaginary_tail_bound(q, x / (2.0 * q)); };
  double lo = 1e-8, hi = 1400.0;
  if (tail(lo) <= target) return lo / (2.0 * q);
  if (tail(hi) > target) return hi / (2.0 * q);
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = std::sqrt(lo * hi);
    (tail(mid) > target ? lo : hi) = mid;
  }
  return hi / (2.0 * q);
}

ForceResult casimir_force(const CavityConfig& cavity, const ForceOptions& opts) {
  cavity.validate();
  if (!(opts.rel_tol > 0.0)) throw DomainError("casimir_force: rel_tol must be > 0");
  const double q = cavity.q;
  const double scale = std::abs(perfect_mirror_reference(q));
  const double abs_tol = opts.abs_tol_scaled * scale;

  const quadrature::Integrand f = [&cavity](double xi) { return integrand_imaginary(cavity, xi); };

  quadrature::Options qopts;
  qopts.rel_tol = 0.5 * opts.rel_tol;
  qopts.abs_tol = 0.5 * abs_tol;
  qopts.max_panels = opts.max_panels;

  double xi_q = truncation_frequency(cavity, 0.1 * opts.rel_tol, scale);

  // Seeds: the envelope peak near 1/(2q) plus the coupling scales of each mirror.
  std::vector<double> breaks{kXiStart, 0.5 / q, 1.0 / q, 2.0 / q};
  for (const MirrorSpec* m : {&cavity.mirror1, &cavity.mirror2}) {
    if (m->mu > 0.0) breaks.push_back(m->mu);
    const double beta = cutoff_beta(m->cutoff);
    if (beta > 0.0) {
      const bool gauss = std::holds_alternative<cutoff::Gaussian>(m->cutoff);
      breaks.push_back(gauss ? 1.0 / std::sqrt(beta) : 1.0 / beta);
    }
  }
  std::erase_if(breaks, [xi_q](double b) { return !(b >= kXiStart && b < xi_q); });
  breaks.push_back(xi_q);

  ForceResult out;
  auto accumulate = [&](const std::vector<double>& pts) {
    const auto res = quadrature::integrate(f, pts, qopts);
    out.force += res.value;
    out.abs_error_estimate += res.error;
    out.evaluations += res.evaluations;
    if (!res.converged) {
      throw QuadratureFailure("casimir_force: panel budget exhausted", out.force,
                              out.abs_error_estimate);
    }
  };
  accumulate(breaks);

  // Tighten the cut-off against the force actually found.
  for (int pass = 0; pass < 4; ++pass) {
    const double tail = imaginary_tail_bound(q, xi_q);
    const double wanted = std::max(0.1 * opts.rel_tol * std::abs(out.force), 0.5 * abs_tol);
    if (tail <= wanted) break;
    const double next = truncation_frequency(cavity, 1.0, wanted);
    if (!(next > xi_q)) break;
    accumulate({xi_q, next});
    xi_q = next;
  }

  // [0, xi_start] is skipped; |F(xi)| <= 1/(2 pi q) there.
  out.abs_error_estimate += imaginary_tail_bound(q, xi_q) + kXiStart / (2.0 * kPi * q);
  out.truncation_xi = xi_q;
  return out;
}

ForceResult casimir_force(const CavityConfig& cavity, double rel_tol) {
  ForceOptions opts;
  opts.rel_tol = rel_tol;
  return casimir_force(cavity, opts);
}

double integrand_real_axis(const CavityConfig& cavity, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("integrand_real_axis: omega must be > 0");
  }
  const ScatteringSet s1 = scattering_coefficients(cavity.mirror1, omega);
  const ScatteringSet s2 = scattering_coefficients(cavity.mirror2, omega);
  const complex r = s1.r_plus * s2.r_minus;
  const complex denom = std::polar(1.0, -2.0 * omega * cavity.q) - r;
  if (std::abs(denom) < kResonance) {
    throw ResonanceError("integrand_real_axis: denominator vanishes");
  }
  return (omega * r / denom).real() / kPi;
}

quadrature::Result real_axis_force(const CavityConfig& cavity, double omega_max,
                                   double rel_tol) {
  cavity.validate();
  if (!(omega_max > 0.0)) throw DomainError("real_axis_force: omega_max must be > 0");
  // One panel per half period of exp(-2 i w q).
  std::vector<double> breaks{0.0};
  const double step = 0.5 * kPi / cavity.q;
  for (double w = step; w < omega_max; w += step) breaks.push_back(w);
  breaks.push_back(omega_max);
  for (const MirrorSpec* m : {&cavity.mirror1, &cavity.mirror2}) {
    if (m->mu > 0.0 && m->mu < omega_max) breaks.push_back(m->mu);
  }

  quadrature::Options qopts;
  qopts.rel_tol = rel_tol;
  qopts.abs_tol = 1e-15;
  qopts.max_panels = breaks.size() + 20000;
  return quadrature::integrate([&cavity](double w) { return integrand_real_axis(cavity, w); },
                               breaks, qopts);
}

double perfect_mirror_reference(double q) {
  if (!(q > 0.0)) throw DomainError("perfect_mirror_reference: q must be > 0");
  return -kPi / (24.0 * q * q);
}

double force_ratio(const CavityConfig& cavity, double rel_tol) {
  const ForceResult companion = casimir_force(strip_cutoffs(cavity), rel_tol);
  if (companion.force == 0.0 || std::abs(companion.force) <= companion.abs_error_estimate) {
    throw RatioUndefinedError("force_ratio: beta = 0 force vanishes at this q");
  }
  if (is_identity(cavity.mirror1.cutoff) && is_identity(cavity.mirror2.cutoff)) return 1.0;
  return casimir_force(cavity, rel_tol).force / companion.force;
}

}  // namespace ddcasimir
