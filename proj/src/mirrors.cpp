#include "ddcasimir/mirrors.hpp"

#include <algorithm>
#include <cmath>

#include "ddcasimir/errors.hpp"

namespace ddcasimir {

namespace {

constexpr double kSingularMatching = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double cutoff_beta(const CutoffProfile& profile) noexcept {
  return std::visit(overloaded{[](const cutoff::None&) { return 0.0; },
                               [](const cutoff::Exponential& e) { return e.beta; },
                               [](const cutoff::Gaussian& g) { return g.beta; }},
                    profile);
}

CutoffProfile with_beta(const CutoffProfile& profile, double beta) {
  if (std::holds_alternative<cutoff::Gaussian>(profile)) return cutoff::Gaussian{beta};
  return cutoff::Exponential{beta};
}

bool is_identity(const CutoffProfile& profile) noexcept { return cutoff_beta(profile) == 0.0; }

std::string cutoff_name(const CutoffProfile& profile) {
  return std::visit(overloaded{[](const cutoff::None&) { return std::string("none"); },
                               [](const cutoff::Exponential&) { return std::string("exp"); },
                               [](const cutoff::Gaussian&) { return std::string("gauss"); }},
                    profile);
}

double cutoff_value(const CutoffProfile& profile, double omega) {
  if (!std::isfinite(omega) || omega < 0.0) {
    throw DomainError("cutoff_value: omega must be finite and >= 0");
  }
  return std::visit(
      overloaded{[](const cutoff::None&) { return 1.0; },
                 [omega](const cutoff::Exponential& e) { return std::exp(-e.beta * omega); },
                 [omega](const cutoff::Gaussian& g) { return std::exp(-g.beta * omega * omega); }},
      profile);
}

void MirrorSpec::validate() const {
  if (!std::isfinite(mu) || mu < 0.0) throw DomainError("mirror: mu must be finite and >= 0");
  if (!std::isfinite(lambda)) throw DomainError("mirror: lambda must be finite");
  const double beta = cutoff_beta(cutoff);
  if (!std::isfinite(beta) || beta < 0.0) {
    throw DomainError("mirror: cutoff beta must be finite and >= 0");
  }
}

namespace detail {

ScatteringSet evaluate_real_axis(const MirrorSpec& mirror, double omega) {
  const double f = cutoff_value(mirror.cutoff, std::abs(omega));
  const double lf = mirror.lambda * f;
  const complex denom(omega * (1.0 + lf * lf), mirror.mu);
  const double odd = 2.0 * omega * lf;
  const complex s = omega * (1.0 - lf * lf) / denom;

  ScatteringSet out;
  out.omega = omega;
  out.r_plus = complex(odd, -mirror.mu) / denom;
  out.r_minus = complex(-odd, -mirror.mu) / denom;
  out.s_plus = s;
  out.s_minus = s;
  return out;
}

}  // namespace detail

ScatteringSet scattering_coefficients(const MirrorSpec& mirror, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("scattering_coefficients: omega must be > 0");
  }
  mirror.validate();
  return detail::evaluate_real_axis(mirror, omega);
}

double reflection_imaginary(const MirrorSpec& mirror, double xi, Side side) {
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    throw DomainError("reflection_imaginary: xi must be > 0");
  }
  const double lf = mirror.lambda * cutoff_value(mirror.cutoff, xi);
  const double denom = xi * (1.0 + lf * lf) + mirror.mu;
  const double odd = 2.0 * xi * lf;
  return side == Side::plus ? (odd - mirror.mu) / denom : -(odd + mirror.mu) / denom;
}

double MatchingResiduals::relative() const noexcept {
  const double a = field_scale > 0.0 ? field / field_scale : field;
  const double b = derivative_scale > 0.0 ? derivative / derivative_scale : derivative;
  return std::max(a, b);
}

MatchingResiduals matching_residuals(const MirrorSpec& mirror, double omega,
                                     Incidence incidence) {
  const double lf = mirror.lambda * cutoff_value(mirror.cutoff, std::abs(omega));
  if (std::abs(1.0 - lf) < kSingularMatching || std::abs(1.0 + lf) < kSingularMatching) {
    throw SingularMatchingError("matching_residuals: lambda f(omega) = +-1");
  }
  const ScatteringSet sc = scattering_coefficients(mirror, omega);
  const complex ik(0.0, omega);

  // Boundary values of the mode function (common 1/sqrt(4 pi w) dropped), and
  // the magnitudes of the terms summed to form them, which set the rounding scale.
  complex phi_right, phi_left, dphi_right, dphi_left;
  double mag_right, mag_left;
  if (incidence == Incidence::right) {
    phi_right = 1.0 + sc.r_plus;
    dphi_right = ik * (sc.r_plus - 1.0);
    phi_left = sc.s_minus;
    dphi_left = -ik * sc.s_minus;
    mag_right = 1.0 + std::abs(sc.r_plus);
    mag_left = std::abs(sc.s_minus);
  } else {
    phi_left = 1.0 + sc.r_minus;
    dphi_left = ik * (1.0 - sc.r_minus);
    phi_right = sc.s_plus;
    dphi_right = ik * sc.s_plus;
    mag_left = 1.0 + std::abs(sc.r_minus);
    mag_right = std::abs(sc.s_plus);
  }

  // Conditions multiplied through by (1 - lf)(1 + lf) so nothing blows up near
  // lambda f = +-1.
  const double a = 1.0 - lf;
  const double b = 1.0 + lf;
  const double w = std::abs(omega);
  const complex mass_term = (2.0 * mirror.mu) * phi_left;

  MatchingResiduals out;
  out.field = std::abs(a * phi_right - b * phi_left);
  out.derivative = std::abs((a * b) * dphi_right - (a * a) * dphi_left - mass_term);
  out.field_scale = std::max(std::abs(a) * mag_right, std::abs(b) * mag_left);
  out.derivative_scale = std::max({std::abs(a * b) * w * mag_right, a * a * w * mag_left,
                                   2.0 * mirror.mu * mag_left});
  return out;
}

}  // namespace ddcasimir
