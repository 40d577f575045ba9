#include "ddcasimir/smatrix_checks.hpp"

#include <algorithm>
#include <cmath>

#include "ddcasimir/errors.hpp"

namespace ddcasimir {

std::string to_string(Transparency t) {
  switch (t) {
    case Transparency::full:
      return "full";
    case Transparency::partial:
      return "partial";
    case Transparency::opaque:
      return "opaque";
  }
  return "unknown";
}

TransparencyLimit transparency_limit(const MirrorSpec& mirror) {
  if (mirror.lambda == 0.0 || !is_identity(mirror.cutoff)) {
    return {complex(1.0, 0.0), Transparency::full};
  }
  const double l2 = mirror.lambda * mirror.lambda;
  const double s = (1.0 - l2) / (1.0 + l2);
  return {complex(s, 0.0), s == 0.0 ? Transparency::opaque : Transparency::partial};
}

double PropertyReport::max_residual() const noexcept {
  return std::max({max_reality_residual, max_unitarity_residual_diag,
                   max_unitarity_residual_offdiag});
}

PropertyReport verify_axioms(const MirrorSpec& mirror, std::span<const double> omega_samples) {
  if (omega_samples.empty()) throw DomainError("verify_axioms: no samples");
  mirror.validate();

  PropertyReport rep;
  for (double w : omega_samples) {
    if (!(w > 0.0)) throw DomainError("verify_axioms: samples must be > 0");
    const ScatteringSet pos = detail::evaluate_real_axis(mirror, w);
    const ScatteringSet neg = detail::evaluate_real_axis(mirror, -w);

    const double reality = std::max({std::abs(neg.r_plus - std::conj(pos.r_plus)),
                                     std::abs(neg.r_minus - std::conj(pos.r_minus)),
                                     std::abs(neg.s_plus - std::conj(pos.s_plus)),
                                     std::abs(neg.s_minus - std::conj(pos.s_minus))});
    const double diag =
        std::max(std::abs(std::norm(pos.s_plus) + std::norm(pos.r_plus) - 1.0),
                 std::abs(std::norm(pos.s_minus) + std::norm(pos.r_minus) - 1.0));
    const double offdiag = std::max(
        std::abs(pos.s_plus * std::conj(pos.r_minus) + pos.r_plus * std::conj(pos.s_minus)),
        std::abs(pos.s_minus * std::conj(pos.r_plus) + pos.r_minus * std::conj(pos.s_plus)));

    rep.max_reality_residual = std::max(rep.max_reality_residual, reality);
    rep.max_unitarity_residual_diag = std::max(rep.max_unitarity_residual_diag, diag);
    rep.max_unitarity_residual_offdiag = std::max(rep.max_unitarity_residual_offdiag, offdiag);
  }
  rep.imag_axis_max_abs_r = imaginary_axis_bound(mirror, omega_samples);
  const TransparencyLimit lim = transparency_limit(mirror);
  rep.transparency_limit_s = lim.s_limit;
  rep.transparency_classification = lim.kind;
  return rep;
}

TransparencyProfile transparency_profile(const MirrorSpec& mirror, double omega_max, int count,
                                         double omega_min) {
  if (!(omega_max > 0.0)) throw DomainError("transparency_profile: omega_max must be > 0");
  if (count < 2) throw DomainError("transparency_profile: count must be >= 2");
  if (omega_min <= 0.0) omega_min = omega_max * 1e-4;
  if (omega_min >= omega_max) throw DomainError("transparency_profile: omega_min >= omega_max");

  TransparencyProfile prof;
  prof.samples.reserve(static_cast<std::size_t>(count));
  for (double w : log_space(omega_min, omega_max, count)) {
    const ScatteringSet sc = scattering_coefficients(mirror, w);
    prof.samples.push_back({w, std::abs(sc.r_plus), std::abs(sc.s_plus)});
  }
  prof.limit = transparency_limit(mirror);
  return prof;
}

double imaginary_axis_bound(const MirrorSpec& mirror, std::span<const double> xi_samples) {
  if (xi_samples.empty()) throw DomainError("imaginary_axis_bound: no samples");
  double worst = 0.0;
  for (double xi : xi_samples) {
    worst = std::max({worst, std::abs(reflection_imaginary(mirror, xi, Side::plus)),
                      std::abs(reflection_imaginary(mirror, xi, Side::minus))});
  }
  return worst;
}

std::vector<double> log_space(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw DomainError("log_space: bad range");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + step * i);
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace ddcasimir
