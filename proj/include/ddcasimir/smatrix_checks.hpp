#ifndef DDCASIMIR_SMATRIX_CHECKS_HPP
#define DDCASIMIR_SMATRIX_CHECKS_HPP

// Reality, unitarity, causality (imaginary-axis bound) and transparency
// checks for a single mirror's scattering matrix.

#include <span>
#include <string>
#include <vector>

#include "ddcasimir/mirrors.hpp"

namespace ddcasimir {

enum class Transparency { full, partial, opaque };

std::string to_string(Transparency t);

/// High-frequency transmission limit and its classification.
/// full when lambda = 0 or the cutoff has beta > 0; otherwise
/// s -> (1 - lambda^2)/(1 + lambda^2), which is opaque at |lambda| = 1.
struct TransparencyLimit {
  complex s_limit;
  Transparency kind;
};
TransparencyLimit transparency_limit(const MirrorSpec& mirror);

struct PropertyReport {
  double max_reality_residual = 0.0;
  double max_unitarity_residual_diag = 0.0;
  double max_unitarity_residual_offdiag = 0.0;
  double imag_axis_max_abs_r = 0.0;
  complex transparency_limit_s;
  Transparency transparency_classification = Transparency::full;

  double max_residual() const noexcept;
};

/// Maximum axiom residuals over the sample frequencies (also used as
/// imaginary-axis samples xi). Throws DomainError on an empty list or a
/// non-positive sample.
PropertyReport verify_axioms(const MirrorSpec& mirror, std::span<const double> omega_samples);

struct TransparencySample {
  double omega;
  double abs_r_plus;
  double abs_s_plus;
};

struct TransparencyProfile {
  std::vector<TransparencySample> samples;
  TransparencyLimit limit;
};

/// |r_+| and |s_+| at `count` log-spaced frequencies in [omega_min, omega_max].
/// omega_min defaults to omega_max * 1e-4.
TransparencyProfile transparency_profile(const MirrorSpec& mirror, double omega_max, int count,
                                         double omega_min = 0.0);

/// max over samples and both sides of |r(i xi)|.
double imaginary_axis_bound(const MirrorSpec& mirror, std::span<const double> xi_samples);

/// `count` points log-spaced over [lo, hi], endpoints included.
std::vector<double> log_space(double lo, double hi, int count);

}  // namespace ddcasimir

#endif  // DDCASIMIR_SMATRIX_CHECKS_HPP
