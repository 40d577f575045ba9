#ifndef DDCASIMIR_FORCE_ENGINE_HPP
#define DDCASIMIR_FORCE_ENGINE_HPP

// Casimir force between two point mirrors at x1 = 0 and x2 = q.
//
// The force is integrated along the imaginary frequency axis,
//
//   F = Int_0^inf dxi  -(xi/pi) R(xi) / (exp(2 xi q) - R(xi)),
//   R(xi) = r_+^(1)(i xi) r_-^(2)(i xi),
//
// with F = F_R = -F_L, so F < 0 is attraction. The real-axis form is kept
// for cross-checks only.

#include <cstddef>

#include "ddcasimir/mirrors.hpp"
#include "ddcasimir/quadrature.hpp"

namespace ddcasimir {

struct CavityConfig {
  MirrorSpec mirror1;  // at x = 0
  MirrorSpec mirror2;  // at x = q
  double q = 1.0;

  void validate() const;
};

/// Same couplings, both cutoff profiles replaced by None.
CavityConfig strip_cutoffs(const CavityConfig& cavity);

struct ForceResult {
  double force = 0.0;
  double abs_error_estimate = 0.0;
  double truncation_xi = 0.0;
  std::size_t evaluations = 0;
};

/// R(xi) = r_+^(1)(i xi) r_-^(2)(i xi).
double round_trip_reflectivity(const CavityConfig& cavity, double xi);

/// B_j(xi) = (xi [1 + lambda_j^2 f_j^2] + mu_j) / ((-1)^j 2 xi lambda_j f_j + mu_j),
/// j = 1, 2. Evaluated from its own formula, so R B_1 B_2 = 1 is a genuine check.
double b_factor(const CavityConfig& cavity, int j, double xi);

/// Force spectral density on the imaginary axis, xi > 0.
double integrand_imaginary(const CavityConfig& cavity, double xi);

/// Envelope bound on |Int_{xi_q}^inf F(xi) dxi| using |R| <= 1.
double imaginary_tail_bound(double q, double xi_q);

/// Smallest xi_q whose envelope tail is below tol * scale. scale <= 0 uses the
/// perfect-mirror magnitude pi/(24 q^2), which makes xi_q proportional to 1/q.
double truncation_frequency(const CavityConfig& cavity, double tol, double scale = 0.0);

struct ForceOptions {
  double rel_tol = 1e-8;
  /// Absolute floor in units of the perfect-mirror magnitude pi/(24 q^2).
  double abs_tol_scaled = 1e-12;
  std::size_t max_panels = 4000;
};

/// Throws QuadratureFailure (with the partial result) when the panel budget runs out.
ForceResult casimir_force(const CavityConfig& cavity, const ForceOptions& opts);
ForceResult casimir_force(const CavityConfig& cavity, double rel_tol = 1e-8);

/// 2 Re[ (1/2pi) w R(w) / (exp(-2 i w q) - R(w)) ] on the real axis, w > 0.
/// Throws ResonanceError when the denominator modulus drops below 1e-14.
double integrand_real_axis(const CavityConfig& cavity, double omega);

/// Int_0^omega_max of integrand_real_axis. Not tail corrected.
quadrature::Result real_axis_force(const CavityConfig& cavity, double omega_max,
                                   double rel_tol = 1e-10);

/// -pi / (24 q^2).
double perfect_mirror_reference(double q);

/// casimir_force(cavity) / casimir_force(strip_cutoffs(cavity)).
/// Throws RatioUndefinedError when the companion force is zero within its error.
double force_ratio(const CavityConfig& cavity, double rel_tol = 1e-8);

}  // namespace ddcasimir

#endif  // DDCASIMIR_FORCE_ENGINE_HPP
