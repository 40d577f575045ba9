#ifndef DDCASIMIR_MIRRORS_HPP
#define DDCASIMIR_MIRRORS_HPP

// Partially reflecting point mirrors: mu delta(x) + lambda f(|omega|) delta'(x).
//
// Units are natural (c = hbar = 1). The cutoff profile f weakens the delta'
// coupling at high frequency; f = 1 recovers the plain delta-delta' mirror and
// lambda = 0 the plain delta mirror.

#include <complex>
#include <string>
#include <variant>

namespace ddcasimir {

using complex = std::complex<double>;

namespace cutoff {
struct None {};
/// f(w) = exp(-beta w), beta in 1/frequency.
struct Exponential {
  double beta = 0.0;
};
/// f(w) = exp(-beta w^2), beta in 1/frequency^2.
struct Gaussian {
  double beta = 0.0;
};
}  // namespace cutoff

using CutoffProfile = std::variant<cutoff::None, cutoff::Exponential, cutoff::Gaussian>;

/// beta of the profile; 0 for None.
double cutoff_beta(const CutoffProfile& profile) noexcept;

/// Same kind of profile with a different beta. None is promoted to Exponential.
CutoffProfile with_beta(const CutoffProfile& profile, double beta);

/// True when f is identically 1 (None, or beta == 0).
bool is_identity(const CutoffProfile& profile) noexcept;

std::string cutoff_name(const CutoffProfile& profile);

/// f(omega) for omega >= 0. Throws DomainError for negative or non-finite omega.
double cutoff_value(const CutoffProfile& profile, double omega);

struct MirrorSpec {
  double mu = 0.0;      // delta coupling, frequency units, >= 0
  double lambda = 0.0;  // delta' coupling, dimensionless
  CutoffProfile cutoff = cutoff::None{};

  /// Throws DomainError unless mu >= 0, parameters finite and beta >= 0.
  void validate() const;
};

inline MirrorSpec delta_mirror(double mu) { return MirrorSpec{mu, 0.0, cutoff::None{}}; }

struct ScatteringSet {
  double omega = 0.0;
  complex r_plus;
  complex r_minus;
  complex s_plus;
  complex s_minus;
};

/// Reflection and transmission amplitudes on the real axis, omega > 0.
///
///   r_+- = (+-2 w lambda f - i mu) / (w [1 + lambda^2 f^2] + i mu)
///   s    =  w [1 - lambda^2 f^2]   / (w [1 + lambda^2 f^2] + i mu)
///
/// with f = f(|w|). Negative frequencies follow from r(-w) = conj(r(w)).
ScatteringSet scattering_coefficients(const MirrorSpec& mirror, double omega);

enum class Side { plus, minus };

/// r_side(i xi) for xi > 0. The rational part is continued to w = i xi while
/// the cutoff is evaluated at xi itself, which keeps the result real:
///
///   r_+(i xi) =  (2 xi lambda f(xi) - mu) / (xi [1 + lambda^2 f(xi)^2] + mu)
///   r_-(i xi) = -(2 xi lambda f(xi) + mu) / (xi [1 + lambda^2 f(xi)^2] + mu)
double reflection_imaginary(const MirrorSpec& mirror, double xi, Side side);

enum class Incidence { right, left };

struct MatchingResiduals {
  double field = 0.0;       // |(1 - lf) phi(0+) - (1 + lf) phi(0-)|
  double derivative = 0.0;  // |(1 - l^2 f^2) phi'(0+) - (1 - lf)^2 phi'(0-) - 2 mu phi(0-)|
  double field_scale = 0.0;
  double derivative_scale = 0.0;

  /// Largest residual relative to the magnitude of the terms that formed it
  /// (including the 1 + r sums inside the boundary values).
  double relative() const noexcept;
};

/// Plugs the plane-wave solution of the given incidence into the jump
/// conditions at x = 0 and returns the absolute residuals. The conditions are
/// checked multiplied through by 1 - lambda^2 f^2.
///
///   phi(0+)  = (1 + lambda f)/(1 - lambda f) phi(0-)
///   phi'(0+) = (1 - lambda f)/(1 + lambda f) phi'(0-) + 2 mu/(1 - lambda^2 f^2) phi(0-)
///
/// Throws SingularMatchingError when |1 -+ lambda f| < 1e-12.
MatchingResiduals matching_residuals(const MirrorSpec& mirror, double omega,
                                     Incidence incidence);

namespace detail {
/// Coefficient formulas for any real omega != 0, with f evaluated at |omega|.
ScatteringSet evaluate_real_axis(const MirrorSpec& mirror, double omega);
}  // namespace detail

}  // namespace ddcasimir

#endif  // DDCASIMIR_MIRRORS_HPP
