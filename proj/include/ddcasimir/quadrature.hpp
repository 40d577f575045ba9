#ifndef DDCASIMIR_QUADRATURE_HPP
#define DDCASIMIR_QUADRATURE_HPP

// Globally adaptive 10/21-point Gauss-Kronrod integration over a set of
// seeded panels. The panel with the largest embedded error estimate is
// bisected until the total estimate meets max(abs_tol, rel_tol |I|) or the
// panel budget runs out.

#include <cstddef>
#include <functional>
#include <span>

namespace ddcasimir::quadrature {

struct Options {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  std::size_t max_panels = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Single 21-point Kronrod panel with its 10-point Gauss companion.
struct PanelEstimate {
  double value;
  double error;
  double roundoff;  // error floor set by cancellation in the weighted sum
};
PanelEstimate gauss_kronrod21(const Integrand& f, double a, double b);

/// Integrates over [breaks.front(), breaks.back()], starting from the
/// panels between consecutive (sorted, distinct) break points.
Result integrate(const Integrand& f, std::span<const double> breaks, const Options& opts = {});

Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

}  // namespace ddcasimir::quadrature

#endif  // DDCASIMIR_QUADRATURE_HPP
