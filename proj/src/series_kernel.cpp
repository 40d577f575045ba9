#include "ddcasimir/series_kernel.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "ddcasimir/errors.hpp"
#include "ddcasimir/quadrature.hpp"

namespace ddcasimir::series {

namespace {

constexpr double kMaxPhase = 50.0;
constexpr double kTol = 1e-13;  // above the 50 eps per-panel rounding floor

// 4 beta / (2 pi (beta^2 + u^2))
double lorentzian(double beta, double u) {
  return 2.0 * beta / (std::numbers::pi * (beta * beta + u * u));
}

// x^(2n) / (2n)!
double taylor_weight(double x, int n) {
  if (x == 0.0) return 0.0;
  if (x < 30.0) {
    double w = 1.0;
    for (int k = 1; k <= 2 * n; ++k) w *= x / k;
    return w;
  }
  return std::exp(2.0 * n * std::log(x) - std::lgamma(2.0 * n + 1.0));
}

// Panel seeds on [0, L]: octaves around beta, plus half periods of cos(u w).
std::vector<double> kernel_breaks(double beta, double band_limit, double omega) {
  std::vector<double> breaks{0.0, band_limit};
  if (beta > 0.0) {
    for (double x = beta / 64.0; x < band_limit && x < 64.0 * beta; x *= 2.0) breaks.push_back(x);
  }
  if (omega > 0.0) {
    const double step = std::numbers::pi / omega;
    for (double x = step; x < band_limit; x += step) breaks.push_back(x);
  }
  return breaks;
}

void check_band(double beta, double band_limit) {
  if (!std::isfinite(band_limit) || band_limit < 0.0) {
    throw DomainError("series: band limit must be finite and >= 0");
  }
  if (!std::isfinite(beta) || beta < 0.0) throw DomainError("series: beta must be >= 0");
}

double integrate_kernel(const quadrature::Integrand& f, double beta, double band_limit,
                        double omega) {
  const auto breaks = kernel_breaks(beta, band_limit, omega);
  quadrature::Options opts;
  opts.rel_tol = kTol;
  opts.abs_tol = 1e-300;
  opts.max_panels = breaks.size() + 8000;
  const auto res = quadrature::integrate(f, breaks, opts);
  if (!res.converged) {
    throw QuadratureFailure("series: u-integral did not converge", res.value, res.error);
  }
  return res.value;
}

}  // namespace

double rho_n(const SeriesParams& params) {
  if (params.n < 1) throw DomainError("rho_n: n must be >= 1");
  check_band(params.beta, params.band_limit);
  if (params.band_limit == 0.0 || params.beta == 0.0 || params.lambda == 0.0) return 0.0;
  const double beta = params.beta;
  const int n = params.n;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double integral = integrate_kernel(
      [beta, n](double u) { return lorentzian(beta, u) * taylor_weight(u, n); }, beta,
      params.band_limit, 0.0);
  return params.lambda * sign * integral;
}

double dispersion_sum(const SeriesParams& params, double omega) {
  if (params.order < 1) throw DomainError("dispersion_sum: order must be >= 1");
  if (!std::isfinite(omega) || omega < 0.0) throw DomainError("dispersion_sum: omega must be >= 0");
  check_band(params.beta, params.band_limit);
  if (omega * params.band_limit > kMaxPhase) {
    throw DomainError("dispersion_sum: omega * band_limit exceeds 50");
  }
  if (omega == 0.0 || params.band_limit == 0.0 || params.beta == 0.0 || params.lambda == 0.0) {
    return 0.0;
  }

  // rho_n w^2n is integrated as one piece so that w^2n never appears alone.
  const double beta = params.beta;
  double sum = 0.0;
  for (int n = params.order; n >= 1; --n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double value = integrate_kernel(
        [beta, n, omega](double u) { return lorentzian(beta, u) * taylor_weight(u * omega, n); },
        beta, params.band_limit, 0.0);
    sum += params.lambda * sign * value;
  }
  return sum;
}

double dispersion_truncation_bound(const SeriesParams& params, double omega) {
  return std::abs(params.lambda) * taylor_weight(omega * params.band_limit, params.order + 1);
}

double dispersion_integral(double lambda, double beta, double band_limit, double omega) {
  check_band(beta, band_limit);
  if (!std::isfinite(omega) || omega < 0.0) {
    throw DomainError("dispersion_integral: omega must be >= 0");
  }
  if (band_limit == 0.0 || beta == 0.0 || lambda == 0.0 || omega == 0.0) return 0.0;
  // cos(x) - 1 = -2 sin^2(x/2) keeps small phases accurate.
  const double integral = integrate_kernel(
      [beta, omega](double u) {
        const double s = std::sin(0.5 * u * omega);
        return -2.0 * lorentzian(beta, u) * s * s;
      },
      beta, band_limit, omega);
  return lambda * integral;
}

double lorentzian_cosine_integral(double beta, double omega, double band_limit) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("lorentzian: beta must be > 0");
  if (!(band_limit > 0.0) || !std::isfinite(band_limit)) {
    throw DomainError("lorentzian: band limit must be > 0");
  }
  if (!std::isfinite(omega) || omega < 0.0) throw DomainError("lorentzian: omega must be >= 0");
  const quadrature::Integrand f = [beta, omega](double u) {
    return lorentzian(beta, u) * std::cos(u * omega);
  };
  const auto breaks = kernel_breaks(beta, band_limit, omega);
  quadrature::Options opts;
  opts.rel_tol = 1e-13;
  opts.abs_tol = 1e-13;
  opts.max_panels = breaks.size() + 8000;
  const auto res = quadrature::integrate(f, breaks, opts);
  if (!res.converged) {
    throw QuadratureFailure("lorentzian: cosine integral did not converge", res.value, res.error);
  }
  return res.value;
}

Extrapolation lorentzian_cosine_limit(double beta, double omega) {
  // Quadratic in h = 1/L through h = 1, 1/10, 1/100 (units of 1/(100 beta)),
  // evaluated at h = 0.
  const double i1 = lorentzian_cosine_integral(beta, omega, 1e2 * beta);
  const double i2 = lorentzian_cosine_integral(beta, omega, 1e3 * beta);
  const double i3 = lorentzian_cosine_integral(beta, omega, 1e4 * beta);
  constexpr double x1 = 1.0, x2 = 0.1, x3 = 0.01;
  const double w1 = x2 * x3 / ((x1 - x2) * (x1 - x3));
  const double w2 = x1 * x3 / ((x2 - x1) * (x2 - x3));
  const double w3 = x1 * x2 / ((x3 - x1) * (x3 - x2));
  const double value = w1 * i1 + w2 * i2 + w3 * i3;
  return {value, std::abs(value - i3)};
}

double lorentzian_tail_bound(double beta, double omega, double band_limit) {
  const double c = omega > 0.0 ? (2.0 / std::numbers::pi) * (1.0 + 1.0 / (beta * omega))
                               : 2.0 / std::numbers::pi;
  return c * beta / band_limit;
}

}  // namespace ddcasimir::series
