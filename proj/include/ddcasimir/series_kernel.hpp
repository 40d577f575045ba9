#ifndef DDCASIMIR_SERIES_KERNEL_HPP
#define DDCASIMIR_SERIES_KERNEL_HPP

// Band-limited construction of the exponential cutoff.
//
// The higher time-derivative couplings
//
//   rho_n(L) = lambda Int_0^L du/(2 pi) 4 beta/(beta^2 + u^2) (-1)^n u^(2n)/(2n)!
//
// resum to Sum_n rho_n w^2n = lambda Int_0^L du/(2 pi) 4 beta/(beta^2 + u^2) [cos(u w) - 1],
// and the Lorentzian cosine transform tends to exp(-beta |w|) as L -> infinity.

namespace ddcasimir::series {

struct SeriesParams {
  double lambda = 1.0;
  double beta = 1.0;        // 1/frequency, >= 0
  double band_limit = 1.0;  // upper limit L of the u-integral, >= 0
  int n = 1;                // series index for rho_n
  int order = 40;           // number of terms N kept by dispersion_sum
};

/// rho_n(L) by quadrature to relative accuracy well below 1e-10.
/// Zero when L = 0, beta = 0 or lambda = 0. Throws DomainError for n < 1 or L < 0.
double rho_n(const SeriesParams& params);

/// Partial sum Sum_{n=1}^{N} rho_n w^2n with N = params.order.
/// Requires w >= 0 and w L <= 50; the truncation error is bounded by
/// |lambda| (w L)^(2N+2) / (2N+2)!.
double dispersion_sum(const SeriesParams& params, double omega);

/// Bound on the first omitted Taylor term of dispersion_sum.
double dispersion_truncation_bound(const SeriesParams& params, double omega);

/// Resummed form lambda Int_0^L du/(2 pi) 4 beta/(beta^2+u^2) [cos(u w) - 1].
double dispersion_integral(double lambda, double beta, double band_limit, double omega);

/// Int_0^L du/(2 pi) 4 beta/(beta^2+u^2) cos(u w) at finite L.
double lorentzian_cosine_integral(double beta, double omega, double band_limit);

/// L -> infinity value of lorentzian_cosine_integral, extrapolated from
/// L in {1e2, 1e3, 1e4} beta assuming an error series in 1/L.
struct Extrapolation {
  double value;
  double error_estimate;
};
Extrapolation lorentzian_cosine_limit(double beta, double omega);

/// Implementation-side bound on |I(L) - exp(-beta w)|: (2/pi)(1 + 1/(beta w)) beta/L.
double lorentzian_tail_bound(double beta, double omega, double band_limit);

}  // namespace ddcasimir::series

#endif  // DDCASIMIR_SERIES_KERNEL_HPP
