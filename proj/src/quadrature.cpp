#include "ddcasimir/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "ddcasimir/errors.hpp"

namespace ddcasimir::quadrature {

namespace {

// Kronrod abscissae; odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a, b;
  PanelEstimate est;
};

bool by_error(const Panel& lhs, const Panel& rhs) { return lhs.est.error < rhs.est.error; }

}  // namespace

PanelEstimate gauss_kronrod21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  const double fc = f(center);
  double res_k = kWgk[10] * fc;
  double res_g = 0.0;
  double res_abs = std::abs(res_k);
  std::array<double, 10> f1{}, f2{};
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    res_k += kWgk[j] * sum;
    res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * sum;
  }

  const double mean = 0.5 * res_k;
  double res_asc = kWgk[10] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  const double value = res_k * half;
  res_abs *= abs_half;
  res_asc *= abs_half;

  // QUADPACK error heuristic.
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  const double roundoff = 50.0 * kEps * res_abs;
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(roundoff, err);
  }
  return {value, err, roundoff};
}

Result integrate(const Integrand& f, std::span<const double> breaks, const Options& opts) {
  std::vector<double> pts(breaks.begin(), breaks.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) throw DomainError("integrate: need at least two distinct break points");
  for (double p : pts) {
    if (!std::isfinite(p)) throw DomainError("integrate: break points must be finite");
  }

  std::vector<Panel> heap;
  std::vector<Panel> parked;  // too narrow to bisect
  heap.reserve(opts.max_panels + pts.size());
  Result out;
  double value = 0.0, error = 0.0, floor = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Panel p{pts[i], pts[i + 1], gauss_kronrod21(f, pts[i], pts[i + 1])};
    out.evaluations += 21;
    value += p.est.value;
    error += p.est.error;
    floor += p.est.roundoff;
    heap.push_back(p);
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  const double min_width = 64.0 * kEps * std::max(std::abs(pts.front()), std::abs(pts.back()));
  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };

  while (!heap.empty() && error > target() && error > 1.0001 * floor &&
         heap.size() + parked.size() < opts.max_panels) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    if (worst.b - worst.a < min_width) {
      parked.push_back(worst);
      floor += worst.est.error - worst.est.roundoff;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left{worst.a, mid, gauss_kronrod21(f, worst.a, mid)};
    Panel right{mid, worst.b, gauss_kronrod21(f, mid, worst.b)};
    out.evaluations += 42;
    value += left.est.value + right.est.value - worst.est.value;
    error += left.est.error + right.est.error - worst.est.error;
    floor += left.est.roundoff + right.est.roundoff - worst.est.roundoff;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }

  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  double roundoff = 0.0;
  for (const auto* list : {&heap, &parked}) {
    for (const Panel& p : *list) {
      value += p.est.value;
      error += p.est.error;
      roundoff += p.est.roundoff;
    }
  }
  for (const Panel& p : parked) roundoff += p.est.error - p.est.roundoff;
  out.value = value;
  out.error = error;
  out.panels = heap.size() + parked.size();
  out.converged = error <= target() || error <= 1.0001 * roundoff;
  return out;
}

Result integrate(const Integrand& f, double a, double b, const Options& opts) {
  if (a > b) {
    Result flipped = integrate(f, b, a, opts);
    flipped.value = -flipped.value;
    return flipped;
  }
  const std::array<double, 2> ends{a, b};
  return integrate(f, ends, opts);
}

}  // namespace ddcasimir::quadrature
