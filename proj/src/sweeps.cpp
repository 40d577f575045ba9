#include "ddcasimir/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <thread>

#include "ddcasimir/errors.hpp"

namespace ddcasimir {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::pair<AxisParameter, const char*> kAxisNames[] = {
    {AxisParameter::mu_both, "mu_both"},   {AxisParameter::lambda_both, "lambda_both"},
    {AxisParameter::beta_both, "beta_both"}, {AxisParameter::q, "q"},
    {AxisParameter::mu1, "mu1"},           {AxisParameter::mu2, "mu2"},
    {AxisParameter::lambda1, "lambda1"},   {AxisParameter::lambda2, "lambda2"},
    {AxisParameter::beta1, "beta1"},       {AxisParameter::beta2, "beta2"},
};

// Runs body(i) for i in [0, n) on up to `threads` workers.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
}

// Parameters touched by an axis, for the distinct-axes check.
unsigned footprint(AxisParameter p) {
  enum : unsigned { MU1 = 1, MU2 = 2, L1 = 4, L2 = 8, B1 = 16, B2 = 32, Q = 64 };
  switch (p) {
    case AxisParameter::mu_both: return MU1 | MU2;
    case AxisParameter::lambda_both: return L1 | L2;
    case AxisParameter::beta_both: return B1 | B2;
    case AxisParameter::q: return Q;
    case AxisParameter::mu1: return MU1;
    case AxisParameter::mu2: return MU2;
    case AxisParameter::lambda1: return L1;
    case AxisParameter::lambda2: return L2;
    case AxisParameter::beta1: return B1;
    case AxisParameter::beta2: return B2;
  }
  return 0;
}

}  // namespace

std::string to_string(AxisParameter p) {
  for (const auto& [param, name] : kAxisNames) {
    if (param == p) return name;
  }
  return "unknown";
}

std::optional<AxisParameter> parse_axis_parameter(const std::string& name) {
  for (const auto& [param, n] : kAxisNames) {
    if (name == n) return param;
  }
  // Short aliases used on the command line.
  if (name == "mu") return AxisParameter::mu_both;
  if (name == "lambda") return AxisParameter::lambda_both;
  if (name == "beta") return AxisParameter::beta_both;
  return std::nullopt;
}

void AxisSpec::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw DomainError("axis " + to_string(parameter) + ": need min < max");
  }
  if (count < 2) throw DomainError("axis " + to_string(parameter) + ": count must be >= 2");
  if (spacing == Spacing::log && !(min > 0.0)) {
    throw DomainError("axis " + to_string(parameter) + ": log spacing needs min > 0");
  }
}

std::vector<double> AxisSpec::values() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out[static_cast<std::size_t>(i)] =
        spacing == Spacing::linear ? min + t * (max - min)
                                   : std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
  }
  out.front() = min;
  out.back() = max;
  return out;
}

void apply_parameter(CavityConfig& c, AxisParameter p, double v) {
  switch (p) {
    case AxisParameter::mu_both: c.mirror1.mu = c.mirror2.mu = v; break;
    case AxisParameter::lambda_both: c.mirror1.lambda = c.mirror2.lambda = v; break;
    case AxisParameter::beta_both:
      c.mirror1.cutoff = with_beta(c.mirror1.cutoff, v);
      c.mirror2.cutoff = with_beta(c.mirror2.cutoff, v);
      break;
    case AxisParameter::q: c.q = v; break;
    case AxisParameter::mu1: c.mirror1.mu = v; break;
    case AxisParameter::mu2: c.mirror2.mu = v; break;
    case AxisParameter::lambda1: c.mirror1.lambda = v; break;
    case AxisParameter::lambda2: c.mirror2.lambda = v; break;
    case AxisParameter::beta1: c.mirror1.cutoff = with_beta(c.mirror1.cutoff, v); break;
    case AxisParameter::beta2: c.mirror2.cutoff = with_beta(c.mirror2.cutoff, v); break;
  }
}

unsigned default_thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CASIMIR_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::vector<DistancePoint> sweep_distance(const CavityConfig& base, const AxisSpec& q_axis,
                                          DistanceMode mode, double rel_tol, unsigned threads) {
  if (q_axis.parameter != AxisParameter::q) throw DomainError("sweep_distance: axis must be q");
  if (!(q_axis.min > 0.0)) throw DomainError("sweep_distance: q_min must be > 0");
  const std::vector<double> qs = q_axis.values();
  std::vector<DistancePoint> out(qs.size());
  parallel_for(qs.size(), threads, [&](std::size_t i) {
    CavityConfig c = base;
    c.q = qs[i];
    DistancePoint& pt = out[i];
    pt.q = qs[i];
    try {
      pt.value = mode == DistanceMode::force ? casimir_force(c, rel_tol).force
                                             : force_ratio(c, rel_tol);
    } catch (const RatioUndefinedError& e) {
      pt = {qs[i], kNaN, false, e.what()};
    } catch (const QuadratureFailure& e) {
      pt = {qs[i], kNaN, false, e.what()};
    }
  });
  return out;
}

CavityConfig GridSweep::cavity_at(double x, double y) const {
  CavityConfig c = fixed;
  apply_parameter(c, x_axis.parameter, x);
  apply_parameter(c, y_axis.parameter, y);
  return c;
}

GridSweep sweep_plane(const AxisSpec& x_axis, const AxisSpec& y_axis, const CavityConfig& fixed,
                      const SweepOptions& opts) {
  x_axis.validate();
  y_axis.validate();
  if (footprint(x_axis.parameter) & footprint(y_axis.parameter)) {
    throw DomainError("sweep_plane: axes address overlapping parameters");
  }
  GridSweep grid;
  grid.x_axis = x_axis;
  grid.y_axis = y_axis;
  grid.fixed = fixed;
  grid.rel_tol = opts.rel_tol;

  const std::vector<double> xs = x_axis.values();
  const std::vector<double> ys = y_axis.values();
  grid.values.assign(xs.size() * ys.size(), kNaN);
  parallel_for(grid.values.size(), opts.threads, [&](std::size_t k) {
    const std::size_t ix = k % xs.size();
    const std::size_t iy = k / xs.size();
    try {
      grid.values[k] = casimir_force(grid.cavity_at(xs[ix], ys[iy]), opts.rel_tol).force;
    } catch (const QuadratureFailure&) {
      grid.values[k] = kNaN;
    } catch (const DomainError&) {
      grid.values[k] = kNaN;
    }
  });

  if (opts.contours) {
    ContourOptions copts;
    copts.threads = opts.threads;
    grid.zero_contours = zero_force_contour(
        grid, [&grid](double x, double y) {
          return casimir_force(grid.cavity_at(x, y), grid.rel_tol).force;
        },
        copts);
  }
  return grid;
}

namespace {

// Edge ids: horizontal edge (ix, iy)-(ix+1, iy) -> 2 k, vertical (ix, iy)-(ix, iy+1) -> 2 k + 1,
// with k = iy * nx + ix.
struct EdgeKey {
  long id;
  int ix, iy;
  bool vertical;
};

struct Crossing {
  double x, y;
};

// Illinois false position along one grid edge, from (x0, y0, f0) to (x1, y1, f1).
Crossing refine_edge(const PlaneFunction& f, double x0, double y0, double f0, double x1, double y1,
                     double f1, double tol) {
  double a = 0.0, b = 1.0, fa = f0, fb = f1;
  auto point = [&](double t) { return Crossing{x0 + t * (x1 - x0), y0 + t * (y1 - y0)}; };
  if (std::abs(fa) < tol) return point(a);
  if (std::abs(fb) < tol) return point(b);
  int side = 0;
  double t = 0.5;
  for (int it = 0; it < 200; ++it) {
    t = (a * fb - b * fa) / (fb - fa);
    if (!(t > a && t < b)) t = 0.5 * (a + b);
    const Crossing c = point(t);
    const double ft = f(c.x, c.y);
    if (std::abs(ft) < tol || b - a < 4.0 * std::numeric_limits<double>::epsilon()) return c;
    if ((ft > 0.0) == (fb > 0.0)) {
      b = t;
      fb = ft;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = t;
      fa = ft;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
  }
  return point(t);
}

}  // namespace

std::vector<Polyline> zero_force_contour(const GridSweep& grid, const PlaneFunction& f,
                                         const ContourOptions& opts) {
  const int nx = grid.x_axis.count;
  const int ny = grid.y_axis.count;
  if (grid.values.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw DomainError("zero_force_contour: grid not filled");
  }
  const std::vector<double> xs = grid.x_axis.values();
  const std::vector<double> ys = grid.y_axis.values();
  auto positive = [](double v) { return v > 0.0; };
  auto horizontal = [nx](int ix, int iy) { return 2L * (static_cast<long>(iy) * nx + ix); };
  auto vertical = [nx](int ix, int iy) { return 2L * (static_cast<long>(iy) * nx + ix) + 1; };

  // Segments as pairs of edge ids, cell by cell.
  std::vector<std::pair<long, long>> segments;
  std::map<long, EdgeKey> edges;
  for (int iy = 0; iy + 1 < ny; ++iy) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      const double v00 = grid.at(ix, iy), v10 = grid.at(ix + 1, iy);
      const double v11 = grid.at(ix + 1, iy + 1), v01 = grid.at(ix, iy + 1);
      if (std::isnan(v00) || std::isnan(v10) || std::isnan(v11) || std::isnan(v01)) continue;
      const int mask = (positive(v00) ? 1 : 0) | (positive(v10) ? 2 : 0) |
                       (positive(v11) ? 4 : 0) | (positive(v01) ? 8 : 0);
      if (mask == 0 || mask == 15) continue;

      const EdgeKey bottom{horizontal(ix, iy), ix, iy, false};
      const EdgeKey top{horizontal(ix, iy + 1), ix, iy + 1, false};
      const EdgeKey left{vertical(ix, iy), ix, iy, true};
      const EdgeKey right{vertical(ix + 1, iy), ix + 1, iy, true};
      auto add = [&](const EdgeKey& a, const EdgeKey& b) {
        edges.emplace(a.id, a);
        edges.emplace(b.id, b);
        segments.emplace_back(a.id, b.id);
      };

      switch (mask) {
        case 1: case 14: add(bottom, left); break;
        case 2: case 13: add(bottom, right); break;
        case 3: case 12: add(left, right); break;
        case 4: case 11: add(right, top); break;
        case 6: case 9: add(bottom, top); break;
        case 7: case 8: add(left, top); break;
        case 5: case 10: {
          const double centre =
              f(0.5 * (xs[static_cast<std::size_t>(ix)] + xs[static_cast<std::size_t>(ix + 1)]),
                0.5 * (ys[static_cast<std::size_t>(iy)] + ys[static_cast<std::size_t>(iy + 1)]));
          // The centre joins the diagonal corners that share its sign.
          const bool centre_like_00 = positive(centre) == positive(v00);
          if (centre_like_00) {
            add(bottom, right);
            add(left, top);
          } else {
            add(bottom, left);
            add(right, top);
          }
          break;
        }
        default: break;
      }
    }
  }

  // Refine every crossing once; shared edges give shared vertices.
  std::vector<EdgeKey> keys;
  keys.reserve(edges.size());
  for (const auto& [id, key] : edges) keys.push_back(key);
  std::vector<Crossing> points(keys.size());
  parallel_for(keys.size(), opts.threads, [&](std::size_t i) {
    const EdgeKey& k = keys[i];
    const int jx = k.vertical ? k.ix : k.ix + 1;
    const int jy = k.vertical ? k.iy + 1 : k.iy;
    points[i] = refine_edge(f, xs[static_cast<std::size_t>(k.ix)], ys[static_cast<std::size_t>(k.iy)],
                            grid.at(k.ix, k.iy), xs[static_cast<std::size_t>(jx)],
                            ys[static_cast<std::size_t>(jy)], grid.at(jx, jy), opts.tolerance);
  });
  std::map<long, Crossing> vertex;
  for (std::size_t i = 0; i < keys.size(); ++i) vertex.emplace(keys[i].id, points[i]);

  // Chain segments through shared edges: open chains (boundary ends) first,
  // then closed loops.
  std::multimap<long, std::size_t> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident.emplace(segments[s].first, s);
    incident.emplace(segments[s].second, s);
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<Polyline> lines;

  auto walk = [&](long start_edge, std::size_t first_seg) {
    std::vector<long> chain{start_edge};
    long current = start_edge;
    std::size_t seg = first_seg;
    while (true) {
      used[seg] = true;
      const long next = segments[seg].first == current ? segments[seg].second : segments[seg].first;
      chain.push_back(next);
      current = next;
      bool advanced = false;
      auto [lo, hi] = incident.equal_range(current);
      for (auto it = lo; it != hi; ++it) {
        if (!used[it->second]) {
          seg = it->second;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
    Polyline line;
    for (long e : chain) {
      const Crossing& c = vertex.at(e);
      if (line.empty() || line.back() != std::make_pair(c.x, c.y)) line.emplace_back(c.x, c.y);
    }
    if (line.size() >= 2) lines.push_back(std::move(line));
  };

  for (const auto& [edge, seg] : incident) {
    if (used[seg] || incident.count(edge) != 1) continue;
    walk(edge, seg);
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) walk(segments[s].first, s);
  }
  return lines;
}

std::vector<Polyline> zero_force_contour(const GridSweep& grid) {
  ContourOptions opts;
  opts.threads = 0;
  return zero_force_contour(
      grid,
      [&grid](double x, double y) { return casimir_force(grid.cavity_at(x, y), grid.rel_tol).force; },
      opts);
}

}  // namespace ddcasimir
