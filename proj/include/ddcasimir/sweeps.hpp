#ifndef DDCASIMIR_SWEEPS_HPP
#define DDCASIMIR_SWEEPS_HPP

// Parameter sweeps of the Casimir force: distance scans, two-parameter force
// maps and extraction of their F = 0 level set.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddcasimir/force_engine.hpp"

namespace ddcasimir {

enum class AxisParameter {
  mu_both,
  lambda_both,
  beta_both,
  q,
  mu1,
  mu2,
  lambda1,
  lambda2,
  beta1,
  beta2,
};

enum class Spacing { linear, log };

std::string to_string(AxisParameter p);
std::optional<AxisParameter> parse_axis_parameter(const std::string& name);

struct AxisSpec {
  AxisParameter parameter = AxisParameter::q;
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  Spacing spacing = Spacing::linear;

  /// Throws DomainError unless min < max, count >= 2 and (log) min > 0.
  void validate() const;
  std::vector<double> values() const;
};

/// Writes `value` into the cavity field(s) addressed by `parameter`. Setting a
/// beta on a mirror whose cutoff is None switches it to Exponential.
void apply_parameter(CavityConfig& cavity, AxisParameter parameter, double value);

/// Worker count for sweeps: hardware concurrency, capped by CASIMIR_THREADS.
unsigned default_thread_count();

enum class DistanceMode { force, ratio };

struct DistancePoint {
  double q = 0.0;
  double value = 0.0;
  bool ok = true;
  std::string note;  // why the point is flagged when !ok
};

/// casimir_force or force_ratio at each q of the axis. A sample whose ratio is
/// undefined (or whose quadrature fails) is flagged rather than aborting.
std::vector<DistancePoint> sweep_distance(const CavityConfig& base, const AxisSpec& q_axis,
                                          DistanceMode mode, double rel_tol = 1e-8,
                                          unsigned threads = 0);

using Polyline = std::vector<std::pair<double, double>>;

struct GridSweep {
  AxisSpec x_axis;
  AxisSpec y_axis;
  CavityConfig fixed;
  double rel_tol = 1e-8;
  /// Row-major, y outer: values[iy * x_axis.count + ix]. NaN marks a failed cell.
  std::vector<double> values;
  std::vector<Polyline> zero_contours;

  double at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * static_cast<std::size_t>(x_axis.count) +
                  static_cast<std::size_t>(ix)];
  }
  CavityConfig cavity_at(double x, double y) const;
};

struct SweepOptions {
  double rel_tol = 1e-8;
  unsigned threads = 0;  // 0: default_thread_count()
  bool contours = true;
};

/// Fills the force map cell by cell (in parallel, each cell in a fixed slot)
/// and extracts the zero-force contours.
GridSweep sweep_plane(const AxisSpec& x_axis, const AxisSpec& y_axis, const CavityConfig& fixed,
                      const SweepOptions& opts = {});

using PlaneFunction = std::function<double(double x, double y)>;

struct ContourOptions {
  double tolerance = 1e-10;  // |F| at each refined vertex
  unsigned threads = 1;
};

/// Marching squares on the F = 0 level set of `grid.values`. Each crossing is
/// refined along its grid edge with `f` until |f| < tolerance; saddle cells
/// are resolved by the sign of f at the cell centre.
std::vector<Polyline> zero_force_contour(const GridSweep& grid, const PlaneFunction& f,
                                         const ContourOptions& opts = {});

/// Same, with f re-evaluating casimir_force on grid.fixed.
std::vector<Polyline> zero_force_contour(const GridSweep& grid);

}  // namespace ddcasimir

#endif  // DDCASIMIR_SWEEPS_HPP
