#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddcasimir/errors.hpp"
#include "ddcasimir/output.hpp"
#include "ddcasimir/series_kernel.hpp"
#include "ddcasimir/smatrix_checks.hpp"

namespace ddcasimir::cli {

using nlohmann::json;
namespace out_fmt = ddcasimir::output;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MirrorFlags {
  double mu = 1.0;
  double lambda = 0.0;
  double beta = 0.0;
};

struct RunConfig {
  std::string subcommand;
  MirrorFlags single;
  MirrorFlags m1, m2;
  std::string cutoff = "exp";
  double q = 1.0;
  double rel_tol = 1e-8;
  double omega_min = 0.0;
  double omega_max = 0.0;
  int count = 0;
  double threshold = 1e-12;
  std::string grid;
  std::string mode = "force";
  bool no_contours = false;
  bool ratio = false;
  std::string out_path;
  std::string format;
};

CutoffProfile make_profile(const std::string& kind, double beta) {
  if (kind == "none") {
    if (beta != 0.0) throw UsageError("--cutoff none does not take a beta");
    return cutoff::None{};
  }
  if (kind == "exp") return cutoff::Exponential{beta};
  if (kind == "gauss") return cutoff::Gaussian{beta};
  throw UsageError("unknown cutoff '" + kind + "'");
}

MirrorSpec make_mirror(const MirrorFlags& f, const std::string& kind) {
  MirrorSpec m{f.mu, f.lambda, make_profile(kind, f.beta)};
  try {
    m.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return m;
}

CavityConfig make_cavity(const RunConfig& cfg) {
  CavityConfig c{make_mirror(cfg.m1, cfg.cutoff), make_mirror(cfg.m2, cfg.cutoff), cfg.q};
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return c;
}

// Runs `body` against the --out file, or `fallback` when no path was given.
void emit(const RunConfig& cfg, std::ostream& fallback,
          const std::function<void(std::ostream&)>& body) {
  if (cfg.out_path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(cfg.out_path);
  if (!file) throw std::runtime_error("cannot open output file " + cfg.out_path);
  body(file);
}

void emit_json(const RunConfig& cfg, std::ostream& out, const json& doc) {
  emit(cfg, out, [&doc](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (cfg.format == f) return;
  }
  throw UsageError("--format " + cfg.format + " is not available for " + cfg.subcommand);
}

int run_coeffs(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"csv", "json", "svg"});
  const MirrorSpec mirror = make_mirror(cfg.single, cfg.cutoff);
  const double omega_max = cfg.omega_max > 0.0 ? cfg.omega_max : 40.0;
  const int count = cfg.count > 0 ? cfg.count : 400;
  const TransparencyProfile prof = transparency_profile(mirror, omega_max, count, cfg.omega_min);
  if (cfg.format == "csv") {
    emit(cfg, out, [&](std::ostream& os) { out_fmt::write_profile_csv(os, prof); });
  } else if (cfg.format == "json") {
    json doc = out_fmt::profile_json(prof);
    doc["mirror"] = out_fmt::mirror_json(mirror);
    emit_json(cfg, out, doc);
  } else {
    out_fmt::LineSeries r{"|r+|", {}}, s{"|s+|", {}};
    for (const auto& p : prof.samples) {
      r.points.emplace_back(p.omega, p.abs_r_plus);
      s.points.emplace_back(p.omega, p.abs_s_plus);
    }
    emit(cfg, out, [&](std::ostream& os) { out_fmt::write_line_svg(os, {r, s}, "omega", "modulus", true); });
  }
  return kOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"json"});
  const MirrorSpec mirror = make_mirror(cfg.single, cfg.cutoff);
  const double lo = cfg.omega_min > 0.0 ? cfg.omega_min : 1e-2;
  const double hi = cfg.omega_max > 0.0 ? cfg.omega_max : 1e3;
  const int count = cfg.count > 0 ? cfg.count : 1000;
  const std::vector<double> samples = log_space(lo, hi, count);

  const PropertyReport rep = verify_axioms(mirror, samples);
  // An opaque mirror (|lambda| = 1, no cutoff) reflects totally from one side.
  const bool strict = mirror.mu > 0.0 && rep.transparency_classification != Transparency::opaque;
  bool pass = rep.max_residual() <= cfg.threshold && rep.imag_axis_max_abs_r <= 1.0 &&
              (!strict || rep.imag_axis_max_abs_r < 1.0);

  // Jump conditions at the mirror, both incidences; singular points skipped.
  double worst_matching = 0.0;
  std::size_t skipped = 0;
  for (double w : samples) {
    for (Incidence inc : {Incidence::right, Incidence::left}) {
      try {
        worst_matching = std::max(worst_matching, matching_residuals(mirror, w, inc).relative());
      } catch (const SingularMatchingError&) {
        ++skipped;
      }
    }
  }
  pass = pass && worst_matching <= cfg.threshold;

  json doc = out_fmt::report_json(rep);
  doc["mirror"] = out_fmt::mirror_json(mirror);
  doc["samples"] = {{"omega_min", out_fmt::round12(lo)}, {"omega_max", out_fmt::round12(hi)}, {"count", count}};
  doc["threshold"] = out_fmt::round12(cfg.threshold);
  doc["matching"] = {{"max_relative_residual", out_fmt::round12(worst_matching)},
                     {"singular_samples_skipped", skipped}};

  // Band-limited construction of the exponential cutoff for this beta; informational.
  const double beta = cutoff_beta(mirror.cutoff);
  if (beta > 0.0 && std::holds_alternative<cutoff::Exponential>(mirror.cutoff)) {
    series::SeriesParams sp{mirror.lambda == 0.0 ? 1.0 : mirror.lambda, beta, 1.0, 1, 40};
    const double sum = series::dispersion_sum(sp, 1.0);
    const double closed = series::dispersion_integral(sp.lambda, beta, sp.band_limit, 1.0);
    const auto limit = series::lorentzian_cosine_limit(beta, 1.0);
    const double limit_err = std::abs(limit.value - std::exp(-beta));
    doc["series"] = {{"dispersion_sum", out_fmt::round12(sum)},
                     {"dispersion_integral", out_fmt::round12(closed)},
                     {"dispersion_difference", out_fmt::round12(std::abs(sum - closed))},
                     {"lorentzian_limit", out_fmt::round12(limit.value)},
                     {"lorentzian_limit_error", out_fmt::round12(limit_err)}};
  }
  doc["pass"] = pass;
  emit_json(cfg, out, doc);
  return pass ? kOk : kVerifyFailed;
}

int run_force(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"csv", "json"});
  const CavityConfig cavity = make_cavity(cfg);
  const ForceResult res = casimir_force(cavity, cfg.rel_tol);
  const double ratio = cfg.ratio ? force_ratio(cavity, cfg.rel_tol) : 0.0;
  if (cfg.format == "json") {
    json doc = out_fmt::force_json(cavity, res);
    if (cfg.ratio) doc["ratio"] = out_fmt::round12(ratio);
    emit_json(cfg, out, doc);
  } else {
    emit(cfg, out, [&](std::ostream& os) {
      os << "force,abs_error_estimate,truncation_xi,evaluations" << (cfg.ratio ? ",ratio\n" : "\n")
         << out_fmt::format_number(res.force) << ',' << out_fmt::format_number(res.abs_error_estimate)
         << ',' << out_fmt::format_number(res.truncation_xi) << ',' << res.evaluations;
      if (cfg.ratio) os << ',' << out_fmt::format_number(ratio);
      os << '\n';
    });
  }
  return kOk;
}

int run_sweep(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"csv", "json", "svg"});
  const CavityConfig base = make_cavity(cfg);
  const std::vector<AxisSpec> axes = parse_grid(cfg.grid);

  if (axes.size() == 1) {
    if (axes[0].parameter != AxisParameter::q) throw UsageError("a one-axis sweep must be over q");
    if (cfg.mode != "force" && cfg.mode != "ratio") throw UsageError("--mode must be force or ratio");
    const DistanceMode mode = cfg.mode == "ratio" ? DistanceMode::ratio : DistanceMode::force;
    const auto pts = sweep_distance(base, axes[0], mode, cfg.rel_tol);
    if (cfg.format == "csv") {
      emit(cfg, out, [&](std::ostream& os) { out_fmt::write_distance_csv(os, pts); });
    } else if (cfg.format == "json") {
      emit_json(cfg, out, out_fmt::distance_json(pts, mode));
    } else {
      out_fmt::LineSeries s{cfg.mode, {}};
      for (const auto& p : pts) s.points.emplace_back(p.q, p.value);
      emit(cfg, out, [&](std::ostream& os) {
        out_fmt::write_line_svg(os, {s}, "q", cfg.mode, axes[0].spacing == Spacing::log);
      });
    }
    return kOk;
  }
  if (axes.size() != 2) throw UsageError("--grid takes one (q) or two axes");

  SweepOptions opts;
  opts.rel_tol = cfg.rel_tol;
  opts.contours = !cfg.no_contours;
  const GridSweep grid = sweep_plane(axes[0], axes[1], base, opts);
  if (cfg.format == "csv") {
    emit(cfg, out, [&](std::ostream& os) { out_fmt::write_grid_csv(os, grid); });
    if (!cfg.out_path.empty() && opts.contours) {
      std::ofstream companion(contour_path(cfg.out_path));
      if (!companion) throw std::runtime_error("cannot open contour file");
      out_fmt::write_contours_csv(companion, grid.zero_contours);
    }
  } else if (cfg.format == "json") {
    emit_json(cfg, out, out_fmt::grid_json(grid));
  } else {
    emit(cfg, out, [&](std::ostream& os) { out_fmt::write_heatmap_svg(os, grid); });
  }
  return kOk;
}

int run_contour(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"csv", "json"});
  const CavityConfig base = make_cavity(cfg);
  const std::vector<AxisSpec> axes = parse_grid(cfg.grid);
  if (axes.size() != 2) throw UsageError("contour needs two axes in --grid");
  SweepOptions opts;
  opts.rel_tol = cfg.rel_tol;
  const GridSweep grid = sweep_plane(axes[0], axes[1], base, opts);
  if (cfg.format == "csv") {
    emit(cfg, out, [&](std::ostream& os) { out_fmt::write_contours_csv(os, grid.zero_contours); });
  } else {
    json doc = out_fmt::grid_json(grid);
    emit_json(cfg, out, {{"x_axis", doc["x_axis"]}, {"y_axis", doc["y_axis"]}, {"contours", doc["contours"]}});
  }
  return kOk;
}

void numeric_error(std::ostream& err, const std::string& kind, const std::string& message,
                   const json& extra = json::object()) {
  json doc = {{"error", kind}, {"message", message}};
  doc.update(extra);
  err << doc.dump() << '\n';
}

}  // namespace

AxisSpec parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4 && parts.size() != 5) {
    throw UsageError("axis '" + text + "' must be param:min:max:count[:log]");
  }
  const auto param = parse_axis_parameter(parts[0]);
  if (!param) throw UsageError("unknown axis parameter '" + parts[0] + "'");
  AxisSpec axis;
  axis.parameter = *param;
  try {
    std::size_t used = 0;
    axis.min = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    axis.max = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    axis.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
  } catch (const std::logic_error&) {
    throw UsageError("axis '" + text + "' has a malformed number");
  }
  if (parts.size() == 5) {
    if (parts[4] == "log") {
      axis.spacing = Spacing::log;
    } else if (parts[4] != "linear") {
      throw UsageError("axis spacing must be log or linear");
    }
  }
  try {
    axis.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return axis;
}

std::vector<AxisSpec> parse_grid(const std::string& text) {
  if (text.empty()) throw UsageError("--grid is required");
  std::vector<AxisSpec> axes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) axes.push_back(parse_axis(item));
  return axes;
}

std::string contour_path(const std::string& out_path) {
  const auto slash = out_path.find_last_of('/');
  const auto dot = out_path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out_path + "_contours.csv";
  }
  return out_path.substr(0, dot) + "_contours.csv";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Casimir force between delta-delta' mirrors with high-frequency transparency",
               "casimir"};
  app.require_subcommand(1);

  const std::vector<std::string> formats{"csv", "json", "svg"};
  const std::vector<std::string> cutoffs{"none", "exp", "gauss"};

  auto single_mirror = [&](CLI::App* sub) {
    sub->add_option("--mu", cfg.single.mu, "delta coupling (>= 0)");
    sub->add_option("--lambda", cfg.single.lambda, "delta' coupling");
    sub->add_option("--beta", cfg.single.beta, "cutoff parameter (>= 0)");
    sub->add_option("--cutoff", cfg.cutoff, "cutoff profile")->check(CLI::IsMember(cutoffs));
  };
  auto cavity = [&](CLI::App* sub) {
    sub->add_option("--mu1", cfg.m1.mu, "delta coupling of mirror 1");
    sub->add_option("--mu2", cfg.m2.mu, "delta coupling of mirror 2");
    sub->add_option("--lambda1", cfg.m1.lambda, "delta' coupling of mirror 1");
    sub->add_option("--lambda2", cfg.m2.lambda, "delta' coupling of mirror 2");
    sub->add_option("--beta1", cfg.m1.beta, "cutoff parameter of mirror 1");
    sub->add_option("--beta2", cfg.m2.beta, "cutoff parameter of mirror 2");
    sub->add_option("--cutoff", cfg.cutoff, "cutoff profile")->check(CLI::IsMember(cutoffs));
    sub->add_option("--q", cfg.q, "mirror separation (> 0)");
    sub->add_option("--rel-tol", cfg.rel_tol, "relative quadrature tolerance");
  };
  auto io = [&](CLI::App* sub, const char* default_format) {
    cfg.format.clear();
    sub->add_option("--out", cfg.out_path, "output path (default: stdout)");
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember(formats))
        ->default_str(default_format);
  };

  CLI::App* coeffs = app.add_subcommand("coeffs", "|r+| and |s+| over log-spaced real frequencies");
  single_mirror(coeffs);
  coeffs->add_option("--omega-max", cfg.omega_max, "largest frequency (default 40)");
  coeffs->add_option("--omega-min", cfg.omega_min, "smallest frequency (default omega-max/1e4)");
  coeffs->add_option("--count", cfg.count, "number of samples (default 400)");
  io(coeffs, "csv");

  CLI::App* verify = app.add_subcommand("verify", "scattering-matrix axiom report (JSON)");
  single_mirror(verify);
  verify->add_option("--omega-min", cfg.omega_min, "smallest sample frequency (default 1e-2)");
  verify->add_option("--omega-max", cfg.omega_max, "largest sample frequency (default 1e3)");
  verify->add_option("--count", cfg.count, "number of samples (default 1000)");
  verify->add_option("--threshold", cfg.threshold, "largest accepted residual");
  io(verify, "json");

  CLI::App* force = app.add_subcommand("force", "Casimir force for one cavity");
  cavity(force);
  force->add_flag("--ratio", cfg.ratio, "also print the ratio to the cutoff-free force");
  io(force, "csv");

  CLI::App* sweep = app.add_subcommand("sweep", "distance scan (one q axis) or force map (two axes)");
  cavity(sweep);
  sweep->add_option("--grid", cfg.grid, "param:min:max:count[:log][,param:...]")->required();
  sweep->add_option("--mode", cfg.mode, "distance scan value: force or ratio");
  sweep->add_flag("--no-contours", cfg.no_contours, "skip zero-force contour extraction");
  io(sweep, "csv");

  CLI::App* contour = app.add_subcommand("contour", "zero-force contours of a two-axis force map");
  cavity(contour);
  contour->add_option("--grid", cfg.grid, "two axes: param:min:max:count[:log],param:...")->required();
  io(contour, "csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kUsage;
  }

  for (CLI::App* sub : {coeffs, verify, force, sweep, contour}) {
    if (sub->parsed()) cfg.subcommand = sub->get_name();
  }
  if (!(cfg.rel_tol > 0.0) || !std::isfinite(cfg.rel_tol)) {
    err << "error: --rel-tol must be > 0\n" << app.help();
    return kUsage;
  }
  if (cfg.format.empty()) {
    cfg.format = (cfg.subcommand == "verify") ? "json" : "csv";
  }

  try {
    if (cfg.subcommand == "coeffs") return run_coeffs(cfg, out);
    if (cfg.subcommand == "verify") return run_verify(cfg, out);
    if (cfg.subcommand == "force") return run_force(cfg, out);
    if (cfg.subcommand == "sweep") return run_sweep(cfg, out);
    return run_contour(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const QuadratureFailure& e) {
    numeric_error(err, "quadrature_failure", e.what(),
                  {{"partial_result", out_fmt::round12(e.partial_result())},
                   {"error_estimate", out_fmt::round12(e.error_estimate())}});
  } catch (const RatioUndefinedError& e) {
    numeric_error(err, "ratio_undefined", e.what());
  } catch (const SingularMatchingError& e) {
    numeric_error(err, "singular_matching", e.what());
  } catch (const ResonanceError& e) {
    numeric_error(err, "resonance", e.what());
  } catch (const DomainError& e) {
    numeric_error(err, "domain_error", e.what());
  } catch (const std::exception& e) {
    numeric_error(err, "runtime_error", e.what());
  }
  return kNumericFailure;
}

}  // namespace ddcasimir::cli
