#include "ddcasimir/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ddcasimir/errors.hpp"

namespace ddcasimir::output {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_number(v));
}

namespace {

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

json complex_json(complex z) { return json::array({number(z.real()), number(z.imag())}); }

json axis_json(const AxisSpec& a) {
  return {{"parameter", to_string(a.parameter)},
          {"min", number(a.min)},
          {"max", number(a.max)},
          {"count", a.count},
          {"spacing", a.spacing == Spacing::log ? "log" : "linear"}};
}

json contours_json(const std::vector<Polyline>& contours) {
  json out = json::array();
  for (const Polyline& line : contours) {
    json pts = json::array();
    for (const auto& [x, y] : line) pts.push_back(json::array({number(x), number(y)}));
    out.push_back(std::move(pts));
  }
  return out;
}

}  // namespace

void write_grid_csv(std::ostream& os, const GridSweep& grid) {
  const auto xs = grid.x_axis.values();
  const auto ys = grid.y_axis.values();
  os << "x,y,F\n";
  for (int iy = 0; iy < grid.y_axis.count; ++iy) {
    for (int ix = 0; ix < grid.x_axis.count; ++ix) {
      os << format_number(xs[static_cast<std::size_t>(ix)]) << ','
         << format_number(ys[static_cast<std::size_t>(iy)]) << ',' << format_number(grid.at(ix, iy))
         << '\n';
    }
  }
}

void write_contours_csv(std::ostream& os, const std::vector<Polyline>& contours) {
  os << "contour_id,x,y\n";
  for (std::size_t id = 0; id < contours.size(); ++id) {
    for (const auto& [x, y] : contours[id]) {
      os << id << ',' << format_number(x) << ',' << format_number(y) << '\n';
    }
  }
}

json grid_json(const GridSweep& grid) {
  json values = json::array();
  for (int iy = 0; iy < grid.y_axis.count; ++iy) {
    json row = json::array();
    for (int ix = 0; ix < grid.x_axis.count; ++ix) row.push_back(number(grid.at(ix, iy)));
    values.push_back(std::move(row));
  }
  json xs = json::array(), ys = json::array();
  for (double x : grid.x_axis.values()) xs.push_back(number(x));
  for (double y : grid.y_axis.values()) ys.push_back(number(y));
  return {{"x_axis", axis_json(grid.x_axis)},
          {"y_axis", axis_json(grid.y_axis)},
          {"x", std::move(xs)},
          {"y", std::move(ys)},
          {"fixed", cavity_json(grid.fixed)},
          {"values", std::move(values)},
          {"contours", contours_json(grid.zero_contours)}};
}

void write_distance_csv(std::ostream& os, const std::vector<DistancePoint>& points) {
  os << "q,value,ok\n";
  for (const DistancePoint& p : points) {
    os << format_number(p.q) << ',' << format_number(p.value) << ',' << (p.ok ? 1 : 0) << '\n';
  }
}

json distance_json(const std::vector<DistancePoint>& points, DistanceMode mode) {
  json pts = json::array();
  for (const DistancePoint& p : points) {
    json item = {{"q", number(p.q)}, {"value", number(p.value)}, {"ok", p.ok}};
    if (!p.ok) item["note"] = p.note;
    pts.push_back(std::move(item));
  }
  return {{"mode", mode == DistanceMode::force ? "force" : "ratio"}, {"points", std::move(pts)}};
}

void write_profile_csv(std::ostream& os, const TransparencyProfile& profile) {
  os << "omega,abs_r_plus,abs_s_plus\n";
  for (const TransparencySample& s : profile.samples) {
    os << format_number(s.omega) << ',' << format_number(s.abs_r_plus) << ','
       << format_number(s.abs_s_plus) << '\n';
  }
}

json profile_json(const TransparencyProfile& profile) {
  json samples = json::array();
  for (const TransparencySample& s : profile.samples) {
    samples.push_back({{"omega", number(s.omega)},
                       {"abs_r_plus", number(s.abs_r_plus)},
                       {"abs_s_plus", number(s.abs_s_plus)}});
  }
  return {{"samples", std::move(samples)},
          {"transparency", to_string(profile.limit.kind)},
          {"s_limit", complex_json(profile.limit.s_limit)}};
}

json report_json(const PropertyReport& r) {
  return {{"max_reality_residual", number(r.max_reality_residual)},
          {"max_unitarity_residual_diag", number(r.max_unitarity_residual_diag)},
          {"max_unitarity_residual_offdiag", number(r.max_unitarity_residual_offdiag)},
          {"imag_axis_max_abs_r", number(r.imag_axis_max_abs_r)},
          {"transparency_limit_s", complex_json(r.transparency_limit_s)},
          {"transparency_classification", to_string(r.transparency_classification)}};
}

json mirror_json(const MirrorSpec& m) {
  return {{"mu", number(m.mu)},
          {"lambda", number(m.lambda)},
          {"cutoff", cutoff_name(m.cutoff)},
          {"beta", number(cutoff_beta(m.cutoff))}};
}

json cavity_json(const CavityConfig& c) {
  return {{"mirror1", mirror_json(c.mirror1)}, {"mirror2", mirror_json(c.mirror2)}, {"q", number(c.q)}};
}

json force_json(const CavityConfig& cavity, const ForceResult& r) {
  return {{"cavity", cavity_json(cavity)},
          {"force", number(r.force)},
          {"abs_error_estimate", number(r.abs_error_estimate)},
          {"truncation_xi", number(r.truncation_xi)},
          {"evaluations", r.evaluations}};
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(is, line)) return table;
  table.header = split(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const std::string& cell : split(line)) {
      row.push_back(cell == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(cell));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

constexpr double kWidth = 640, kHeight = 480, kMargin = 60;

struct Frame {
  double x0, x1, y0, y1;
  bool log_x;
  double px(double x) const {
    const double t = log_x ? (std::log(x) - std::log(x0)) / (std::log(x1) - std::log(x0))
                           : (x - x0) / (x1 - x0);
    return kMargin + t * (kWidth - 2 * kMargin);
  }
  double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

void svg_open(std::ostream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_axes(std::ostream& os, const Frame& fr, const std::string& x_label,
              const std::string& y_label) {
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
     << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  auto text = [&os](double x, double y, const std::string& s, const char* anchor) {
    os << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"12\" text-anchor=\"" << anchor
       << "\">" << s << "</text>\n";
  };
  text(kMargin, kHeight - kMargin + 16, format_number(fr.x0), "start");
  text(kWidth - kMargin, kHeight - kMargin + 16, format_number(fr.x1), "end");
  text(kMargin - 4, kHeight - kMargin, format_number(fr.y0), "end");
  text(kMargin - 4, kMargin + 10, format_number(fr.y1), "end");
  text(kWidth / 2, kHeight - 20, x_label, "middle");
  os << "<text x=\"16\" y=\"" << kHeight / 2 << "\" font-size=\"12\" text-anchor=\"middle\" "
     << "transform=\"rotate(-90 16 " << kHeight / 2 << ")\">" << y_label << "</text>\n";
}

}  // namespace

void write_line_svg(std::ostream& os, const std::vector<LineSeries>& series,
                    const std::string& x_label, const std::string& y_label, bool log_x) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const LineSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  const Frame fr{x0, x1, y0, y1, log_x && x0 > 0.0};

  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  svg_open(os);
  svg_axes(os, fr, x_label, y_label);
  for (std::size_t i = 0; i < series.size(); ++i) {
    os << "<polyline fill=\"none\" stroke=\"" << colours[i % 5] << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : series[i].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      os << format_number(fr.px(x)) << ',' << format_number(fr.py(y)) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << kWidth - kMargin - 4 << "\" y=\"" << kMargin + 16 * (i + 1)
       << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << colours[i % 5] << "\">"
       << series[i].label << "</text>\n";
  }
  os << "</svg>\n";
}

void write_heatmap_svg(std::ostream& os, const GridSweep& grid) {
  const auto xs = grid.x_axis.values();
  const auto ys = grid.y_axis.values();
  double vmax = 0.0;
  for (double v : grid.values) {
    if (std::isfinite(v)) vmax = std::max(vmax, std::abs(v));
  }
  if (vmax == 0.0) vmax = 1.0;
  const Frame fr{xs.front(), xs.back(), ys.front(), ys.back(),
                 grid.x_axis.spacing == Spacing::log};

  svg_open(os);
  const int nx = grid.x_axis.count, ny = grid.y_axis.count;
  // Each cell is centred on its sample; diverging blue (F < 0) to red (F > 0).
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const double v = grid.at(ix, iy);
      const auto sx = static_cast<std::size_t>(ix), sy = static_cast<std::size_t>(iy);
      const double xa = fr.px(ix == 0 ? xs[sx] : 0.5 * (xs[sx - 1] + xs[sx]));
      const double xb = fr.px(ix == nx - 1 ? xs[sx] : 0.5 * (xs[sx] + xs[sx + 1]));
      const double ya = fr.py(iy == ny - 1 ? ys[sy] : 0.5 * (ys[sy] + ys[sy + 1]));
      const double yb = fr.py(iy == 0 ? ys[sy] : 0.5 * (ys[sy - 1] + ys[sy]));
      std::string fill = "#808080";
      if (std::isfinite(v)) {
        const double t = std::sqrt(std::min(1.0, std::abs(v) / vmax));
        const int fade = static_cast<int>(std::lround(255 * (1.0 - t)));
        char buf[16];
        if (v >= 0) {
          std::snprintf(buf, sizeof buf, "#ff%02x%02x", fade, fade);
        } else {
          std::snprintf(buf, sizeof buf, "#%02x%02xff", fade, fade);
        }
        fill = buf;
      }
      os << "<rect x=\"" << format_number(xa) << "\" y=\"" << format_number(ya) << "\" width=\""
         << format_number(xb - xa) << "\" height=\"" << format_number(yb - ya) << "\" fill=\""
         << fill << "\"/>\n";
    }
  }
  for (const Polyline& line : grid.zero_contours) {
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-dasharray=\"4 3\" points=\"";
    for (const auto& [x, y] : line) os << format_number(fr.px(x)) << ',' << format_number(fr.py(y)) << ' ';
    os << "\"/>\n";
  }
  svg_axes(os, fr, to_string(grid.x_axis.parameter), to_string(grid.y_axis.parameter));
  os << "</svg>\n";
}

}  // namespace ddcasimir::output
