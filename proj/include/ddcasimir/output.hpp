#ifndef DDCASIMIR_OUTPUT_HPP
#define DDCASIMIR_OUTPUT_HPP

// Serialisation of sweep and coefficient data: CSV, JSON and minimal SVG.
// Every number is written with 12 significant digits.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ddcasimir/force_engine.hpp"
#include "ddcasimir/smatrix_checks.hpp"
#include "ddcasimir/sweeps.hpp"

namespace ddcasimir::output {

/// "%.12g"; NaN is written as "nan".
std::string format_number(double v);

/// v rounded to 12 significant digits (what format_number would print).
double round12(double v);

void write_grid_csv(std::ostream& os, const GridSweep& grid);
void write_contours_csv(std::ostream& os, const std::vector<Polyline>& contours);
nlohmann::json grid_json(const GridSweep& grid);

void write_distance_csv(std::ostream& os, const std::vector<DistancePoint>& points);
nlohmann::json distance_json(const std::vector<DistancePoint>& points, DistanceMode mode);

void write_profile_csv(std::ostream& os, const TransparencyProfile& profile);
nlohmann::json profile_json(const TransparencyProfile& profile);

nlohmann::json report_json(const PropertyReport& report);
nlohmann::json force_json(const CavityConfig& cavity, const ForceResult& result);
nlohmann::json cavity_json(const CavityConfig& cavity);
nlohmann::json mirror_json(const MirrorSpec& mirror);

/// Parsed CSV body: header names and numeric rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(std::istream& is);

struct LineSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

void write_line_svg(std::ostream& os, const std::vector<LineSeries>& series,
                    const std::string& x_label, const std::string& y_label, bool log_x = false);
void write_heatmap_svg(std::ostream& os, const GridSweep& grid);

}  // namespace ddcasimir::output

#endif  // DDCASIMIR_OUTPUT_HPP
