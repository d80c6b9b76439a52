#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gausswig/gaussian.hpp"

namespace gausswig {

struct GridConfig {
  int points = 64;
  double radius_sigmas = 14.0;
};

struct Tolerances {
  double closed_form = 1e-8;
  double pipeline = 1e-6;
};

struct RunConfig {
  std::vector<double> spectrum = {1.0, 0.5, 0.25};
  int truncation = 2;
  GridConfig grid;
  Tolerances tolerances;
  std::uint64_t seed = 1;
  ScaleVariant s_variant = ScaleVariant::corrected;

  void validate() const;  // throws config_error
  // Per-axis resolution for dense objects at truncation m (the point budget
  // halves per extra dimension, floor 16).
  int points_for(int m) const;
  // Grid radius in axis scales at truncation m.  The frequency axes of the
  // phase-space grids sample at radius / (2 pi) points per unit scale, so
  // one-dimensional work wants the full width; at m >= 2 the halved point
  // budget caps the radius through the transform's spectral margin.
  double radius_for(int m) const;
};

RunConfig config_from_json_text(const std::string& text);
RunConfig load_config(const std::string& path);
std::string config_to_json_text(const RunConfig& cfg);

struct ReportEntry {
  std::string check_id;
  std::string paper_anchor;
  std::string params;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string error;  // set on capacity/configuration failures
};

struct Report {
  std::vector<ReportEntry> entries;
  double wall_time = 0.0;

  int total() const { return static_cast<int>(entries.size()); }
  int passed() const;
  bool all_pass() const;
};

std::string report_to_json_text(const Report& report, const RunConfig& cfg);
void write_report(const Report& report, const RunConfig& cfg, const std::string& path);
void print_report(const Report& report);

}  // namespace gausswig
