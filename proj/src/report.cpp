#include "gausswig/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace gausswig {

using ordered_json = nlohmann::ordered_json;

void RunConfig::validate() const {
  try {
    TraceClassSpectrum check(spectrum);
  } catch (const std::exception& e) {
    throw config_error(std::string("config: ") + e.what());
  }
  if (truncation < 0 || truncation > static_cast<int>(spectrum.size()))
    throw config_error("config: truncation must be in [0, len(spectrum)]");
  if (!is_pow2(grid.points) || grid.points < 8)
    throw config_error("config: grid.points must be a power of two >= 8");
  if (!(grid.radius_sigmas > 0.0)) throw config_error("config: grid.radius_sigmas must be positive");
  if (!(tolerances.closed_form > 0.0) || !(tolerances.pipeline > 0.0))
    throw config_error("config: tolerances must be positive");
}

int RunConfig::points_for(int m) const {
  int p = grid.points;
  for (int i = 1; i < m; ++i) p /= 2;
  return std::max(p, 16);
}

double RunConfig::radius_for(int m) const {
  // The transform's spatial truncation improves with the radius while its
  // spectral margin shrinks as points/radius; the two balance when the
  // radius scales like sqrt(points).  64 points per axis is the reference
  // budget for the default 14-sigma width.
  return grid.radius_sigmas * std::sqrt(points_for(m) / 64.0);
}

namespace {

RunConfig config_from_json(const ordered_json& j) {
  RunConfig cfg;
  if (j.contains("spectrum")) cfg.spectrum = j.at("spectrum").get<std::vector<double>>();
  if (j.contains("truncation")) cfg.truncation = j.at("truncation").get<int>();
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (g.contains("points")) cfg.grid.points = g.at("points").get<int>();
    if (g.contains("radius_sigmas")) cfg.grid.radius_sigmas = g.at("radius_sigmas").get<double>();
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (t.contains("closed_form")) cfg.tolerances.closed_form = t.at("closed_form").get<double>();
    if (t.contains("pipeline")) cfg.tolerances.pipeline = t.at("pipeline").get<double>();
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("s_variant")) {
    const std::string v = j.at("s_variant").get<std::string>();
    if (v == "corrected")
      cfg.s_variant = ScaleVariant::corrected;
    else if (v == "printed")
      cfg.s_variant = ScaleVariant::printed;
    else
      throw config_error("config: s_variant must be 'corrected' or 'printed'");
  }
  cfg.validate();
  return cfg;
}

ordered_json config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["spectrum"] = cfg.spectrum;
  j["truncation"] = cfg.truncation;
  j["grid"] = {{"points", cfg.grid.points}, {"radius_sigmas", cfg.grid.radius_sigmas}};
  j["tolerances"] = {{"closed_form", cfg.tolerances.closed_form},
                     {"pipeline", cfg.tolerances.pipeline}};
  j["seed"] = cfg.seed;
  j["s_variant"] = cfg.s_variant == ScaleVariant::corrected ? "corrected" : "printed";
  return j;
}

}  // namespace

RunConfig config_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

std::string config_to_json_text(const RunConfig& cfg) { return config_to_json(cfg).dump(2); }

int Report::passed() const {
  int n = 0;
  for (const auto& e : entries)
    if (e.pass) ++n;
  return n;
}

bool Report::all_pass() const { return passed() == total(); }

std::string report_to_json_text(const Report& report, const RunConfig& cfg) {
  ordered_json j;
  j["config"] = config_to_json(cfg);
  ordered_json entries = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json je;
    je["check_id"] = e.check_id;
    je["paper_anchor"] = e.paper_anchor;
    je["params"] = e.params;
    if (e.error.empty()) {
      je["residual"] = e.residual;
    } else {
      je["residual"] = nullptr;
      je["error"] = e.error;
    }
    je["tolerance"] = e.tolerance;
    je["pass"] = e.pass;
    entries.push_back(je);
  }
  j["entries"] = entries;
  j["summary"] = {{"total", report.total()}, {"passed", report.passed()},
                  {"wall_time", report.wall_time}};
  return j.dump(2);
}

void write_report(const Report& report, const RunConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("report: cannot open " + path);
  out << report_to_json_text(report, cfg) << '\n';
}

void print_report(const Report& report) {
  for (const auto& e : report.entries) {
    std::printf("[%s] %-34s %-18s residual %.3e  tol %.1e  %s\n", e.pass ? "PASS" : "FAIL",
                e.check_id.c_str(), e.paper_anchor.c_str(), e.residual, e.tolerance,
                e.params.c_str());
    if (!e.error.empty()) std::printf("       error: %s\n", e.error.c_str());
  }
  std::printf("%d/%d checks passed (%.2f s)\n", report.passed(), report.total(), report.wall_time);
}

}  // namespace gausswig
