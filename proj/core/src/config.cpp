#include "latsel/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "latsel/csv.hpp"
#include "latsel/error.hpp"

namespace latsel {

namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0.0)) throw config_error(std::string("config field '") + field + "' must be > 0");
}

void require_positive(int v, const char* field) {
  if (v <= 0) throw config_error(std::string("config field '") + field + "' must be > 0");
}

}  // namespace

Config validate_config(const Config& cfg) {
  require_positive(cfg.bin_minutes, "bin_minutes");
  require_positive(cfg.window_hours, "window_hours");
  require_positive(cfg.step_hours, "step_hours");
  require_positive(cfg.pelt_penalty, "pelt_penalty");
  require_positive(cfg.jump_threshold_ms, "jump_threshold_ms");
  require_positive(cfg.memory_sigma_factor, "memory_sigma_factor");
  require_positive(cfg.merge_gap_bins, "merge_gap_bins");
  require_positive(cfg.randomization_reps, "randomization_reps");
  if (!(cfg.delta_iou > 0.0 && cfg.delta_iou <= 1.0))
    throw config_error("config field 'delta_iou' must lie in (0, 1]");
  if (!(cfg.coverage_c > 0.0 && cfg.coverage_c <= 1.0))
    throw config_error("config field 'coverage_c' must lie in (0, 1]");
  return cfg;
}

Config parse_config_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    while (!sv.empty() && (sv.back() == '\r' || sv.back() == ' ' || sv.back() == '\t'))
      sv.remove_suffix(1);
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
    if (sv.empty() || sv.front() == '#') continue;
    const std::size_t eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string_view key = sv.substr(0, eq);
    const std::string_view value = sv.substr(eq + 1);
    auto ctx = [&] { return "config line " + std::to_string(lineno); };

    if (key == "bin_minutes") cfg.bin_minutes = static_cast<int>(csv::parse_int(value, ctx()));
    else if (key == "window_hours") cfg.window_hours = static_cast<int>(csv::parse_int(value, ctx()));
    else if (key == "step_hours") cfg.step_hours = static_cast<int>(csv::parse_int(value, ctx()));
    else if (key == "pelt_penalty") cfg.pelt_penalty = csv::parse_double(value, ctx());
    else if (key == "jump_threshold_ms") cfg.jump_threshold_ms = csv::parse_double(value, ctx());
    else if (key == "memory_sigma_factor") cfg.memory_sigma_factor = csv::parse_double(value, ctx());
    else if (key == "merge_gap_bins") cfg.merge_gap_bins = static_cast<int>(csv::parse_int(value, ctx()));
    else if (key == "delta_iou") cfg.delta_iou = csv::parse_double(value, ctx());
    else if (key == "coverage_c") cfg.coverage_c = csv::parse_double(value, ctx());
    else if (key == "randomization_reps") cfg.randomization_reps = static_cast<int>(csv::parse_int(value, ctx()));
    else if (key == "rng_seed") cfg.rng_seed = csv::parse_uint(value, ctx());
    else throw config_error("config line " + std::to_string(lineno) + ": unknown key '" +
                            std::string(key) + "'");
  }
  return cfg;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string config_to_text(const Config& cfg) {
  std::string out;
  out += "bin_minutes=" + std::to_string(cfg.bin_minutes) + "\n";
  out += "window_hours=" + std::to_string(cfg.window_hours) + "\n";
  out += "step_hours=" + std::to_string(cfg.step_hours) + "\n";
  out += "pelt_penalty=" + csv::format_double(cfg.pelt_penalty) + "\n";
  out += "jump_threshold_ms=" + csv::format_double(cfg.jump_threshold_ms) + "\n";
  out += "memory_sigma_factor=" + csv::format_double(cfg.memory_sigma_factor) + "\n";
  out += "merge_gap_bins=" + std::to_string(cfg.merge_gap_bins) + "\n";
  out += "delta_iou=" + csv::format_double(cfg.delta_iou) + "\n";
  out += "coverage_c=" + csv::format_double(cfg.coverage_c) + "\n";
  out += "randomization_reps=" + std::to_string(cfg.randomization_reps) + "\n";
  out += "rng_seed=" + std::to_string(cfg.rng_seed) + "\n";
  return out;
}

}  // namespace latsel
