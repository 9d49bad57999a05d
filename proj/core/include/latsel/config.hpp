#pragma once

#include <cstdint>
#include <string>

namespace latsel {

// Pipeline parameters. The defaults reproduce the standard
// parameterization: 15-minute min-RTT bins, 48-hour windows stepped by
// 24 hours, a 0.001 penalty for change-point detection, the 0.5 ms jump
// threshold, and the 1.5-sigma memory rule.
struct Config {
  int bin_minutes = 15;
  int window_hours = 48;
  int step_hours = 24;
  double pelt_penalty = 0.001;
  double jump_threshold_ms = 0.5;
  double memory_sigma_factor = 1.5;
  int merge_gap_bins = 1;
  double delta_iou = 0.9;
  double coverage_c = 0.95;
  int randomization_reps = 1000;
  std::uint64_t rng_seed = 1;
};

// Throws Error(Config) naming the offending field; returns cfg unchanged
// when every invariant holds. delta_iou must lie in (0, 1] and coverage_c
// in (0, 1]; every other numeric field must be strictly positive. rng_seed
// is an opaque stream identifier and is not range-checked.
Config validate_config(const Config& cfg);

// key=value persistence ('#' comments and blank lines ignored; unknown
// keys rejected). Writing then reading round-trips bit-exactly.
Config parse_config_text(const std::string& text);
Config load_config_file(const std::string& path);
std::string config_to_text(const Config& cfg);

}  // namespace latsel
