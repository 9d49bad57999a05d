#include "latsel/manifest.hpp"

#include <chrono>

#include <json.hpp>

#include "latsel/csv.hpp"

namespace latsel {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

std::string digest_file(const std::string& path) { return fnv1a_hex(csv::read_file(path)); }

void RunManifest::add_input(const std::string& path, std::uint64_t rows) {
  inputs.push_back(ManifestFile{path, digest_file(path), rows});
}

void RunManifest::add_output(const std::string& path, std::string_view content,
                             std::uint64_t rows) {
  outputs.push_back(ManifestFile{path, fnv1a_hex(content), rows});
}

void RunManifest::add_stage(const std::string& name, std::uint64_t rows_out, double wall_ms) {
  stages.push_back(StageStat{name, rows_out, wall_ms});
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = tool;
  j["version"] = version;
  j["command"] = command;
  j["seed"] = seed;
  nlohmann::ordered_json jc;
  jc["bin_minutes"] = config.bin_minutes;
  jc["window_hours"] = config.window_hours;
  jc["step_hours"] = config.step_hours;
  jc["pelt_penalty"] = config.pelt_penalty;
  jc["jump_threshold_ms"] = config.jump_threshold_ms;
  jc["memory_sigma_factor"] = config.memory_sigma_factor;
  jc["merge_gap_bins"] = config.merge_gap_bins;
  jc["delta_iou"] = config.delta_iou;
  jc["coverage_c"] = config.coverage_c;
  jc["randomization_reps"] = config.randomization_reps;
  jc["rng_seed"] = config.rng_seed;
  j["config"] = jc;
  auto files = [](const std::vector<ManifestFile>& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& f : v) {
      nlohmann::ordered_json jf;
      jf["path"] = f.path;
      jf["digest"] = f.digest;
      jf["rows"] = f.rows;
      arr.push_back(jf);
    }
    return arr;
  };
  j["inputs"] = files(inputs);
  nlohmann::ordered_json jstages = nlohmann::ordered_json::array();
  for (const auto& s : stages) {
    nlohmann::ordered_json js;
    js["name"] = s.name;
    js["rows_out"] = s.rows_out;
    js["wall_ms"] = s.wall_ms;
    jstages.push_back(js);
  }
  j["stages"] = jstages;
  j["outputs"] = files(outputs);
  return j.dump(2) + "\n";
}

void RunManifest::save(const std::string& path) const { csv::write_file(path, to_json()); }

StageTimer::StageTimer()
    : start_ns_(std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now().time_since_epoch())
                    .count()) {}

double StageTimer::elapsed_ms() const {
  const std::int64_t now = std::chrono::duration_cast<std::chrono::nanoseconds>(
                               std::chrono::steady_clock::now().time_since_epoch())
                               .count();
  return static_cast<double>(now - start_ns_) / 1e6;
}

}  // namespace latsel
