#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latsel/config.hpp"

namespace latsel {

// FNV-1a 64-bit over raw bytes, hex-encoded. Stable content fingerprint
// for manifest entries and determinism checks.
std::string fnv1a_hex(std::string_view bytes);
std::string digest_file(const std::string& path);

struct ManifestFile {
  std::string path;
  std::string digest;
  std::uint64_t rows = 0;
};

struct StageStat {
  std::string name;
  std::uint64_t rows_out = 0;
  double wall_ms = 0.0;
};

// Reproducibility record for one CLI run: the exact config, the seed, and
// digests of everything read and written. Two runs with identical config,
// seed, and input digests produce byte-identical outputs.
struct RunManifest {
  std::string tool = "latsel";
  std::string version;
  std::string command;
  Config config;
  std::uint64_t seed = 0;
  std::vector<ManifestFile> inputs;
  std::vector<StageStat> stages;
  std::vector<ManifestFile> outputs;

  void add_input(const std::string& path, std::uint64_t rows = 0);
  void add_output(const std::string& path, std::string_view content, std::uint64_t rows = 0);
  void add_stage(const std::string& name, std::uint64_t rows_out, double wall_ms);

  std::string to_json() const;
  void save(const std::string& path) const;
};

// Wall-clock helper for stage timings.
class StageTimer {
 public:
  StageTimer();
  double elapsed_ms() const;

 private:
  std::int64_t start_ns_;
};

}  // namespace latsel
