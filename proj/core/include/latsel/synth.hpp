#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latsel/types.hpp"

namespace latsel {

struct PerProbeJitter {
  int start_offset_max_minutes = 0;  // uniform offset in +-max minutes
  double amp_scale_min = 1.0;        // uniform amplitude scale range
  double amp_scale_max = 1.0;
};

// A square-pulse latency elevation injected into the affected probes'
// series toward one destination.
struct SynthEvent {
  std::string destination;
  std::vector<ProbeId> probes;  // empty = every probe
  Timestamp start = 0;
  double duration_h = 0.0;
  double amplitude_ms = 0.0;
  std::optional<PerProbeJitter> jitter;
};

struct SynthSpec {
  int probe_count = 0;
  std::vector<std::string> destinations;
  int span_days = 0;
  int sample_interval_minutes = 5;
  double baseline_min_ms = 8.0;
  double baseline_max_ms = 20.0;
  double noise_sigma_ms = 0.1;
  std::vector<SynthEvent> events;
  std::uint64_t seed = 1;
  Timestamp start_ts = 1648771200;  // 2022-04-01T00:00:00Z
  std::vector<std::string> isps = {"SynthNet"};
  std::vector<std::string> regions;  // optional round-robin region labels
};

// The exact post-jitter interval and amplitude injected for one
// (event, probe) pair; this is the oracle the pipeline is checked against.
struct GroundTruthRecord {
  int event_id = 0;  // 1-based index into SynthSpec::events
  ProbeId probe;
  std::string destination;
  Timestamp start = 0;
  Timestamp end = 0;
  double amplitude_ms = 0.0;
};

struct SynthResult {
  RawDataset dataset;
  std::vector<GroundTruthRecord> truth;
};

// Zero-padded probe ids ("p01".."pNN") in index order.
std::vector<ProbeId> synth_probe_ids(const SynthSpec& spec);

void validate_synth_spec(const SynthSpec& spec);

// Jittered ground truth for every (event, affected probe) pair. Draws are
// keyed by (seed, event index, probe index), so the table never depends on
// evaluation order. Throws if two events overlap on one (probe,
// destination) pair, which would make the truth ambiguous.
std::vector<GroundTruthRecord> synth_ground_truth(const SynthSpec& spec);

// One probe/destination series: baseline (drawn per pair from the spec
// range) + Gaussian noise + the amplitude of whichever event covers each
// sample instant. Deterministic per (seed, probe, destination).
std::vector<RttSample> synth_series(const SynthSpec& spec, int probe_idx, int dest_idx,
                                    const std::vector<GroundTruthRecord>& truth);

// Assembles the full in-memory dataset (parallel across series).
SynthResult generate(const SynthSpec& spec);

// JSON spec file support for the CLI.
SynthSpec parse_synth_spec_json(const std::string& text);

}  // namespace latsel
