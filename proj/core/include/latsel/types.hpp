#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "latsel/time_util.hpp"

namespace latsel {

// Opaque probe identifier; ordering (lexicographic) is used for
// deterministic tie-breaking throughout.
using ProbeId = std::string;

using AnomalyId = std::int64_t;
using GroupId = std::int64_t;

struct ProbeMeta {
  ProbeId probe;
  std::string isp;
  std::string region;  // empty = unknown; excluded from geographic analysis
};

struct Destination {
  std::string name;     // unique label, used as the join key everywhere
  std::string address;  // opaque IP/hostname, may be empty
};

struct RttSample {
  Timestamp timestamp = 0;
  double rtt_ms = 0.0;
  std::string isp;  // ISP in effect when the sample was taken
};

struct MinRttBin {
  Timestamp start = 0;  // aligned to epoch multiples of the bin width
  double min_rtt = 0.0;
};

// Per-(probe, destination, ISP-run) series of fixed-width minimum-RTT bins.
// Bin starts are strictly increasing; missing bins are simply absent.
struct MinRttSeries {
  ProbeId probe;
  std::string destination;
  std::string isp_segment;
  int bin_minutes = 15;
  std::vector<MinRttBin> bins;
};

// A detected latency elevation. duration_h and impact_ms_h are derived
// fields kept in sync by make_anomaly/finalize.
struct Anomaly {
  AnomalyId id = 0;
  ProbeId probe;
  std::string destination;
  Timestamp start = 0;
  Timestamp end = 0;  // exclusive; start < end
  double amplitude_ms = 0.0;
  double duration_h = 0.0;
  double impact_ms_h = 0.0;
  double baseline_ms = 0.0;
};

inline double interval_hours(Timestamp start, Timestamp end) {
  return static_cast<double>(end - start) / 3600.0;
}

// Recomputes the derived fields from (start, end, amplitude).
inline void finalize_anomaly(Anomaly& a) {
  a.duration_h = interval_hours(a.start, a.end);
  a.impact_ms_h = a.amplitude_ms * a.duration_h;
}

struct SeriesKey {
  ProbeId probe;
  std::string destination;
  auto operator<=>(const SeriesKey&) const = default;
};

// In-memory parsed dataset: time-ordered samples per (probe, destination)
// plus probe metadata. `dropped_samples` counts rows rejected for
// non-finite or non-positive RTT; `duplicate_samples` counts rows replaced
// by a later row with the same timestamp.
struct RawDataset {
  std::map<SeriesKey, std::vector<RttSample>> series;
  std::map<ProbeId, ProbeMeta> meta;
  std::map<std::string, Destination> destinations;
  std::uint64_t dropped_samples = 0;
  std::uint64_t duplicate_samples = 0;

  std::uint64_t sample_count() const {
    std::uint64_t n = 0;
    for (const auto& [key, samples] : series) n += samples.size();
    return n;
  }
};

}  // namespace latsel
