#pragma once

#include <string>
#include <vector>

#include "latsel/types.hpp"

namespace latsel {

// Parses the two input CSVs:
//   samples: probe_id,destination,timestamp_utc,rtt_ms,isp
//   meta:    probe_id,isp,region            (region may be empty)
// Timestamps are ISO-8601 or integer epoch seconds. Rows with non-finite or
// non-positive RTT are dropped and counted. Duplicate
// (probe, destination, timestamp) rows resolve to the last row seen, also
// counted. Samples come out time-ordered per (probe, destination).
// A malformed row or a sample probe missing from meta raises Error(Input)
// with the line number / probe name.
RawDataset ingest(const std::string& samples_path, const std::string& meta_path);

std::map<ProbeId, ProbeMeta> load_meta(const std::string& meta_path);

// A maximal run of consecutive samples sharing one ISP label.
struct IspRun {
  std::string isp;
  std::vector<RttSample> samples;
};

// Splits a time-ordered sample vector into runs, starting a new run exactly
// where the isp field changes. Concatenating the runs reproduces the input.
std::vector<IspRun> segment_by_isp(const std::vector<RttSample>& samples);

// Minimum RTT per half-open bin [start, start + bin_minutes), bin starts
// aligned to epoch multiples of bin_minutes. Empty bins are absent. An
// empty run yields an empty series.
MinRttSeries bin_min_rtt(const ProbeId& probe, const std::string& destination,
                         const IspRun& run, int bin_minutes);

}  // namespace latsel
