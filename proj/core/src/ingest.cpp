#include "latsel/ingest.hpp"

#include <algorithm>
#include <cmath>

#include "latsel/csv.hpp"
#include "latsel/error.hpp"

namespace latsel {

namespace {

std::string line_ctx(const std::string& path, std::size_t lineno) {
  return path + ":" + std::to_string(lineno);
}

}  // namespace

std::map<ProbeId, ProbeMeta> load_meta(const std::string& meta_path) {
  std::map<ProbeId, ProbeMeta> meta;
  csv::for_each_line(meta_path, [&](std::size_t lineno, std::string_view line) {
    const auto fields = csv::split_fields(line);
    if (lineno == 1) {
      if (fields.size() < 2 || fields[0] != "probe_id" || fields[1] != "isp")
        throw input_error(meta_path + ": expected header probe_id,isp,region");
      return true;
    }
    if (fields.size() == 1 && fields[0].empty()) return true;  // trailing blank line
    if (fields.size() != 3)
      throw input_error(line_ctx(meta_path, lineno) + ": expected 3 fields, got " +
                        std::to_string(fields.size()));
    ProbeMeta m;
    m.probe = std::string(fields[0]);
    m.isp = std::string(fields[1]);
    m.region = std::string(fields[2]);
    if (m.probe.empty()) throw input_error(line_ctx(meta_path, lineno) + ": empty probe_id");
    if (m.isp.empty()) throw input_error(line_ctx(meta_path, lineno) + ": empty isp");
    meta[m.probe] = std::move(m);
    return true;
  });
  return meta;
}

RawDataset ingest(const std::string& samples_path, const std::string& meta_path) {
  RawDataset ds;
  ds.meta = load_meta(meta_path);

  csv::for_each_line(samples_path, [&](std::size_t lineno, std::string_view line) {
    const auto fields = csv::split_fields(line);
    if (lineno == 1) {
      if (fields.size() != 5 || fields[0] != "probe_id")
        throw input_error(samples_path +
                          ": expected header probe_id,destination,timestamp_utc,rtt_ms,isp");
      return true;
    }
    if (fields.size() == 1 && fields[0].empty()) return true;
    if (fields.size() != 5)
      throw input_error(line_ctx(samples_path, lineno) + ": expected 5 fields, got " +
                        std::to_string(fields.size()));

    const ProbeId probe{std::string(fields[0])};
    if (!ds.meta.count(probe))
      throw input_error(line_ctx(samples_path, lineno) + ": unknown probe '" + probe +
                        "' (no meta entry)");
    const std::string dest(fields[1]);
    if (dest.empty()) throw input_error(line_ctx(samples_path, lineno) + ": empty destination");

    RttSample s;
    s.timestamp = parse_timestamp(fields[2]);
    s.rtt_ms = csv::parse_double(fields[3], line_ctx(samples_path, lineno));
    s.isp = std::string(fields[4]);
    if (!std::isfinite(s.rtt_ms) || s.rtt_ms <= 0.0) {
      ++ds.dropped_samples;
      return true;
    }
    ds.destinations.emplace(dest, Destination{dest, ""});
    ds.series[SeriesKey{probe, dest}].push_back(std::move(s));
    return true;
  });

  // Time-order each series; later rows win on duplicate timestamps.
  for (auto& [key, samples] : ds.series) {
    std::stable_sort(samples.begin(), samples.end(),
                     [](const RttSample& a, const RttSample& b) {
                       return a.timestamp < b.timestamp;
                     });
    std::vector<RttSample> unique;
    unique.reserve(samples.size());
    for (auto& s : samples) {
      if (!unique.empty() && unique.back().timestamp == s.timestamp) {
        unique.back() = std::move(s);
        ++ds.duplicate_samples;
      } else {
        unique.push_back(std::move(s));
      }
    }
    samples = std::move(unique);
  }
  return ds;
}

std::vector<IspRun> segment_by_isp(const std::vector<RttSample>& samples) {
  std::vector<IspRun> runs;
  for (const auto& s : samples) {
    if (runs.empty() || runs.back().isp != s.isp) {
      runs.push_back(IspRun{s.isp, {}});
    }
    runs.back().samples.push_back(s);
  }
  return runs;
}

MinRttSeries bin_min_rtt(const ProbeId& probe, const std::string& destination,
                         const IspRun& run, int bin_minutes) {
  if (bin_minutes <= 0) throw config_error("bin_minutes must be > 0");
  MinRttSeries series;
  series.probe = probe;
  series.destination = destination;
  series.isp_segment = run.isp;
  series.bin_minutes = bin_minutes;

  const std::int64_t width = static_cast<std::int64_t>(bin_minutes) * 60;
  for (const auto& s : run.samples) {
    std::int64_t idx = s.timestamp / width;
    if (s.timestamp % width < 0) --idx;  // floor for pre-epoch timestamps
    const Timestamp bin_start = idx * width;
    if (!series.bins.empty() && series.bins.back().start == bin_start) {
      series.bins.back().min_rtt = std::min(series.bins.back().min_rtt, s.rtt_ms);
    } else {
      series.bins.push_back(MinRttBin{bin_start, s.rtt_ms});
    }
  }
  return series;
}

}  // namespace latsel
