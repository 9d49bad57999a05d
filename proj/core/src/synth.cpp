#include "latsel/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "latsel/error.hpp"
#include "latsel/parallel.hpp"
#include "latsel/rng.hpp"

namespace latsel {

namespace {

constexpr std::uint64_t kTagBaseline = 0xB5E1;
constexpr std::uint64_t kTagNoise = 0x105E;
constexpr std::uint64_t kTagJitter = 0x1177;

std::string padded_probe_id(int idx, int count) {
  int width = 1;
  for (int c = count - 1; c >= 10; c /= 10) ++width;
  std::string digits = std::to_string(idx + 1);
  std::string out = "p";
  out.append(static_cast<std::size_t>(std::max(0, width - static_cast<int>(digits.size()))),
             '0');
  out += digits;
  return out;
}

}  // namespace

std::vector<ProbeId> synth_probe_ids(const SynthSpec& spec) {
  std::vector<ProbeId> ids;
  ids.reserve(static_cast<std::size_t>(spec.probe_count));
  for (int i = 0; i < spec.probe_count; ++i) ids.push_back(padded_probe_id(i, spec.probe_count));
  return ids;
}

void validate_synth_spec(const SynthSpec& spec) {
  if (spec.probe_count <= 0) throw config_error("synth spec: probe_count must be > 0");
  if (spec.destinations.empty()) throw config_error("synth spec: destinations must be non-empty");
  if (spec.span_days <= 0) throw config_error("synth spec: span_days must be > 0");
  if (spec.sample_interval_minutes <= 0)
    throw config_error("synth spec: sample_interval_minutes must be > 0");
  if (!(spec.baseline_min_ms > 0.0) || spec.baseline_max_ms < spec.baseline_min_ms)
    throw config_error("synth spec: baseline range must satisfy 0 < min <= max");
  if (spec.noise_sigma_ms < 0.0) throw config_error("synth spec: noise_sigma_ms must be >= 0");
  if (spec.isps.empty()) throw config_error("synth spec: isps must be non-empty");

  const auto probe_ids = synth_probe_ids(spec);
  const std::set<ProbeId> known(probe_ids.begin(), probe_ids.end());
  const std::set<std::string> dests(spec.destinations.begin(), spec.destinations.end());
  for (std::size_t i = 0; i < spec.events.size(); ++i) {
    const SynthEvent& e = spec.events[i];
    const std::string ctx = "synth spec: event " + std::to_string(i + 1);
    if (!dests.count(e.destination)) throw config_error(ctx + ": unknown destination");
    if (!(e.duration_h > 0.0)) throw config_error(ctx + ": duration_h must be > 0");
    if (!(e.amplitude_ms > 0.0)) throw config_error(ctx + ": amplitude_ms must be > 0");
    for (const auto& p : e.probes)
      if (!known.count(p)) throw config_error(ctx + ": unknown probe '" + p + "'");
    if (e.jitter) {
      if (e.jitter->start_offset_max_minutes < 0)
        throw config_error(ctx + ": jitter offset must be >= 0");
      if (!(e.jitter->amp_scale_min > 0.0) || e.jitter->amp_scale_max < e.jitter->amp_scale_min)
        throw config_error(ctx + ": jitter amp scale range must satisfy 0 < min <= max");
    }
  }
}

std::vector<GroundTruthRecord> synth_ground_truth(const SynthSpec& spec) {
  validate_synth_spec(spec);
  const auto probe_ids = synth_probe_ids(spec);
  std::map<ProbeId, int> probe_idx;
  for (std::size_t i = 0; i < probe_ids.size(); ++i)
    probe_idx[probe_ids[i]] = static_cast<int>(i);

  std::vector<GroundTruthRecord> truth;
  for (std::size_t e = 0; e < spec.events.size(); ++e) {
    const SynthEvent& event = spec.events[e];
    const std::vector<ProbeId>& affected = event.probes.empty() ? probe_ids : event.probes;
    for (const ProbeId& probe : affected) {
      GroundTruthRecord rec;
      rec.event_id = static_cast<int>(e + 1);
      rec.probe = probe;
      rec.destination = event.destination;
      Timestamp start = event.start;
      double amp = event.amplitude_ms;
      if (event.jitter) {
        Rng rng = Rng::derive(spec.seed, kTagJitter,
                              (e << 20) ^ static_cast<std::uint64_t>(probe_idx.at(probe)));
        const int max_off = event.jitter->start_offset_max_minutes;
        if (max_off > 0) {
          const std::int64_t off =
              static_cast<std::int64_t>(rng.uniform_int(2 * max_off + 1)) - max_off;
          start += off * 60;
        }
        amp *= rng.uniform(event.jitter->amp_scale_min, event.jitter->amp_scale_max);
      }
      rec.start = start;
      rec.end = start + static_cast<Timestamp>(std::llround(event.duration_h * 3600.0));
      rec.amplitude_ms = amp;
      truth.push_back(std::move(rec));
    }
  }

  // Ambiguity guard: events may not overlap on one (probe, destination).
  std::map<std::pair<ProbeId, std::string>, std::vector<const GroundTruthRecord*>> per_pair;
  for (const auto& r : truth) per_pair[{r.probe, r.destination}].push_back(&r);
  for (auto& [key, recs] : per_pair) {
    std::sort(recs.begin(), recs.end(),
              [](const GroundTruthRecord* a, const GroundTruthRecord* b) {
                return a->start < b->start;
              });
    for (std::size_t i = 1; i < recs.size(); ++i) {
      if (recs[i]->start < recs[i - 1]->end)
        throw input_error("synth spec: events " + std::to_string(recs[i - 1]->event_id) +
                          " and " + std::to_string(recs[i]->event_id) + " overlap on probe '" +
                          key.first + "' toward '" + key.second + "'");
    }
  }
  return truth;
}

std::vector<RttSample> synth_series(const SynthSpec& spec, int probe_idx, int dest_idx,
                                    const std::vector<GroundTruthRecord>& truth) {
  const auto probe_ids = synth_probe_ids(spec);
  const ProbeId& probe = probe_ids.at(static_cast<std::size_t>(probe_idx));
  const std::string& dest = spec.destinations.at(static_cast<std::size_t>(dest_idx));
  const std::string& isp = spec.isps[static_cast<std::size_t>(probe_idx) % spec.isps.size()];

  const std::uint64_t pair_stream =
      static_cast<std::uint64_t>(probe_idx) * spec.destinations.size() +
      static_cast<std::uint64_t>(dest_idx);
  Rng baseline_rng = Rng::derive(spec.seed, kTagBaseline, pair_stream);
  const double baseline = baseline_rng.uniform(spec.baseline_min_ms, spec.baseline_max_ms);
  Rng noise = Rng::derive(spec.seed, kTagNoise, pair_stream);

  // Intervals affecting this pair, start-sorted (they are disjoint).
  struct Pulse {
    Timestamp start, end;
    double amp;
  };
  std::vector<Pulse> pulses;
  for (const auto& r : truth)
    if (r.probe == probe && r.destination == dest)
      pulses.push_back(Pulse{r.start, r.end, r.amplitude_ms});
  std::sort(pulses.begin(), pulses.end(),
            [](const Pulse& a, const Pulse& b) { return a.start < b.start; });

  const std::int64_t step = static_cast<std::int64_t>(spec.sample_interval_minutes) * 60;
  const std::int64_t n =
      (static_cast<std::int64_t>(spec.span_days) * kSecondsPerDay) / step;

  std::vector<RttSample> samples;
  samples.reserve(static_cast<std::size_t>(n));
  std::size_t cursor = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    const Timestamp t = spec.start_ts + k * step;
    while (cursor < pulses.size() && pulses[cursor].end <= t) ++cursor;
    double v = baseline + noise.normal(0.0, spec.noise_sigma_ms);
    if (cursor < pulses.size() && t >= pulses[cursor].start && t < pulses[cursor].end)
      v += pulses[cursor].amp;
    samples.push_back(RttSample{t, std::max(v, 0.001), isp});
  }
  return samples;
}

SynthResult generate(const SynthSpec& spec) {
  SynthResult result;
  result.truth = synth_ground_truth(spec);  // validates the spec

  const auto probe_ids = synth_probe_ids(spec);
  for (int i = 0; i < spec.probe_count; ++i) {
    ProbeMeta m;
    m.probe = probe_ids[static_cast<std::size_t>(i)];
    m.isp = spec.isps[static_cast<std::size_t>(i) % spec.isps.size()];
    if (!spec.regions.empty())
      m.region = spec.regions[static_cast<std::size_t>(i) % spec.regions.size()];
    result.dataset.meta[m.probe] = std::move(m);
  }
  for (std::size_t d = 0; d < spec.destinations.size(); ++d)
    result.dataset.destinations.emplace(spec.destinations[d],
                                        Destination{spec.destinations[d], ""});

  const std::size_t pair_count =
      static_cast<std::size_t>(spec.probe_count) * spec.destinations.size();
  std::vector<std::vector<RttSample>> slots(pair_count);
  parallel_for(pair_count, [&](std::size_t i) {
    const int probe_idx = static_cast<int>(i / spec.destinations.size());
    const int dest_idx = static_cast<int>(i % spec.destinations.size());
    slots[i] = synth_series(spec, probe_idx, dest_idx, result.truth);
  });
  for (std::size_t i = 0; i < pair_count; ++i) {
    const int probe_idx = static_cast<int>(i / spec.destinations.size());
    const int dest_idx = static_cast<int>(i % spec.destinations.size());
    result.dataset.series[SeriesKey{probe_ids[static_cast<std::size_t>(probe_idx)],
                                    spec.destinations[static_cast<std::size_t>(dest_idx)]}] =
        std::move(slots[i]);
  }
  return result;
}

SynthSpec parse_synth_spec_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("synth spec: invalid JSON: ") + e.what());
  }

  try {
    SynthSpec spec;
    spec.probe_count = j.at("probe_count").get<int>();
    spec.destinations = j.at("destinations").get<std::vector<std::string>>();
    spec.span_days = j.at("span_days").get<int>();
    if (j.contains("sample_interval_minutes"))
      spec.sample_interval_minutes = j["sample_interval_minutes"].get<int>();
    if (j.contains("baseline_ms")) {
      const auto range = j["baseline_ms"].get<std::vector<double>>();
      if (range.size() != 2) throw config_error("synth spec: baseline_ms must be [min, max]");
      spec.baseline_min_ms = range[0];
      spec.baseline_max_ms = range[1];
    }
    if (j.contains("noise_sigma_ms")) spec.noise_sigma_ms = j["noise_sigma_ms"].get<double>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("start"))
      spec.start_ts = parse_timestamp(j["start"].get<std::string>());
    if (j.contains("isps")) spec.isps = j["isps"].get<std::vector<std::string>>();
    if (j.contains("regions")) spec.regions = j["regions"].get<std::vector<std::string>>();

    if (j.contains("events")) {
      for (const auto& je : j["events"]) {
        SynthEvent e;
        e.destination = je.at("destination").get<std::string>();
        if (je.contains("probes") && je["probes"].is_array())
          e.probes = je["probes"].get<std::vector<std::string>>();
        // "probes": "all" or absent => every probe
        e.start = je.at("start").is_string()
                      ? parse_timestamp(je["start"].get<std::string>())
                      : je.at("start").get<std::int64_t>();
        e.duration_h = je.at("duration_h").get<double>();
        e.amplitude_ms = je.at("amplitude_ms").get<double>();
        if (je.contains("jitter")) {
          PerProbeJitter jit;
          const auto& jj = je["jitter"];
          if (jj.contains("start_offset_minutes"))
            jit.start_offset_max_minutes = jj["start_offset_minutes"].get<int>();
          if (jj.contains("amp_scale")) {
            const auto range = jj["amp_scale"].get<std::vector<double>>();
            if (range.size() != 2)
              throw config_error("synth spec: jitter amp_scale must be [min, max]");
            jit.amp_scale_min = range[0];
            jit.amp_scale_max = range[1];
          }
          e.jitter = jit;
        }
        spec.events.push_back(std::move(e));
      }
    }
    validate_synth_spec(spec);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("synth spec: ") + e.what());
  }
}

}  // namespace latsel
