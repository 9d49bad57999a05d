#include "latsel/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "latsel/error.hpp"
#include "latsel/ingest.hpp"
#include "latsel/parallel.hpp"

namespace latsel {

namespace {

constexpr double kModeBinWidthMs = 0.1;

}  // namespace

BaselineStats compute_baseline(const std::vector<double>& values) {
  if (values.empty()) throw input_error("compute_baseline: empty input");

  // Histogram over 0.1 ms bins keyed by floor(v / 0.1); ties resolve to the
  // lowest bin. floor(v * 10) avoids the 0.1 representation error putting
  // exact multiples in the wrong bin.
  std::map<std::int64_t, std::size_t> hist;
  double lo = values.front(), hi = values.front();
  for (const double v : values) {
    ++hist[static_cast<std::int64_t>(std::floor(v * 10.0))];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::int64_t best_bin = hist.begin()->first;
  std::size_t best_count = hist.begin()->second;
  for (const auto& [bin, count] : hist) {
    if (count > best_count) {  // '>' keeps the lowest bin on ties
      best_bin = bin;
      best_count = count;
    }
  }
  BaselineStats stats;
  const double center = (static_cast<double>(best_bin) + 0.5) * kModeBinWidthMs;
  stats.baseline = std::clamp(center, lo, hi);

  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  stats.sigma = std::sqrt(ss / static_cast<double>(values.size()));
  return stats;
}

std::vector<SegmentLabel> label_segments(const Segmentation& seg, const BaselineStats& stats,
                                         const Config& cfg) {
  std::vector<SegmentLabel> labels;
  labels.reserve(seg.segments.size());
  for (std::size_t i = 0; i < seg.segments.size(); ++i) {
    const Segment& cur = seg.segments[i];
    SegmentKind kind = SegmentKind::Normal;
    if (cur.mean < stats.baseline) {
      kind = SegmentKind::Dip;
    } else if (i > 0) {
      const Segment& prev = seg.segments[i - 1];
      const SegmentKind prev_kind = labels[i - 1].kind;
      if (cur.mean >= prev.mean + cfg.jump_threshold_ms && cur.mean > stats.baseline &&
          prev_kind != SegmentKind::Dip) {
        kind = SegmentKind::Jump;
      } else if (prev_kind == SegmentKind::Jump &&
                 std::abs(cur.max - prev.max) <= cfg.memory_sigma_factor * stats.sigma) {
        kind = SegmentKind::Jump;
      }
    }
    labels.push_back(SegmentLabel{kind, cur});
  }
  return labels;
}

std::vector<Anomaly> merge_and_extract(const std::vector<SegmentLabel>& labels,
                                       const MinRttSeries& series, const SeriesWindow& window,
                                       const BaselineStats& stats, const Config& cfg) {
  const std::int64_t bin_s = static_cast<std::int64_t>(series.bin_minutes) * 60;

  // Start times of every bin covered by a Jump-labeled segment, in order.
  std::vector<Timestamp> jump_bins;
  for (const auto& label : labels) {
    if (label.kind != SegmentKind::Jump) continue;
    for (std::size_t i = label.segment.start_idx; i < label.segment.end_idx; ++i)
      jump_bins.push_back(series.bins[window.first_bin + i].start);
  }

  std::vector<Anomaly> out;
  if (jump_bins.empty()) return out;

  auto flush = [&](Timestamp run_start, Timestamp run_end) {
    // Amplitude: max binned value anywhere inside [run_start, run_end),
    // including bridged gap bins.
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = window.first_bin; i < window.first_bin + window.bin_count; ++i) {
      const auto& bin = series.bins[i];
      if (bin.start >= run_start && bin.start < run_end) peak = std::max(peak, bin.min_rtt);
    }
    Anomaly a;
    a.probe = series.probe;
    a.destination = series.destination;
    a.start = run_start;
    a.end = run_end;
    a.baseline_ms = stats.baseline;
    a.amplitude_ms = std::max(0.0, peak - stats.baseline);
    finalize_anomaly(a);
    out.push_back(std::move(a));
  };

  Timestamp run_start = jump_bins.front();
  Timestamp run_end = jump_bins.front() + bin_s;
  for (std::size_t i = 1; i < jump_bins.size(); ++i) {
    const Timestamp next_start = jump_bins[i];
    // Number of whole bin slots strictly between the previous jump bin and
    // this one, measured in wall-clock time.
    const std::int64_t gap_slots = (next_start - run_end) / bin_s;
    if (gap_slots <= cfg.merge_gap_bins) {
      run_end = next_start + bin_s;
    } else {
      flush(run_start, run_end);
      run_start = next_start;
      run_end = next_start + bin_s;
    }
  }
  flush(run_start, run_end);
  return out;
}

std::vector<Anomaly> dedup_across_windows(std::vector<Anomaly> per_window) {
  if (per_window.empty()) return per_window;
  std::sort(per_window.begin(), per_window.end(), [](const Anomaly& a, const Anomaly& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
  });

  std::vector<Anomaly> out;
  out.push_back(per_window.front());
  for (std::size_t i = 1; i < per_window.size(); ++i) {
    Anomaly& cur = out.back();
    const Anomaly& next = per_window[i];
    if (next.start <= cur.end) {  // intersecting or touching intervals
      cur.end = std::max(cur.end, next.end);
      if (next.amplitude_ms > cur.amplitude_ms) {
        cur.amplitude_ms = next.amplitude_ms;
        cur.baseline_ms = next.baseline_ms;
      }
      finalize_anomaly(cur);
    } else {
      out.push_back(next);
    }
  }
  return out;
}

std::vector<Anomaly> detect_series(const MinRttSeries& series, const Config& cfg) {
  std::vector<Anomaly> collected;
  for (const SeriesWindow& window : window_series(series, cfg.window_hours, cfg.step_hours)) {
    std::vector<double> values(window.bin_count);
    for (std::size_t i = 0; i < window.bin_count; ++i)
      values[i] = series.bins[window.first_bin + i].min_rtt;

    const BaselineStats stats = compute_baseline(values);
    const Segmentation seg = pelt_segment(values, cfg.pelt_penalty);
    const auto labels = label_segments(seg, stats, cfg);
    auto anomalies = merge_and_extract(labels, series, window, stats, cfg);
    collected.insert(collected.end(), std::make_move_iterator(anomalies.begin()),
                     std::make_move_iterator(anomalies.end()));
  }
  return dedup_across_windows(std::move(collected));
}

void assign_anomaly_ids(std::vector<Anomaly>& anomalies) {
  std::sort(anomalies.begin(), anomalies.end(), [](const Anomaly& a, const Anomaly& b) {
    if (a.probe != b.probe) return a.probe < b.probe;
    if (a.destination != b.destination) return a.destination < b.destination;
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
  });
  AnomalyId next = 1;
  for (auto& a : anomalies) a.id = next++;
}

std::vector<Anomaly> detect_anomalies(const RawDataset& dataset, const Config& cfg) {
  // Collect binned per-ISP series first; detection is pure per series.
  std::vector<MinRttSeries> all_series;
  for (const auto& [key, samples] : dataset.series) {
    for (const IspRun& run : segment_by_isp(samples)) {
      MinRttSeries s = bin_min_rtt(key.probe, key.destination, run, cfg.bin_minutes);
      if (!s.bins.empty()) all_series.push_back(std::move(s));
    }
  }

  std::vector<std::vector<Anomaly>> per_series(all_series.size());
  parallel_for(all_series.size(), [&](std::size_t i) {
    per_series[i] = detect_series(all_series[i], cfg);
  });

  std::vector<Anomaly> out;
  for (auto& v : per_series)
    out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  assign_anomaly_ids(out);
  return out;
}

}  // namespace latsel
