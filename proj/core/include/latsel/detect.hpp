#pragma once

#include <vector>

#include "latsel/config.hpp"
#include "latsel/pelt.hpp"
#include "latsel/types.hpp"

namespace latsel {

enum class SegmentKind { Jump, Dip, Normal };

struct SegmentLabel {
  SegmentKind kind = SegmentKind::Normal;
  Segment segment;
};

struct BaselineStats {
  double baseline = 0.0;  // mode of the windowed signal
  double sigma = 0.0;     // population standard deviation of the signal
};

// Baseline = center of the most populated 0.1 ms histogram bin (ties go to
// the lowest bin), clamped into [min, max] of the values; sigma = population
// standard deviation. Throws on empty input.
BaselineStats compute_baseline(const std::vector<double>& values);

// Labels each segment, in order:
//   Dip     if its mean is below baseline;
//   Jump    if its mean exceeds the previous segment's mean by the jump
//           threshold, is above baseline, and the previous label is not Dip;
//   Jump    if the previous label is Jump and the segment maxima differ by
//           at most memory_sigma_factor * sigma (jump-offset memory rule);
//   Normal  otherwise.
// The first segment can only be Dip or Normal.
std::vector<SegmentLabel> label_segments(const Segmentation& seg, const BaselineStats& stats,
                                         const Config& cfg);

// Collapses runs of Jump-labeled bins into anomalies. Runs may bridge up to
// merge_gap_bins non-Jump bin slots (wall-clock slots, so data holes are
// never bridged). Each anomaly spans [first jump bin start, last jump bin
// end); amplitude = max binned value inside the span minus baseline,
// floored at 0. probe/destination/id fields are left for the caller.
std::vector<Anomaly> merge_and_extract(const std::vector<SegmentLabel>& labels,
                                       const MinRttSeries& series, const SeriesWindow& window,
                                       const BaselineStats& stats, const Config& cfg);

// Unions anomalies of one series that were seen by multiple overlapping
// windows: intervals that intersect or touch merge into one anomaly with
// the union span and the largest member amplitude (duration and impact
// recomputed). The result has pairwise disjoint intervals, ordered by start.
std::vector<Anomaly> dedup_across_windows(std::vector<Anomaly> per_window);

// Full detection for one binned series: window, segment, label, merge,
// dedup. Returned anomalies carry probe/destination but id == 0.
std::vector<Anomaly> detect_series(const MinRttSeries& series, const Config& cfg);

// Detection over a whole dataset: ISP segmentation, binning, per-series
// detection (parallel), then dataset-wide ordering by
// (probe, destination, start, end) and 1-based id assignment.
std::vector<Anomaly> detect_anomalies(const RawDataset& dataset, const Config& cfg);

// Deterministic dataset-wide ordering + id assignment for anomalies
// produced series by series.
void assign_anomaly_ids(std::vector<Anomaly>& anomalies);

}  // namespace latsel
