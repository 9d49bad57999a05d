#pragma once

#include <cstddef>
#include <vector>

#include "latsel/types.hpp"

namespace latsel {

struct Segment {
  std::size_t start_idx = 0;  // inclusive
  std::size_t end_idx = 0;    // exclusive
  double mean = 0.0;
  double max = 0.0;
};

// An exact partition of [0, n): breakpoints are the exclusive segment ends
// (strictly increasing, last element == n). `objective` is the minimized
// sum of segment costs plus penalty * (segment count - 1).
struct Segmentation {
  std::vector<std::size_t> breakpoints;
  std::vector<Segment> segments;
  double objective = 0.0;
};

// Exact penalized least-squares segmentation via PELT. The segment cost is
// the L2 deviation from the segment mean, C(seg) = sum (x - mean)^2; the
// pruning condition is exact for this cost, so the result minimizes
//   sum_i C(seg_i) + penalty * (#segments - 1)
// over all partitions, with minimum segment length 1. Ties resolve to the
// segmentation with fewer, longer segments. Throws on empty input,
// non-finite values, or negative penalty.
Segmentation pelt_segment(const std::vector<double>& values, double penalty);

// A [start, end) slice of a series' bins.
struct SeriesWindow {
  Timestamp start = 0;
  Timestamp end = 0;
  std::size_t first_bin = 0;  // index into MinRttSeries::bins
  std::size_t bin_count = 0;
};

// Sliding windows of window_hours stepped by step_hours, anchored at the
// first bin. Consecutive windows overlap by window_hours - step_hours; the
// final partial window is kept. Windows holding fewer than 2 bins are
// skipped (nothing to segment on one point); an empty series yields no
// windows. Requires window_hours >= step_hours > 0.
std::vector<SeriesWindow> window_series(const MinRttSeries& series, int window_hours,
                                        int step_hours);

}  // namespace latsel
