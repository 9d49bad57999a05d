#include "latsel/pelt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latsel/error.hpp"

namespace latsel {

namespace {

// C(s, t) for the half-open segment [s, t): residual sum of squares around
// the segment mean, computed from prefix sums.
struct SegmentCost {
  std::vector<double> prefix;
  std::vector<double> prefix_sq;

  explicit SegmentCost(const std::vector<double>& x)
      : prefix(x.size() + 1, 0.0), prefix_sq(x.size() + 1, 0.0) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      prefix[i + 1] = prefix[i] + x[i];
      prefix_sq[i + 1] = prefix_sq[i] + x[i] * x[i];
    }
  }

  double operator()(std::size_t s, std::size_t t) const {
    const double n = static_cast<double>(t - s);
    const double sum = prefix[t] - prefix[s];
    return (prefix_sq[t] - prefix_sq[s]) - (sum * sum) / n;
  }
};

}  // namespace

Segmentation pelt_segment(const std::vector<double>& values, double penalty) {
  const std::size_t n = values.size();
  if (n == 0) throw input_error("pelt_segment: empty series");
  for (const double v : values)
    if (!std::isfinite(v)) throw input_error("pelt_segment: non-finite value");
  if (penalty < 0.0) throw config_error("pelt_segment: penalty must be >= 0");

  const SegmentCost cost(values);

  // F[t] = optimal objective for the prefix [0, t), offset so that each
  // segment contributes cost + penalty and only inter-segment breaks pay.
  std::vector<double> best(n + 1, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> prev(n + 1, 0);
  best[0] = -penalty;

  std::vector<std::size_t> candidates;
  candidates.reserve(64);
  candidates.push_back(0);

  std::vector<std::size_t> kept;
  for (std::size_t t = 1; t <= n; ++t) {
    double f = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (const std::size_t s : candidates) {
      const double total = best[s] + cost(s, t) + penalty;
      if (total < f) {  // ties keep the smallest s: fewer, longer segments
        f = total;
        arg = s;
      }
    }
    best[t] = f;
    prev[t] = arg;

    // Exact pruning: for the L2 cost, C(s,u) >= C(s,t) + C(t,u), so any s
    // with best[s] + C(s,t) > best[t] can never win again.
    kept.clear();
    for (const std::size_t s : candidates)
      if (best[s] + cost(s, t) <= best[t]) kept.push_back(s);
    kept.push_back(t);
    candidates.swap(kept);
  }

  Segmentation seg;
  seg.objective = best[n];
  std::vector<std::size_t> bounds;
  for (std::size_t t = n; t > 0; t = prev[t]) bounds.push_back(t);
  std::reverse(bounds.begin(), bounds.end());
  seg.breakpoints = bounds;

  std::size_t start = 0;
  for (const std::size_t end : bounds) {
    Segment s;
    s.start_idx = start;
    s.end_idx = end;
    s.mean = (cost.prefix[end] - cost.prefix[start]) / static_cast<double>(end - start);
    s.max = *std::max_element(values.begin() + static_cast<std::ptrdiff_t>(start),
                              values.begin() + static_cast<std::ptrdiff_t>(end));
    seg.segments.push_back(s);
    start = end;
  }
  return seg;
}

std::vector<SeriesWindow> window_series(const MinRttSeries& series, int window_hours,
                                        int step_hours) {
  if (step_hours <= 0 || window_hours < step_hours)
    throw config_error("window_series: requires window_hours >= step_hours > 0");
  std::vector<SeriesWindow> windows;
  if (series.bins.empty()) return windows;

  const std::int64_t window_s = static_cast<std::int64_t>(window_hours) * 3600;
  const std::int64_t step_s = static_cast<std::int64_t>(step_hours) * 3600;
  const std::int64_t bin_s = static_cast<std::int64_t>(series.bin_minutes) * 60;
  const Timestamp t0 = series.bins.front().start;
  const Timestamp span_end = series.bins.back().start + bin_s;

  std::size_t lo = 0;  // bins are sorted; advance lower bound monotonically
  for (Timestamp ws = t0; ws < span_end; ws += step_s) {
    const Timestamp we = std::min<Timestamp>(ws + window_s, span_end);
    while (lo < series.bins.size() && series.bins[lo].start < ws) ++lo;
    std::size_t hi = lo;
    while (hi < series.bins.size() && series.bins[hi].start < we) ++hi;
    if (hi - lo >= 2) windows.push_back(SeriesWindow{ws, we, lo, hi - lo});
  }
  return windows;
}

}  // namespace latsel
