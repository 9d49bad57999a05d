#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latsel/types.hpp"

namespace latsel {

// A pair of anomalies from two distinct probes toward one destination whose
// intervals intersect. Non-overlapping pairs are never materialized.
struct OverlapRecord {
  AnomalyId anomaly_a = 0;
  AnomalyId anomaly_b = 0;
  ProbeId probe_a;
  ProbeId probe_b;
  std::string destination;
  double iou = 0.0;
  double amplitude_similarity = 0.0;
  bool same_isp = false;
};

// Intersection over the hull span of two [start, end) intervals:
//   max(0, min(e1,e2) - max(s1,s2)) / (max(e1,e2) - min(s1,s2)).
// 0 = disjoint, 1 = identical. Throws on degenerate intervals.
double interval_iou(Timestamp s1, Timestamp e1, Timestamp s2, Timestamp e2);

// min/max amplitude ratio in [0,1]; defined as 1 when both are 0.
double amplitude_similarity(double amp_a, double amp_b);

// One record per unordered pair of anomalies from distinct probes, same
// destination, with interval intersection > 0. same_isp is resolved from
// probe metadata when provided (false when either probe is unknown).
// Records come out ordered by (destination, anomaly_a, anomaly_b).
std::vector<OverlapRecord> pairwise_overlaps(
    const std::vector<Anomaly>& anomalies,
    const std::map<ProbeId, ProbeMeta>* meta = nullptr);

struct IouBinSummary {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  double median_similarity = 0.0;
  double median_impact = 0.0;  // over both pair members' impacts
  std::size_t same_isp_count = 0;
  double same_isp_median_similarity = 0.0;
  std::size_t diff_isp_count = 0;
  double diff_isp_median_similarity = 0.0;
};

// Bins records by IoU into bins of bin_width (which must divide 1 evenly;
// the last bin is closed at 1). Empty bins are omitted. Requires the
// anomalies the records refer to for impact lookups.
std::vector<IouBinSummary> stratified_summary(const std::vector<OverlapRecord>& records,
                                              const std::vector<Anomaly>& anomalies,
                                              double bin_width);

// Spearman rank correlation between IoU and amplitude similarity.
// Returns nullopt if fewer than 2 records or a variable is constant.
std::optional<double> iou_similarity_spearman(const std::vector<OverlapRecord>& records);

struct NullDistribution {
  int reps = 0;
  std::vector<double> high_iou_fractions;  // one per repetition
  double threshold = 0.8;
};

struct RandomizationReport {
  NullDistribution null_dist;
  double observed_fraction = 0.0;    // share of overlapping pairs with IoU >= threshold
  std::size_t observed_pairs = 0;    // overlapping pairs in the unshuffled data
  double percentile = 0.0;           // of the observed fraction within the null
  double null_mean = 0.0;
  double null_stdev = 0.0;
};

// Redraws an anomaly's start uniformly within its original UTC calendar
// day, preserving duration (the end may cross midnight).
void shuffle_within_day(Anomaly& a, class Rng& rng);

// Permutation significance test: per repetition every anomaly's start is
// redrawn within its day (duration and amplitude preserved), overlaps are
// recomputed, and the fraction of overlapping pairs with IoU >= threshold
// is recorded. Per-rep RNG streams derive from (seed, rep), so results are
// independent of execution order and bit-identical for a given seed.
RandomizationReport randomization_test(const std::vector<Anomaly>& anomalies, int reps,
                                       double threshold, std::uint64_t seed);

}  // namespace latsel
