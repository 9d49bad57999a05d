#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "latsel/grouping.hpp"

namespace latsel {

enum class SelectionMethod { Greedy, Random, DescendingImpact };

std::string selection_method_name(SelectionMethod m);

struct SelectionStep {
  ProbeId probe;
  double marginal_log_impact = 0.0;
  double cumulative_fraction = 0.0;
};

struct SelectionResult {
  SelectionMethod method = SelectionMethod::Greedy;
  std::vector<ProbeId> selected;          // in selection order, no duplicates
  std::vector<SelectionStep> per_step;
  std::set<GroupId> covered_groups;
  double coverage_fraction_achieved = 0.0;
  std::size_t unique_anomaly_count = 0;   // = covered_groups.size()
  bool coverage_met = true;               // false if probes ran out below c
};

// Greedy maximum-weighted-coverage: repeatedly selects the probe with the
// largest total weight of not-yet-covered groups until the covered weight
// reaches c * (total weight). Ties break to the lexicographically smallest
// ProbeId. The covered weight is recomputed over the covered set in
// canonical group order each step, so reaching c = 1 is exact. If every
// probe is selected without reaching the target, coverage_met is false.
// An empty incidence is an error; zero total weight returns an empty
// selection with coverage 1 by convention.
SelectionResult greedy_select(const Incidence& incidence, const GroupWeights& weights,
                              double coverage_c);

struct RandomSelectionSummary {
  std::vector<SelectionResult> runs;
  double mean_probe_count = 0.0;
  double stdev_probe_count = 0.0;
  double mean_unique_count = 0.0;
  double stdev_unique_count = 0.0;
};

// Baseline: draws probes uniformly without replacement until the covered
// weight reaches c * total. Per-rep RNG streams derive from (seed, rep).
RandomSelectionSummary random_select(const Incidence& incidence, const GroupWeights& weights,
                                     double coverage_c, int reps, std::uint64_t seed);

// Baseline: ranks probes by the total weight of their own groups (each
// group counted once per probe, overlap-blind) and selects in descending
// order until the deduplicated covered weight reaches c * total. Ties
// break to the smaller ProbeId.
SelectionResult descending_impact_select(const Incidence& incidence,
                                         const GroupWeights& weights, double coverage_c);

struct SweepRow {
  double coverage_c = 0.0;
  double delta_iou = 0.0;
  std::size_t probe_count = 0;
  double coverage_achieved = 0.0;
  std::size_t unique_anomaly_count = 0;
};

// Greedy selection across a (c, delta_iou) grid. `regroup` maps a delta to
// the (incidence, weights) of the anomalies regrouped at that threshold;
// it runs once per delta. Rows come out ordered by (delta, c).
std::vector<SweepRow> sweep(const std::vector<double>& c_values,
                            const std::vector<double>& delta_values,
                            const std::function<std::pair<Incidence, GroupWeights>(double)>&
                                regroup);

}  // namespace latsel
