#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "latsel/config.hpp"
#include "latsel/types.hpp"

namespace latsel {

struct PredictiveReport {
  int selection_window_days = 0;
  std::string destination;
  double recall = 0.0;           // unweighted share of future groups covered
  double weighted_recall = 0.0;  // log-impact-weighted share (secondary)
  std::size_t probe_count = 0;   // probes the greedy selection picked
  std::size_t eligible_probes = 0;
  std::size_t eval_group_count = 0;
};

// Time-split evaluation toward one destination: detect + group + greedy on
// the first T days (using cfg.coverage_c and cfg.delta_iou), then detect +
// group the remaining days and report the fraction of future anomaly
// groups observed by at least one selected probe. Only probes with at
// least one sample toward the destination in both periods participate
// (matching isp_filter against probe metadata when given). Errors when no
// probe is eligible or the evaluation period has no samples. With zero
// future groups, recall is vacuously 1.
PredictiveReport predictive_eval(const RawDataset& dataset, int t_days, const Config& cfg,
                                 const std::optional<std::string>& isp_filter,
                                 const std::string& destination);

// predictive_eval over every destination and every T, ordered by
// (T, destination). Cells run in parallel.
std::vector<PredictiveReport> predictive_eval_grid(const RawDataset& dataset,
                                                   const std::vector<int>& t_days_list,
                                                   const Config& cfg,
                                                   const std::optional<std::string>& isp_filter);

struct RegionCounts {
  std::size_t original = 0;
  std::size_t reduced = 0;
};

struct RetentionReport {
  std::string granularity = "region";
  double fraction_retained = 0.0;  // regions keeping >= 1 probe / regions with >= 1 probe
  std::map<std::string, RegionCounts> per_region;
  std::string window_label;
};

// Per-region probe counts before and after selection. Probes without a
// region label are excluded from both counts; every selected probe must
// have a meta entry.
RetentionReport retention_analysis(const std::map<ProbeId, ProbeMeta>& meta,
                                   const std::set<ProbeId>& selected);

enum class RetentionWindow { Daily, Weekly, Monthly, Bimonthly, Quarterly };

int retention_window_days(RetentionWindow w);
std::string retention_window_name(RetentionWindow w);

struct WindowedRetentionResult {
  RetentionWindow window = RetentionWindow::Monthly;
  std::vector<RetentionReport> windows;
  double median_fraction = 0.0;
  double iqr_fraction = 0.0;  // interquartile range of per-window fractions
};

// Tiles the dataset span into windows of the given size (step = window
// length), runs detection -> grouping -> greedy selection within each
// window, and reports per-window retention against the probes active in
// that window. Windows without samples are skipped.
WindowedRetentionResult windowed_retention(const RawDataset& dataset, RetentionWindow window,
                                           const Config& cfg,
                                           const std::optional<std::string>& destination = {});

struct RecallPair {
  double recall = 0.0;
  double weighted_recall = 0.0;
};

// Recall of `selected` against already-grouped evaluation anomalies;
// exposed separately so the definition can be cross-checked directly.
RecallPair recall_against_groups(const std::vector<struct AnomalyGroup>& eval_groups,
                                 const std::set<ProbeId>& selected);

}  // namespace latsel
