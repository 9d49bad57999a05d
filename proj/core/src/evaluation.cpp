#include "latsel/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latsel/detect.hpp"
#include "latsel/error.hpp"
#include "latsel/grouping.hpp"
#include "latsel/parallel.hpp"
#include "latsel/selection.hpp"

namespace latsel {

namespace {

struct TimeSpan {
  Timestamp min = std::numeric_limits<Timestamp>::max();
  Timestamp max = std::numeric_limits<Timestamp>::min();
  bool any = false;
};

TimeSpan dataset_span(const RawDataset& ds) {
  TimeSpan span;
  for (const auto& [key, samples] : ds.series) {
    if (samples.empty()) continue;
    span.min = std::min(span.min, samples.front().timestamp);
    span.max = std::max(span.max, samples.back().timestamp);
    span.any = true;
  }
  return span;
}

// Dataset restricted to one destination and a [lo, hi) time slice.
RawDataset slice_dataset(const RawDataset& ds, const std::optional<std::string>& destination,
                         Timestamp lo, Timestamp hi) {
  RawDataset out;
  out.meta = ds.meta;
  for (const auto& [key, samples] : ds.series) {
    if (destination && key.destination != *destination) continue;
    std::vector<RttSample> kept;
    for (const auto& s : samples)
      if (s.timestamp >= lo && s.timestamp < hi) kept.push_back(s);
    if (!kept.empty()) {
      out.destinations.emplace(key.destination, Destination{key.destination, ""});
      out.series[key] = std::move(kept);
    }
  }
  return out;
}

double median_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Quartile via linear interpolation on the sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted[0];
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

RecallPair recall_against_groups(const std::vector<AnomalyGroup>& eval_groups,
                                 const std::set<ProbeId>& selected) {
  RecallPair out;
  if (eval_groups.empty()) {
    out.recall = 1.0;
    out.weighted_recall = 1.0;
    return out;
  }
  std::size_t covered = 0;
  double covered_w = 0.0, total_w = 0.0;
  for (const auto& g : eval_groups) {
    const bool hit = std::any_of(g.probes.begin(), g.probes.end(),
                                 [&](const ProbeId& p) { return selected.count(p) > 0; });
    total_w += g.group_log_impact;
    if (hit) {
      ++covered;
      covered_w += g.group_log_impact;
    }
  }
  out.recall = static_cast<double>(covered) / static_cast<double>(eval_groups.size());
  out.weighted_recall = total_w > 0.0 ? covered_w / total_w : 1.0;
  return out;
}

PredictiveReport predictive_eval(const RawDataset& dataset, int t_days, const Config& cfg,
                                 const std::optional<std::string>& isp_filter,
                                 const std::string& destination) {
  if (t_days <= 0) throw config_error("predictive_eval: T must be > 0 days");

  const TimeSpan span = dataset_span(dataset);
  if (!span.any) throw input_error("predictive_eval: empty dataset");
  const Timestamp split = span.min + static_cast<Timestamp>(t_days) * kSecondsPerDay;
  if (split > span.max) throw input_error("predictive_eval: dataset does not span past T days");

  // Eligibility: >= 1 sample toward the destination in both periods, and a
  // matching metadata ISP when filtering.
  std::set<ProbeId> eligible;
  for (const auto& [key, samples] : dataset.series) {
    if (key.destination != destination || samples.empty()) continue;
    if (isp_filter) {
      const auto it = dataset.meta.find(key.probe);
      if (it == dataset.meta.end() || it->second.isp != *isp_filter) continue;
    }
    const bool in_train = samples.front().timestamp < split;
    const bool in_eval = samples.back().timestamp >= split;
    if (in_train && in_eval) eligible.insert(key.probe);
  }
  if (eligible.empty()) throw input_error("predictive_eval: no eligible probes");

  auto restrict_to_eligible = [&](RawDataset ds) {
    for (auto it = ds.series.begin(); it != ds.series.end();) {
      if (!eligible.count(it->first.probe)) it = ds.series.erase(it);
      else ++it;
    }
    return ds;
  };

  const RawDataset train =
      restrict_to_eligible(slice_dataset(dataset, destination, span.min, split));
  const RawDataset eval_ds = restrict_to_eligible(
      slice_dataset(dataset, destination, split, std::numeric_limits<Timestamp>::max()));
  if (eval_ds.series.empty()) throw input_error("predictive_eval: empty evaluation period");

  const auto train_anomalies = detect_anomalies(train, cfg);
  const auto train_groups = group_anomalies(train_anomalies, cfg.delta_iou);
  std::vector<ProbeId> probe_universe(eligible.begin(), eligible.end());
  const Incidence incidence = probe_group_incidence(train_groups, probe_universe);
  const GroupWeights weights = group_weights(train_groups);
  const SelectionResult selection = greedy_select(incidence, weights, cfg.coverage_c);
  const std::set<ProbeId> selected(selection.selected.begin(), selection.selected.end());

  const auto eval_anomalies = detect_anomalies(eval_ds, cfg);
  const auto eval_groups = group_anomalies(eval_anomalies, cfg.delta_iou);
  const RecallPair recall = recall_against_groups(eval_groups, selected);

  PredictiveReport report;
  report.selection_window_days = t_days;
  report.destination = destination;
  report.recall = recall.recall;
  report.weighted_recall = recall.weighted_recall;
  report.probe_count = selection.selected.size();
  report.eligible_probes = eligible.size();
  report.eval_group_count = eval_groups.size();
  return report;
}

std::vector<PredictiveReport> predictive_eval_grid(
    const RawDataset& dataset, const std::vector<int>& t_days_list, const Config& cfg,
    const std::optional<std::string>& isp_filter) {
  std::vector<std::pair<int, std::string>> cells;
  for (const int t : t_days_list)
    for (const auto& [name, dest] : dataset.destinations) cells.emplace_back(t, name);

  std::vector<PredictiveReport> reports(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    reports[i] = predictive_eval(dataset, cells[i].first, cfg, isp_filter, cells[i].second);
  });
  return reports;
}

RetentionReport retention_analysis(const std::map<ProbeId, ProbeMeta>& meta,
                                   const std::set<ProbeId>& selected) {
  for (const auto& p : selected)
    if (!meta.count(p))
      throw input_error("retention_analysis: selected probe '" + p + "' has no meta entry");

  RetentionReport report;
  for (const auto& [probe, m] : meta) {
    if (m.region.empty()) continue;  // unknown region: excluded from both counts
    RegionCounts& rc = report.per_region[m.region];
    ++rc.original;
    if (selected.count(probe)) ++rc.reduced;
  }
  std::size_t total = 0, retained = 0;
  for (const auto& [region, rc] : report.per_region) {
    if (rc.original == 0) continue;
    ++total;
    if (rc.reduced >= 1) ++retained;
  }
  report.fraction_retained =
      total == 0 ? 0.0 : static_cast<double>(retained) / static_cast<double>(total);
  return report;
}

int retention_window_days(RetentionWindow w) {
  switch (w) {
    case RetentionWindow::Daily: return 1;
    case RetentionWindow::Weekly: return 7;
    case RetentionWindow::Monthly: return 30;
    case RetentionWindow::Bimonthly: return 60;
    case RetentionWindow::Quarterly: return 90;
  }
  return 30;
}

std::string retention_window_name(RetentionWindow w) {
  switch (w) {
    case RetentionWindow::Daily: return "daily";
    case RetentionWindow::Weekly: return "weekly";
    case RetentionWindow::Monthly: return "monthly";
    case RetentionWindow::Bimonthly: return "bimonthly";
    case RetentionWindow::Quarterly: return "quarterly";
  }
  return "monthly";
}

WindowedRetentionResult windowed_retention(const RawDataset& dataset, RetentionWindow window,
                                           const Config& cfg,
                                           const std::optional<std::string>& destination) {
  const TimeSpan span = dataset_span(dataset);
  if (!span.any) throw input_error("windowed_retention: empty dataset");
  const std::int64_t len = static_cast<std::int64_t>(retention_window_days(window)) *
                           kSecondsPerDay;

  WindowedRetentionResult result;
  result.window = window;

  for (Timestamp lo = span.min; lo <= span.max; lo += len) {
    const Timestamp hi = lo + len;
    const RawDataset slice = slice_dataset(dataset, destination, lo, hi);
    if (slice.series.empty()) continue;

    // Active = has data in this window; retention baseline is the active
    // probes, since absent probes never had a chance to be retained.
    std::map<ProbeId, ProbeMeta> active_meta;
    for (const auto& [key, samples] : slice.series) {
      const auto it = dataset.meta.find(key.probe);
      if (it != dataset.meta.end()) active_meta.emplace(key.probe, it->second);
    }

    const auto anomalies = detect_anomalies(slice, cfg);
    const auto groups = group_anomalies(anomalies, cfg.delta_iou);
    std::vector<ProbeId> universe;
    for (const auto& [p, m] : active_meta) universe.push_back(p);
    std::set<ProbeId> selected;
    if (!groups.empty()) {
      const SelectionResult sel = greedy_select(probe_group_incidence(groups, universe),
                                                group_weights(groups), cfg.coverage_c);
      selected.insert(sel.selected.begin(), sel.selected.end());
    }

    RetentionReport report = retention_analysis(active_meta, selected);
    report.window_label = retention_window_name(window) + "[" + format_timestamp(lo) + ".." +
                          format_timestamp(hi) + ")";
    result.windows.push_back(std::move(report));
  }

  std::vector<double> fractions;
  for (const auto& r : result.windows) fractions.push_back(r.fraction_retained);
  result.median_fraction = median_sorted(fractions);
  std::sort(fractions.begin(), fractions.end());
  result.iqr_fraction =
      quantile_sorted(fractions, 0.75) - quantile_sorted(fractions, 0.25);
  return result;
}

}  // namespace latsel
