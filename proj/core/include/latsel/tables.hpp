#pragma once

#include <string>
#include <vector>

#include "latsel/evaluation.hpp"
#include "latsel/grouping.hpp"
#include "latsel/overlap.hpp"
#include "latsel/selection.hpp"
#include "latsel/synth.hpp"
#include "latsel/types.hpp"

// CSV renderings of every pipeline artifact. Numbers are written in their
// shortest round-trip form, timestamps as ISO-8601 UTC; writers iterate
// already-ordered inputs so identical data always serializes to identical
// bytes.
namespace latsel::tables {

// anomaly_id,probe_id,destination,start_utc,end_utc,amplitude_ms,duration_h,impact_ms_h,baseline_ms
std::string anomalies_csv(const std::vector<Anomaly>& anomalies);
std::vector<Anomaly> parse_anomalies_csv(const std::string& text, const std::string& context);
std::vector<Anomaly> load_anomalies_csv(const std::string& path);

// anomaly_a,anomaly_b,probe_a,probe_b,destination,iou,amplitude_similarity,same_isp
std::string overlaps_csv(const std::vector<OverlapRecord>& records);

// iou_bin_low,iou_bin_high,count,median_amplitude_similarity,median_impact_ms_h,...
std::string overlap_summary_csv(const std::vector<IouBinSummary>& bins);

// rep,high_iou_fraction
std::string null_distribution_csv(const NullDistribution& null);

// single-row summary of the randomization test
std::string randomization_csv(const RandomizationReport& report);

// group_id,destination,member_count,probe_count,group_impact_ms_h,group_log_impact
std::string groups_csv(const std::vector<AnomalyGroup>& groups);

// method,step,probe_id,marginal_log_impact,cumulative_fraction
std::string selection_csv(const std::vector<SelectionResult>& results);

// method,probe_count,unique_anomaly_count,coverage_achieved,coverage_met (+ random mean/std)
std::string selection_summary_csv(const std::vector<SelectionResult>& results,
                                  const RandomSelectionSummary* random_summary);

// coverage_c,delta_iou,probe_count,coverage_achieved,unique_anomaly_count
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Wide, table-shaped grid: one row per T, (recall, weighted_recall,
// probe_count, eligible) column block per destination.
std::string eval_table_csv(const std::vector<PredictiveReport>& reports);

// window_label,fraction_retained,regions_total,regions_retained
std::string retention_windows_csv(const std::vector<WindowedRetentionResult>& results);

// window,median_fraction,iqr_fraction,window_count
std::string retention_summary_csv(const std::vector<WindowedRetentionResult>& results);

// region,original_count,reduced_count
std::string retention_regions_csv(const RetentionReport& report);

// probe_id,destination,timestamp_utc,rtt_ms,isp  (the ingest schema)
std::string samples_csv_header();
void append_samples_csv(std::string& out, const ProbeId& probe, const std::string& destination,
                        const std::vector<RttSample>& samples);

// probe_id,isp,region
std::string meta_csv(const std::map<ProbeId, ProbeMeta>& meta);

// event_id,probe_id,destination,start_utc,end_utc,amplitude_ms
std::string ground_truth_csv(const std::vector<GroundTruthRecord>& truth);

}  // namespace latsel::tables
