#include "latsel/tables.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "latsel/csv.hpp"
#include "latsel/error.hpp"

namespace latsel::tables {

namespace {

constexpr const char* kAnomalyHeader =
    "anomaly_id,probe_id,destination,start_utc,end_utc,amplitude_ms,duration_h,impact_ms_h,"
    "baseline_ms";

}  // namespace

std::string anomalies_csv(const std::vector<Anomaly>& anomalies) {
  csv::Writer w;
  w.field(std::string_view(kAnomalyHeader));
  w.end_row();
  for (const auto& a : anomalies) {
    w.field(a.id);
    w.field(std::string_view(a.probe));
    w.field(std::string_view(a.destination));
    w.field(std::string_view(format_timestamp(a.start)));
    w.field(std::string_view(format_timestamp(a.end)));
    w.field(a.amplitude_ms);
    w.field(a.duration_h);
    w.field(a.impact_ms_h);
    w.field(a.baseline_ms);
    w.end_row();
  }
  return w.take();
}

std::vector<Anomaly> parse_anomalies_csv(const std::string& text, const std::string& context) {
  std::vector<Anomaly> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto fields = csv::split_fields(line);
    if (lineno == 1) {
      if (fields.empty() || fields[0] != "anomaly_id")
        throw input_error(context + ": expected anomaly CSV header");
      continue;
    }
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 9)
      throw input_error(context + ":" + std::to_string(lineno) + ": expected 9 fields");
    const std::string ctx = context + ":" + std::to_string(lineno);
    Anomaly a;
    a.id = csv::parse_int(fields[0], ctx);
    a.probe = std::string(fields[1]);
    a.destination = std::string(fields[2]);
    a.start = parse_timestamp(fields[3]);
    a.end = parse_timestamp(fields[4]);
    a.amplitude_ms = csv::parse_double(fields[5], ctx);
    a.duration_h = csv::parse_double(fields[6], ctx);
    a.impact_ms_h = csv::parse_double(fields[7], ctx);
    a.baseline_ms = csv::parse_double(fields[8], ctx);
    if (a.start >= a.end) throw input_error(ctx + ": anomaly interval must have start < end");
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Anomaly> load_anomalies_csv(const std::string& path) {
  return parse_anomalies_csv(csv::read_file(path), path);
}

std::string overlaps_csv(const std::vector<OverlapRecord>& records) {
  csv::Writer w;
  w.field(std::string_view(
      "anomaly_a,anomaly_b,probe_a,probe_b,destination,iou,amplitude_similarity,same_isp"));
  w.end_row();
  for (const auto& r : records) {
    w.field(r.anomaly_a);
    w.field(r.anomaly_b);
    w.field(std::string_view(r.probe_a));
    w.field(std::string_view(r.probe_b));
    w.field(std::string_view(r.destination));
    w.field(r.iou);
    w.field(r.amplitude_similarity);
    w.field(std::string_view(r.same_isp ? "1" : "0"));
    w.end_row();
  }
  return w.take();
}

std::string overlap_summary_csv(const std::vector<IouBinSummary>& bins) {
  csv::Writer w;
  w.field(std::string_view(
      "iou_bin_low,iou_bin_high,count,median_amplitude_similarity,median_impact_ms_h,"
      "same_isp_count,same_isp_median_similarity,diff_isp_count,diff_isp_median_similarity"));
  w.end_row();
  for (const auto& b : bins) {
    w.field(b.lo);
    w.field(b.hi);
    w.field(b.count);
    w.field(b.median_similarity);
    w.field(b.median_impact);
    w.field(b.same_isp_count);
    w.field(b.same_isp_median_similarity);
    w.field(b.diff_isp_count);
    w.field(b.diff_isp_median_similarity);
    w.end_row();
  }
  return w.take();
}

std::string null_distribution_csv(const NullDistribution& null) {
  csv::Writer w;
  w.field(std::string_view("rep,high_iou_fraction"));
  w.end_row();
  for (std::size_t i = 0; i < null.high_iou_fractions.size(); ++i) {
    w.field(i + 1);
    w.field(null.high_iou_fractions[i]);
    w.end_row();
  }
  return w.take();
}

std::string randomization_csv(const RandomizationReport& report) {
  csv::Writer w;
  w.field(std::string_view(
      "threshold,reps,observed_fraction,observed_pairs,percentile,null_mean,null_stdev"));
  w.end_row();
  w.field(report.null_dist.threshold);
  w.field(report.null_dist.reps);
  w.field(report.observed_fraction);
  w.field(report.observed_pairs);
  w.field(report.percentile);
  w.field(report.null_mean);
  w.field(report.null_stdev);
  w.end_row();
  return w.take();
}

std::string groups_csv(const std::vector<AnomalyGroup>& groups) {
  csv::Writer w;
  w.field(std::string_view(
      "group_id,destination,member_count,probe_count,group_impact_ms_h,group_log_impact"));
  w.end_row();
  for (const auto& g : groups) {
    w.field(g.group_id);
    w.field(std::string_view(g.destination));
    w.field(g.members.size());
    w.field(g.probes.size());
    w.field(g.group_impact);
    w.field(g.group_log_impact);
    w.end_row();
  }
  return w.take();
}

std::string selection_csv(const std::vector<SelectionResult>& results) {
  csv::Writer w;
  w.field(std::string_view("method,step,probe_id,marginal_log_impact,cumulative_fraction"));
  w.end_row();
  for (const auto& res : results) {
    for (std::size_t i = 0; i < res.per_step.size(); ++i) {
      w.field(std::string_view(selection_method_name(res.method)));
      w.field(i + 1);
      w.field(std::string_view(res.per_step[i].probe));
      w.field(res.per_step[i].marginal_log_impact);
      w.field(res.per_step[i].cumulative_fraction);
      w.end_row();
    }
  }
  return w.take();
}

std::string selection_summary_csv(const std::vector<SelectionResult>& results,
                                  const RandomSelectionSummary* random_summary) {
  csv::Writer w;
  w.field(std::string_view(
      "method,probe_count,unique_anomaly_count,coverage_achieved,coverage_met,"
      "mean_probe_count,stdev_probe_count,mean_unique_count,stdev_unique_count"));
  w.end_row();
  for (const auto& res : results) {
    w.field(std::string_view(selection_method_name(res.method)));
    w.field(res.selected.size());
    w.field(res.unique_anomaly_count);
    w.field(res.coverage_fraction_achieved);
    w.field(std::string_view(res.coverage_met ? "1" : "0"));
    w.field(std::string_view(""));
    w.field(std::string_view(""));
    w.field(std::string_view(""));
    w.field(std::string_view(""));
    w.end_row();
  }
  if (random_summary) {
    w.field(std::string_view("random"));
    w.field(std::string_view(""));
    w.field(std::string_view(""));
    w.field(std::string_view(""));
    w.field(std::string_view(""));
    w.field(random_summary->mean_probe_count);
    w.field(random_summary->stdev_probe_count);
    w.field(random_summary->mean_unique_count);
    w.field(random_summary->stdev_unique_count);
    w.end_row();
  }
  return w.take();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  csv::Writer w;
  w.field(std::string_view(
      "coverage_c,delta_iou,probe_count,coverage_achieved,unique_anomaly_count"));
  w.end_row();
  for (const auto& r : rows) {
    w.field(r.coverage_c);
    w.field(r.delta_iou);
    w.field(r.probe_count);
    w.field(r.coverage_achieved);
    w.field(r.unique_anomaly_count);
    w.end_row();
  }
  return w.take();
}

std::string eval_table_csv(const std::vector<PredictiveReport>& reports) {
  std::set<std::string> dests;
  std::set<int> t_values;
  std::map<std::pair<int, std::string>, const PredictiveReport*> cells;
  for (const auto& r : reports) {
    dests.insert(r.destination);
    t_values.insert(r.selection_window_days);
    cells[{r.selection_window_days, r.destination}] = &r;
  }

  csv::Writer w;
  w.field(std::string_view("T_days"));
  for (const auto& d : dests) {
    w.field(std::string_view(d + "_recall"));
    w.field(std::string_view(d + "_weighted_recall"));
    w.field(std::string_view(d + "_probe_count"));
    w.field(std::string_view(d + "_eligible"));
  }
  w.end_row();
  for (const int t : t_values) {
    w.field(t);
    for (const auto& d : dests) {
      const auto it = cells.find({t, d});
      if (it == cells.end()) {
        for (int k = 0; k < 4; ++k) w.field(std::string_view(""));
        continue;
      }
      w.field(it->second->recall);
      w.field(it->second->weighted_recall);
      w.field(it->second->probe_count);
      w.field(it->second->eligible_probes);
    }
    w.end_row();
  }
  return w.take();
}

std::string retention_windows_csv(const std::vector<WindowedRetentionResult>& results) {
  csv::Writer w;
  w.field(std::string_view("window,window_label,fraction_retained,regions_total,regions_retained"));
  w.end_row();
  for (const auto& res : results) {
    for (const auto& rep : res.windows) {
      std::size_t total = 0, retained = 0;
      for (const auto& [region, rc] : rep.per_region) {
        if (rc.original == 0) continue;
        ++total;
        if (rc.reduced >= 1) ++retained;
      }
      w.field(std::string_view(retention_window_name(res.window)));
      w.field(std::string_view(rep.window_label));
      w.field(rep.fraction_retained);
      w.field(total);
      w.field(retained);
      w.end_row();
    }
  }
  return w.take();
}

std::string retention_summary_csv(const std::vector<WindowedRetentionResult>& results) {
  csv::Writer w;
  w.field(std::string_view("window,median_fraction,iqr_fraction,window_count"));
  w.end_row();
  for (const auto& res : results) {
    w.field(std::string_view(retention_window_name(res.window)));
    w.field(res.median_fraction);
    w.field(res.iqr_fraction);
    w.field(res.windows.size());
    w.end_row();
  }
  return w.take();
}

std::string retention_regions_csv(const RetentionReport& report) {
  csv::Writer w;
  w.field(std::string_view("region,original_count,reduced_count"));
  w.end_row();
  for (const auto& [region, rc] : report.per_region) {
    w.field(std::string_view(region));
    w.field(rc.original);
    w.field(rc.reduced);
    w.end_row();
  }
  return w.take();
}

std::string samples_csv_header() {
  return "probe_id,destination,timestamp_utc,rtt_ms,isp\n";
}

void append_samples_csv(std::string& out, const ProbeId& probe, const std::string& destination,
                        const std::vector<RttSample>& samples) {
  for (const auto& s : samples) {
    out += probe;
    out += ',';
    out += destination;
    out += ',';
    out += format_timestamp(s.timestamp);
    out += ',';
    out += csv::format_double(s.rtt_ms);
    out += ',';
    out += s.isp;
    out += '\n';
  }
}

std::string meta_csv(const std::map<ProbeId, ProbeMeta>& meta) {
  csv::Writer w;
  w.field(std::string_view("probe_id,isp,region"));
  w.end_row();
  for (const auto& [probe, m] : meta) {
    w.field(std::string_view(probe));
    w.field(std::string_view(m.isp));
    w.field(std::string_view(m.region));
    w.end_row();
  }
  return w.take();
}

std::string ground_truth_csv(const std::vector<GroundTruthRecord>& truth) {
  csv::Writer w;
  w.field(std::string_view("event_id,probe_id,destination,start_utc,end_utc,amplitude_ms"));
  w.end_row();
  for (const auto& r : truth) {
    w.field(r.event_id);
    w.field(std::string_view(r.probe));
    w.field(std::string_view(r.destination));
    w.field(std::string_view(format_timestamp(r.start)));
    w.field(std::string_view(format_timestamp(r.end)));
    w.field(r.amplitude_ms);
    w.end_row();
  }
  return w.take();
}

}  // namespace latsel::tables
