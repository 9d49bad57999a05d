// latsel: detect latency anomalies in per-probe RTT series, quantify their
// co-occurrence across probes, and select a minimal representative probe
// subset covering a target fraction of total anomaly impact.

#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latsel/config.hpp"
#include "latsel/csv.hpp"
#include "latsel/detect.hpp"
#include "latsel/error.hpp"
#include "latsel/evaluation.hpp"
#include "latsel/grouping.hpp"
#include "latsel/ingest.hpp"
#include "latsel/manifest.hpp"
#include "latsel/overlap.hpp"
#include "latsel/selection.hpp"
#include "latsel/synth.hpp"
#include "latsel/tables.hpp"

namespace fs = std::filesystem;
using namespace latsel;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::string destination;  // empty = all
  std::string isp;          // empty = all
};

struct ConfigOverrides {
  std::optional<int> bin_minutes, window_hours, step_hours, merge_gap_bins, reps;
  std::optional<double> pelt_penalty, jump_threshold, memory_sigma_factor, delta_iou, coverage_c;
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "key=value config file");
  cmd->add_option("--seed", args.seed, "RNG seed (overrides config rng_seed)");
  cmd->add_option("--out-dir", args.out_dir, "output directory")->required();
  cmd->add_option("--destination", args.destination, "restrict to one destination");
  cmd->add_option("--isp", args.isp, "restrict to probes of one ISP (per meta)");
}

void add_config_flags(CLI::App* cmd, ConfigOverrides& ov) {
  cmd->add_option("--bin-minutes", ov.bin_minutes, "min-RTT bin width");
  cmd->add_option("--window-hours", ov.window_hours, "detection window length");
  cmd->add_option("--step-hours", ov.step_hours, "detection window step");
  cmd->add_option("--pelt-penalty", ov.pelt_penalty, "change-point penalty");
  cmd->add_option("--jump-threshold", ov.jump_threshold, "mean-shift jump threshold (ms)");
  cmd->add_option("--memory-sigma-factor", ov.memory_sigma_factor, "jump memory rule factor");
  cmd->add_option("--merge-gap-bins", ov.merge_gap_bins, "bridgeable non-jump bins");
  cmd->add_option("--delta-iou", ov.delta_iou, "IoU threshold for anomaly identity");
  cmd->add_option("--coverage-c", ov.coverage_c, "target coverage fraction");
  cmd->add_option("--reps", ov.reps, "randomization / random-baseline repetitions");
}

// Config file (when given), then flag overrides, then validation.
Config resolve_config(const CommonArgs& args, const ConfigOverrides& ov) {
  Config cfg = args.config_path.empty() ? Config{} : load_config_file(args.config_path);
  if (ov.bin_minutes) cfg.bin_minutes = *ov.bin_minutes;
  if (ov.window_hours) cfg.window_hours = *ov.window_hours;
  if (ov.step_hours) cfg.step_hours = *ov.step_hours;
  if (ov.pelt_penalty) cfg.pelt_penalty = *ov.pelt_penalty;
  if (ov.jump_threshold) cfg.jump_threshold_ms = *ov.jump_threshold;
  if (ov.memory_sigma_factor) cfg.memory_sigma_factor = *ov.memory_sigma_factor;
  if (ov.merge_gap_bins) cfg.merge_gap_bins = *ov.merge_gap_bins;
  if (ov.delta_iou) cfg.delta_iou = *ov.delta_iou;
  if (ov.coverage_c) cfg.coverage_c = *ov.coverage_c;
  if (ov.reps) cfg.randomization_reps = *ov.reps;
  if (args.seed) cfg.rng_seed = *args.seed;
  validate_config(cfg);
  if (cfg.window_hours < cfg.step_hours)
    throw config_error("config field 'step_hours' must not exceed 'window_hours'");
  return cfg;
}

RunManifest make_manifest(const std::string& command, const Config& cfg) {
  RunManifest m;
  m.version = kVersion;
  m.command = command;
  m.config = cfg;
  m.seed = cfg.rng_seed;
  return m;
}

std::string out_path(const CommonArgs& args, const std::string& name) {
  fs::create_directories(args.out_dir);
  return (fs::path(args.out_dir) / name).string();
}

void write_output(RunManifest& manifest, const CommonArgs& args, const std::string& name,
                  const std::string& content, std::uint64_t rows) {
  const std::string path = out_path(args, name);
  csv::write_file(path, content);
  manifest.add_output(path, content, rows);
}

void apply_dataset_filters(RawDataset& ds, const CommonArgs& args) {
  if (args.destination.empty() && args.isp.empty()) return;
  for (auto it = ds.series.begin(); it != ds.series.end();) {
    bool keep = true;
    if (!args.destination.empty() && it->first.destination != args.destination) keep = false;
    if (keep && !args.isp.empty()) {
      const auto mit = ds.meta.find(it->first.probe);
      keep = mit != ds.meta.end() && mit->second.isp == args.isp;
    }
    it = keep ? std::next(it) : ds.series.erase(it);
  }
}

std::vector<Anomaly> load_filtered_anomalies(const std::string& path, const CommonArgs& args,
                                             const std::map<ProbeId, ProbeMeta>* meta) {
  std::vector<Anomaly> anomalies = tables::load_anomalies_csv(path);
  if (args.destination.empty() && args.isp.empty()) return anomalies;
  std::vector<Anomaly> kept;
  for (auto& a : anomalies) {
    if (!args.destination.empty() && a.destination != args.destination) continue;
    if (!args.isp.empty()) {
      if (!meta) throw input_error("--isp filtering requires --meta");
      const auto it = meta->find(a.probe);
      if (it == meta->end() || it->second.isp != args.isp) continue;
    }
    kept.push_back(std::move(a));
  }
  return kept;
}

// "lo:hi:step" inclusive grid; plain "v" yields a single value.
std::vector<double> parse_range(const std::string& text, const std::string& flag) {
  const auto ctx = "flag " + flag;
  std::vector<double> out;
  const std::size_t c1 = text.find(':');
  if (c1 == std::string::npos) {
    out.push_back(csv::parse_double(text, ctx));
    return out;
  }
  const std::size_t c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw config_error(ctx + ": expected lo:hi:step");
  const double lo = csv::parse_double(text.substr(0, c1), ctx);
  const double hi = csv::parse_double(text.substr(c1 + 1, c2 - c1 - 1), ctx);
  const double step = csv::parse_double(text.substr(c2 + 1), ctx);
  if (!(step > 0.0) || hi < lo) throw config_error(ctx + ": expected lo <= hi and step > 0");
  for (int i = 0;; ++i) {
    const double v = lo + step * i;
    if (v > hi + 1e-9) break;
    out.push_back(std::min(v, hi));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t comma = text.find(',', begin);
    const std::string item =
        text.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
    if (!item.empty())
      out.push_back(static_cast<int>(csv::parse_int(item, "flag " + flag)));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  if (out.empty()) throw config_error("flag " + flag + ": empty list");
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_synth(const CommonArgs& args, const std::string& spec_path) {
  SynthSpec spec = parse_synth_spec_json(csv::read_file(spec_path));
  if (args.seed) spec.seed = *args.seed;

  Config cfg;
  cfg.rng_seed = spec.seed;
  RunManifest manifest = make_manifest("synth", cfg);
  manifest.add_input(spec_path);

  StageTimer timer;
  const auto truth = synth_ground_truth(spec);
  const auto probe_ids = synth_probe_ids(spec);

  // Stream the sample CSV series by series; the full sample set can be
  // large at benchmark scale.
  std::string samples = tables::samples_csv_header();
  std::uint64_t rows = 0;
  std::map<ProbeId, ProbeMeta> meta;
  for (int p = 0; p < spec.probe_count; ++p) {
    ProbeMeta m;
    m.probe = probe_ids[static_cast<std::size_t>(p)];
    m.isp = spec.isps[static_cast<std::size_t>(p) % spec.isps.size()];
    if (!spec.regions.empty())
      m.region = spec.regions[static_cast<std::size_t>(p) % spec.regions.size()];
    meta[m.probe] = m;
    for (std::size_t d = 0; d < spec.destinations.size(); ++d) {
      const auto series = synth_series(spec, p, static_cast<int>(d), truth);
      tables::append_samples_csv(samples, probe_ids[static_cast<std::size_t>(p)],
                                 spec.destinations[d], series);
      rows += series.size();
    }
  }
  manifest.add_stage("generate", rows, timer.elapsed_ms());

  write_output(manifest, args, "samples.csv", samples, rows);
  write_output(manifest, args, "meta.csv", tables::meta_csv(meta), meta.size());
  write_output(manifest, args, "ground_truth.csv", tables::ground_truth_csv(truth),
               truth.size());
  manifest.save(out_path(args, "manifest.json"));
  return 0;
}

int cmd_detect(const CommonArgs& args, const ConfigOverrides& ov, const std::string& samples_path,
               const std::string& meta_path) {
  const Config cfg = resolve_config(args, ov);
  RunManifest manifest = make_manifest("detect", cfg);

  StageTimer ingest_timer;
  RawDataset ds = ingest(samples_path, meta_path);
  apply_dataset_filters(ds, args);
  manifest.add_input(samples_path, ds.sample_count());
  manifest.add_input(meta_path, ds.meta.size());
  manifest.add_stage("ingest", ds.sample_count(), ingest_timer.elapsed_ms());
  if (ds.dropped_samples > 0)
    std::cerr << "warning: dropped " << ds.dropped_samples
              << " samples with non-finite or non-positive rtt\n";
  if (ds.duplicate_samples > 0)
    std::cerr << "warning: resolved " << ds.duplicate_samples
              << " duplicate (probe,destination,timestamp) rows to the last row\n";

  StageTimer detect_timer;
  const auto anomalies = detect_anomalies(ds, cfg);
  manifest.add_stage("detect", anomalies.size(), detect_timer.elapsed_ms());

  write_output(manifest, args, "anomalies.csv", tables::anomalies_csv(anomalies),
               anomalies.size());
  manifest.save(out_path(args, "manifest.json"));
  return 0;
}

int cmd_overlap(const CommonArgs& args, const ConfigOverrides& ov,
                const std::string& anomalies_path, const std::string& meta_path) {
  const Config cfg = resolve_config(args, ov);
  RunManifest manifest = make_manifest("overlap", cfg);

  std::map<ProbeId, ProbeMeta> meta;
  if (!meta_path.empty()) {
    meta = load_meta(meta_path);
    manifest.add_input(meta_path, meta.size());
  }
  const auto anomalies =
      load_filtered_anomalies(anomalies_path, args, meta_path.empty() ? nullptr : &meta);
  manifest.add_input(anomalies_path, anomalies.size());

  StageTimer pair_timer;
  const auto records = pairwise_overlaps(anomalies, meta_path.empty() ? nullptr : &meta);
  manifest.add_stage("pairwise", records.size(), pair_timer.elapsed_ms());

  StageTimer summary_timer;
  const auto summary = stratified_summary(records, anomalies, 0.2);
  manifest.add_stage("stratify", summary.size(), summary_timer.elapsed_ms());

  StageTimer rand_timer;
  const auto report =
      randomization_test(anomalies, cfg.randomization_reps, 0.8, cfg.rng_seed);
  manifest.add_stage("randomization", static_cast<std::uint64_t>(report.null_dist.reps),
                     rand_timer.elapsed_ms());

  if (records.empty()) std::cerr << "note: no overlapping anomaly pairs\n";
  if (const auto rho = iou_similarity_spearman(records))
    std::cerr << "spearman(iou, amplitude_similarity) = " << *rho << "\n";

  write_output(manifest, args, "overlaps.csv", tables::overlaps_csv(records), records.size());
  write_output(manifest, args, "overlap_summary.csv", tables::overlap_summary_csv(summary),
               summary.size());
  write_output(manifest, args, "null_fractions.csv",
               tables::null_distribution_csv(report.null_dist),
               report.null_dist.high_iou_fractions.size());
  write_output(manifest, args, "randomization.csv", tables::randomization_csv(report), 1);
  manifest.save(out_path(args, "manifest.json"));
  return 0;
}

int cmd_select(const CommonArgs& args, const ConfigOverrides& ov,
               const std::string& anomalies_path, const std::string& meta_path,
               const std::string& method, const std::string& sweep_c,
               const std::string& sweep_delta) {
  const Config cfg = resolve_config(args, ov);
  RunManifest manifest = make_manifest("select", cfg);

  std::map<ProbeId, ProbeMeta> meta;
  if (!meta_path.empty()) {
    meta = load_meta(meta_path);
    manifest.add_input(meta_path, meta.size());
  }
  const auto anomalies =
      load_filtered_anomalies(anomalies_path, args, meta_path.empty() ? nullptr : &meta);
  manifest.add_input(anomalies_path, anomalies.size());

  StageTimer group_timer;
  const auto groups = group_anomalies(anomalies, cfg.delta_iou);
  const Incidence incidence = probe_group_incidence(groups);
  const GroupWeights weights = group_weights(groups);
  manifest.add_stage("group", groups.size(), group_timer.elapsed_ms());

  std::vector<SelectionResult> results;
  RandomSelectionSummary random_summary;
  bool have_random = false;

  StageTimer select_timer;
  if (incidence.empty()) {
    std::cerr << "note: no anomalies; nothing to select\n";
  } else {
    if (method == "greedy" || method == "all")
      results.push_back(greedy_select(incidence, weights, cfg.coverage_c));
    if (method == "impact" || method == "all")
      results.push_back(descending_impact_select(incidence, weights, cfg.coverage_c));
    if (method == "random" || method == "all") {
      random_summary = random_select(incidence, weights, cfg.coverage_c,
                                     cfg.randomization_reps, cfg.rng_seed);
      have_random = true;
    }
  }
  manifest.add_stage("select", results.size(), select_timer.elapsed_ms());

  for (const auto& r : results)
    if (!r.coverage_met)
      std::cerr << "warning: " << selection_method_name(r.method)
                << " exhausted all probes below the coverage target\n";

  write_output(manifest, args, "groups.csv", tables::groups_csv(groups), groups.size());
  write_output(manifest, args, "selection.csv", tables::selection_csv(results),
               results.size());
  write_output(manifest, args, "selection_summary.csv",
               tables::selection_summary_csv(results, have_random ? &random_summary : nullptr),
               results.size() + (have_random ? 1 : 0));

  if (!sweep_c.empty() || !sweep_delta.empty()) {
    const std::vector<double> c_values = sweep_c.empty()
                                             ? std::vector<double>{cfg.coverage_c}
                                             : parse_range(sweep_c, "--sweep-c");
    const std::vector<double> d_values = sweep_delta.empty()
                                             ? std::vector<double>{cfg.delta_iou}
                                             : parse_range(sweep_delta, "--sweep-delta");
    StageTimer sweep_timer;
    const auto rows = sweep(c_values, d_values, [&](double delta) {
      const auto g = group_anomalies(anomalies, delta);
      return std::make_pair(probe_group_incidence(g), group_weights(g));
    });
    manifest.add_stage("sweep", rows.size(), sweep_timer.elapsed_ms());
    write_output(manifest, args, "sweep.csv", tables::sweep_csv(rows), rows.size());
  }
  manifest.save(out_path(args, "manifest.json"));
  return 0;
}

int cmd_eval(const CommonArgs& args, const ConfigOverrides& ov, const std::string& samples_path,
             const std::string& meta_path, const std::string& t_list) {
  const Config cfg = resolve_config(args, ov);
  RunManifest manifest = make_manifest("eval", cfg);

  RawDataset ds = ingest(samples_path, meta_path);
  if (!args.destination.empty()) {
    // Keep only the requested destination; the ISP filter is applied via
    // predictive_eval's eligibility rule.
    for (auto it = ds.series.begin(); it != ds.series.end();)
      it = it->first.destination != args.destination ? ds.series.erase(it) : std::next(it);
    for (auto it = ds.destinations.begin(); it != ds.destinations.end();)
      it = it->first != args.destination ? ds.destinations.erase(it) : std::next(it);
  }
  manifest.add_input(samples_path, ds.sample_count());
  manifest.add_input(meta_path, ds.meta.size());

  const std::vector<int> t_days = parse_int_list(t_list, "--T");
  const std::optional<std::string> isp_filter =
      args.isp.empty() ? std::nullopt : std::optional<std::string>(args.isp);

  StageTimer eval_timer;
  const auto reports = predictive_eval_grid(ds, t_days, cfg, isp_filter);
  manifest.add_stage("predictive_eval", reports.size(), eval_timer.elapsed_ms());

  write_output(manifest, args, "eval_table.csv", tables::eval_table_csv(reports),
               reports.size());
  manifest.save(out_path(args, "manifest.json"));
  return 0;
}

int cmd_retention(const CommonArgs& args, const ConfigOverrides& ov,
                  const std::string& samples_path, const std::string& meta_path,
                  const std::string& window_name) {
  const Config cfg = resolve_config(args, ov);
  RunManifest manifest = make_manifest("retention", cfg);

  RawDataset ds = ingest(samples_path, meta_path);
  apply_dataset_filters(ds, args);
  manifest.add_input(samples_path, ds.sample_count());
  manifest.add_input(meta_path, ds.meta.size());

  const std::optional<std::string> destination =
      args.destination.empty() ? std::nullopt : std::optional<std::string>(args.destination);

  // Full-dataset selection and per-region retention.
  StageTimer full_timer;
  const auto anomalies = detect_anomalies(ds, cfg);
  const auto groups = group_anomalies(anomalies, cfg.delta_iou);
  std::vector<ProbeId> universe;
  for (const auto& [key, samples] : ds.series) universe.push_back(key.probe);
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  std::set<ProbeId> selected;
  if (!groups.empty()) {
    const auto sel = greedy_select(probe_group_incidence(groups, universe),
                                   group_weights(groups), cfg.coverage_c);
    selected.insert(sel.selected.begin(), sel.selected.end());
  }
  std::map<ProbeId, ProbeMeta> active_meta;
  for (const auto& p : universe) {
    const auto it = ds.meta.find(p);
    if (it != ds.meta.end()) active_meta.emplace(p, it->second);
  }
  const RetentionReport full_report = retention_analysis(active_meta, selected);
  manifest.add_stage("full_retention", full_report.per_region.size(), full_timer.elapsed_ms());

  std::vector<RetentionWindow> windows;
  if (window_name == "all") {
    windows = {RetentionWindow::Daily, RetentionWindow::Weekly, RetentionWindow::Monthly,
               RetentionWindow::Bimonthly, RetentionWindow::Quarterly};
  } else if (window_name == "daily") windows = {RetentionWindow::Daily};
  else if (window_name == "weekly") windows = {RetentionWindow::Weekly};
  else if (window_name == "monthly") windows = {RetentionWindow::Monthly};
  else if (window_name == "bimonthly") windows = {RetentionWindow::Bimonthly};
  else if (window_name == "quarterly") windows = {RetentionWindow::Quarterly};
  else throw config_error("flag --window: unknown window '" + window_name + "'");

  StageTimer window_timer;
  std::vector<WindowedRetentionResult> windowed;
  for (const RetentionWindow w : windows)
    windowed.push_back(windowed_retention(ds, w, cfg, destination));
  std::uint64_t window_rows = 0;
  for (const auto& res : windowed) window_rows += res.windows.size();
  manifest.add_stage("windowed_retention", window_rows, window_timer.elapsed_ms());

  write_output(manifest, args, "retention_regions.csv",
               tables::retention_regions_csv(full_report), full_report.per_region.size());
  write_output(manifest, args, "retention_windows.csv",
               tables::retention_windows_csv(windowed), window_rows);
  write_output(manifest, args, "retention_summary.csv",
               tables::retention_summary_csv(windowed), windowed.size());
  manifest.save(out_path(args, "manifest.json"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latency anomaly detection and representative probe selection"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // synth
  CommonArgs synth_args;
  std::string spec_path;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic RTT dataset");
  synth_cmd->add_option("--spec", spec_path, "JSON synthesis spec")->required();
  add_common_flags(synth_cmd, synth_args);

  // detect
  CommonArgs detect_args;
  ConfigOverrides detect_ov;
  std::string detect_samples, detect_meta;
  auto* detect_cmd = app.add_subcommand("detect", "detect latency anomalies");
  detect_cmd->add_option("--samples", detect_samples, "samples CSV")->required();
  detect_cmd->add_option("--meta", detect_meta, "probe meta CSV")->required();
  add_common_flags(detect_cmd, detect_args);
  add_config_flags(detect_cmd, detect_ov);

  // overlap
  CommonArgs overlap_args;
  ConfigOverrides overlap_ov;
  std::string overlap_anomalies, overlap_meta;
  auto* overlap_cmd = app.add_subcommand("overlap", "pairwise overlap analysis");
  overlap_cmd->add_option("--anomalies", overlap_anomalies, "anomalies CSV")->required();
  overlap_cmd->add_option("--meta", overlap_meta, "probe meta CSV (enables same-ISP split)");
  add_common_flags(overlap_cmd, overlap_args);
  add_config_flags(overlap_cmd, overlap_ov);

  // select
  CommonArgs select_args;
  ConfigOverrides select_ov;
  std::string select_anomalies, select_meta, select_method = "greedy";
  std::string sweep_c, sweep_delta;
  auto* select_cmd = app.add_subcommand("select", "representative probe selection");
  select_cmd->add_option("--anomalies", select_anomalies, "anomalies CSV")->required();
  select_cmd->add_option("--meta", select_meta, "probe meta CSV");
  select_cmd->add_option("--method", select_method, "greedy|random|impact|all")
      ->check(CLI::IsMember({"greedy", "random", "impact", "all"}));
  select_cmd->add_option("--sweep-c", sweep_c, "coverage sweep lo:hi:step");
  select_cmd->add_option("--sweep-delta", sweep_delta, "delta_iou sweep lo:hi:step");
  add_common_flags(select_cmd, select_args);
  add_config_flags(select_cmd, select_ov);

  // eval
  CommonArgs eval_args;
  ConfigOverrides eval_ov;
  std::string eval_samples, eval_meta, eval_t = "7,14,21,28,35,42,49,56";
  auto* eval_cmd = app.add_subcommand("eval", "time-split predictive evaluation");
  eval_cmd->add_option("--samples", eval_samples, "samples CSV")->required();
  eval_cmd->add_option("--meta", eval_meta, "probe meta CSV")->required();
  eval_cmd->add_option("--T", eval_t, "comma-separated selection window lengths (days)");
  add_common_flags(eval_cmd, eval_args);
  add_config_flags(eval_cmd, eval_ov);

  // retention
  CommonArgs retention_args;
  ConfigOverrides retention_ov;
  std::string retention_samples, retention_meta, retention_window = "all";
  auto* retention_cmd = app.add_subcommand("retention", "geographic retention analysis");
  retention_cmd->add_option("--samples", retention_samples, "samples CSV")->required();
  retention_cmd->add_option("--meta", retention_meta, "probe meta CSV")->required();
  retention_cmd->add_option("--window", retention_window,
                            "daily|weekly|monthly|bimonthly|quarterly|all");
  add_common_flags(retention_cmd, retention_args);
  add_config_flags(retention_cmd, retention_ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // CLI/flag problems are invalid input
  }

  try {
    if (synth_cmd->parsed()) return cmd_synth(synth_args, spec_path);
    if (detect_cmd->parsed())
      return cmd_detect(detect_args, detect_ov, detect_samples, detect_meta);
    if (overlap_cmd->parsed())
      return cmd_overlap(overlap_args, overlap_ov, overlap_anomalies, overlap_meta);
    if (select_cmd->parsed())
      return cmd_select(select_args, select_ov, select_anomalies, select_meta, select_method,
                        sweep_c, sweep_delta);
    if (eval_cmd->parsed()) return cmd_eval(eval_args, eval_ov, eval_samples, eval_meta, eval_t);
    if (retention_cmd->parsed())
      return cmd_retention(retention_args, retention_ov, retention_samples, retention_meta,
                           retention_window);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.kind() == ErrorKind::Config || e.kind() == ErrorKind::Input) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
