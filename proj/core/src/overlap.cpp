#include "latsel/overlap.hpp"

#include <algorithm>
#include <cmath>

#include "latsel/error.hpp"
#include "latsel/parallel.hpp"
#include "latsel/rng.hpp"

namespace latsel {

double interval_iou(Timestamp s1, Timestamp e1, Timestamp s2, Timestamp e2) {
  if (s1 >= e1 || s2 >= e2) throw input_error("interval_iou: degenerate interval");
  const Timestamp inter = std::min(e1, e2) - std::max(s1, s2);
  const Timestamp hull = std::max(e1, e2) - std::min(s1, s2);
  if (inter <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(hull);
}

double amplitude_similarity(double amp_a, double amp_b) {
  const double lo = std::min(amp_a, amp_b);
  const double hi = std::max(amp_a, amp_b);
  if (hi == 0.0) return 1.0;  // two zero-amplitude anomalies are identical
  return lo / hi;
}

namespace {

// Sweep over start-sorted anomalies of one destination, invoking fn on
// every unordered pair with interval intersection > 0.
template <typename Fn>
void for_each_intersecting_pair(std::vector<const Anomaly*>& group, Fn&& fn) {
  std::sort(group.begin(), group.end(), [](const Anomaly* a, const Anomaly* b) {
    if (a->start != b->start) return a->start < b->start;
    return a->id < b->id;
  });
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (std::size_t j = i + 1; j < group.size(); ++j) {
      if (group[j]->start >= group[i]->end) break;  // no later start can intersect
      fn(*group[i], *group[j]);
    }
  }
}

std::map<std::string, std::vector<const Anomaly*>> by_destination(
    const std::vector<Anomaly>& anomalies) {
  std::map<std::string, std::vector<const Anomaly*>> groups;
  for (const auto& a : anomalies) groups[a.destination].push_back(&a);
  return groups;
}

double median_of(std::vector<double>& v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<OverlapRecord> pairwise_overlaps(const std::vector<Anomaly>& anomalies,
                                             const std::map<ProbeId, ProbeMeta>* meta) {
  auto isp_of = [&](const ProbeId& p) -> const std::string* {
    if (!meta) return nullptr;
    const auto it = meta->find(p);
    return it == meta->end() ? nullptr : &it->second.isp;
  };

  std::vector<OverlapRecord> records;
  auto groups = by_destination(anomalies);
  for (auto& [dest, group] : groups) {
    for_each_intersecting_pair(group, [&](const Anomaly& a, const Anomaly& b) {
      if (a.probe == b.probe) return;
      OverlapRecord r;
      const bool a_first = a.id <= b.id;
      const Anomaly& first = a_first ? a : b;
      const Anomaly& second = a_first ? b : a;
      r.anomaly_a = first.id;
      r.anomaly_b = second.id;
      r.probe_a = first.probe;
      r.probe_b = second.probe;
      r.destination = dest;
      r.iou = interval_iou(a.start, a.end, b.start, b.end);
      r.amplitude_similarity = amplitude_similarity(a.amplitude_ms, b.amplitude_ms);
      const std::string* isp_a = isp_of(first.probe);
      const std::string* isp_b = isp_of(second.probe);
      r.same_isp = isp_a && isp_b && *isp_a == *isp_b;
      records.push_back(std::move(r));
    });
  }
  std::sort(records.begin(), records.end(), [](const OverlapRecord& x, const OverlapRecord& y) {
    if (x.destination != y.destination) return x.destination < y.destination;
    if (x.anomaly_a != y.anomaly_a) return x.anomaly_a < y.anomaly_a;
    return x.anomaly_b < y.anomaly_b;
  });
  return records;
}

std::vector<IouBinSummary> stratified_summary(const std::vector<OverlapRecord>& records,
                                              const std::vector<Anomaly>& anomalies,
                                              double bin_width) {
  if (!(bin_width > 0.0 && bin_width <= 1.0))
    throw config_error("stratified_summary: bin_width must lie in (0, 1]");
  const double k_real = 1.0 / bin_width;
  const int k = static_cast<int>(std::lround(k_real));
  if (std::abs(k_real - static_cast<double>(k)) > 1e-9)
    throw config_error("stratified_summary: bin_width must divide 1 evenly");

  std::map<AnomalyId, double> impact;
  for (const auto& a : anomalies) impact[a.id] = a.impact_ms_h;

  struct Acc {
    std::vector<double> sims, impacts, same_sims, diff_sims;
  };
  std::vector<Acc> accs(static_cast<std::size_t>(k));
  for (const auto& r : records) {
    int bin = static_cast<int>(std::floor(r.iou / bin_width));
    if (bin >= k) bin = k - 1;  // IoU == 1 belongs to the last bin
    Acc& acc = accs[static_cast<std::size_t>(bin)];
    acc.sims.push_back(r.amplitude_similarity);
    const auto ia = impact.find(r.anomaly_a);
    const auto ib = impact.find(r.anomaly_b);
    if (ia != impact.end()) acc.impacts.push_back(ia->second);
    if (ib != impact.end()) acc.impacts.push_back(ib->second);
    (r.same_isp ? acc.same_sims : acc.diff_sims).push_back(r.amplitude_similarity);
  }

  std::vector<IouBinSummary> out;
  for (int bin = 0; bin < k; ++bin) {
    Acc& acc = accs[static_cast<std::size_t>(bin)];
    if (acc.sims.empty()) continue;
    IouBinSummary s;
    s.lo = bin * bin_width;
    s.hi = (bin + 1) * bin_width;
    s.count = acc.sims.size();
    s.same_isp_count = acc.same_sims.size();
    s.diff_isp_count = acc.diff_sims.size();
    s.median_similarity = median_of(acc.sims);
    s.median_impact = median_of(acc.impacts);
    s.same_isp_median_similarity = median_of(acc.same_sims);
    s.diff_isp_median_similarity = median_of(acc.diff_sims);
    out.push_back(s);
  }
  return out;
}

std::optional<double> iou_similarity_spearman(const std::vector<OverlapRecord>& records) {
  const std::size_t n = records.size();
  if (n < 2) return std::nullopt;

  auto ranks = [n](std::vector<double> values) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
      const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
      for (std::size_t t = i; t <= j; ++t) r[order[t]] = avg;  // average rank for ties
      i = j + 1;
    }
    return r;
  };

  std::vector<double> ious(n), sims(n);
  for (std::size_t i = 0; i < n; ++i) {
    ious[i] = records[i].iou;
    sims[i] = records[i].amplitude_similarity;
  }
  const auto rx = ranks(std::move(ious));
  const auto ry = ranks(std::move(sims));

  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

void shuffle_within_day(Anomaly& a, Rng& rng) {
  const Timestamp duration = a.end - a.start;
  const Timestamp day = utc_day_start(a.start);
  a.start = day + static_cast<Timestamp>(rng.uniform_int(kSecondsPerDay));
  a.end = a.start + duration;
  finalize_anomaly(a);
}

namespace {

// Fraction of intersecting same-destination, distinct-probe pairs with
// IoU >= threshold. Returns {fraction, pair_count}.
std::pair<double, std::size_t> high_iou_fraction(const std::vector<Anomaly>& anomalies,
                                                 double threshold) {
  std::size_t pairs = 0;
  std::size_t high = 0;
  auto groups = by_destination(anomalies);
  for (auto& [dest, group] : groups) {
    for_each_intersecting_pair(group, [&](const Anomaly& a, const Anomaly& b) {
      if (a.probe == b.probe) return;
      ++pairs;
      if (interval_iou(a.start, a.end, b.start, b.end) >= threshold) ++high;
    });
  }
  const double frac = pairs == 0 ? 0.0 : static_cast<double>(high) / static_cast<double>(pairs);
  return {frac, pairs};
}

}  // namespace

RandomizationReport randomization_test(const std::vector<Anomaly>& anomalies, int reps,
                                       double threshold, std::uint64_t seed) {
  if (reps < 1) throw config_error("randomization_test: reps must be >= 1");

  RandomizationReport report;
  report.null_dist.reps = reps;
  report.null_dist.threshold = threshold;
  report.null_dist.high_iou_fractions.resize(static_cast<std::size_t>(reps));

  const auto [observed, pairs] = high_iou_fraction(anomalies, threshold);
  report.observed_fraction = observed;
  report.observed_pairs = pairs;

  // Shuffle order must not depend on input order: draw per anomaly from a
  // per-rep stream in ascending id order.
  std::vector<const Anomaly*> ordered;
  ordered.reserve(anomalies.size());
  for (const auto& a : anomalies) ordered.push_back(&a);
  std::sort(ordered.begin(), ordered.end(),
            [](const Anomaly* a, const Anomaly* b) { return a->id < b->id; });

  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
    Rng rng = Rng::derive(seed, 0x5D1F /*randomization*/, rep);
    std::vector<Anomaly> shuffled;
    shuffled.reserve(ordered.size());
    for (const Anomaly* a : ordered) {
      Anomaly copy = *a;
      shuffle_within_day(copy, rng);
      shuffled.push_back(std::move(copy));
    }
    report.null_dist.high_iou_fractions[rep] = high_iou_fraction(shuffled, threshold).first;
  });

  const auto& null = report.null_dist.high_iou_fractions;
  double below = 0.0;
  double mean = 0.0;
  for (const double f : null) {
    if (f < observed) below += 1.0;
    else if (f == observed) below += 0.5;
    mean += f;
  }
  mean /= static_cast<double>(reps);
  double ss = 0.0;
  for (const double f : null) ss += (f - mean) * (f - mean);
  report.percentile = below / static_cast<double>(reps);
  report.null_mean = mean;
  report.null_stdev = std::sqrt(ss / static_cast<double>(reps));
  return report;
}

}  // namespace latsel
