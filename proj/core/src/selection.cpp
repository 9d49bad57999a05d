#include "latsel/selection.hpp"

#include <algorithm>
#include <cmath>

#include "latsel/error.hpp"
#include "latsel/rng.hpp"

namespace latsel {

std::string selection_method_name(SelectionMethod m) {
  switch (m) {
    case SelectionMethod::Greedy: return "greedy";
    case SelectionMethod::Random: return "random";
    case SelectionMethod::DescendingImpact: return "descending_impact";
  }
  return "unknown";
}

namespace {

// Sum over a set of group ids in ascending order. Used for both the total
// and the covered weight so that full coverage compares exactly equal.
double weight_of(const std::set<GroupId>& groups, const GroupWeights& weights) {
  double sum = 0.0;
  for (const GroupId g : groups) {
    const auto it = weights.find(g);
    if (it != weights.end()) sum += it->second;
  }
  return sum;
}

double total_weight(const GroupWeights& weights) {
  double sum = 0.0;
  for (const auto& [g, w] : weights) sum += w;
  return sum;
}

void validate_selection_inputs(const Incidence& incidence, const GroupWeights& weights,
                               double coverage_c) {
  if (incidence.empty()) throw input_error("probe selection: empty incidence");
  if (!(coverage_c > 0.0 && coverage_c <= 1.0))
    throw config_error("probe selection: coverage_c must lie in (0, 1]");
  for (const auto& [g, w] : weights)
    if (w < 0.0) throw input_error("probe selection: negative group weight");
}

// Shared driver: consumes probes in the order produced by next_probe()
// until covered weight >= c * T (or probes run out) and fills the result.
template <typename NextProbe>
SelectionResult run_selection(SelectionMethod method, const Incidence& incidence,
                              const GroupWeights& weights, double coverage_c,
                              NextProbe&& next_probe) {
  SelectionResult res;
  res.method = method;
  const double total = total_weight(weights);
  if (total <= 0.0) {
    res.coverage_fraction_achieved = 1.0;
    return res;
  }
  const double target = coverage_c * total;

  double covered_weight = 0.0;
  while (covered_weight < target) {
    const ProbeId* probe = next_probe(res.covered_groups, covered_weight);
    if (probe == nullptr) {
      res.coverage_met = false;
      break;
    }
    const auto& groups = incidence.at(*probe);
    const double before = covered_weight;
    res.covered_groups.insert(groups.begin(), groups.end());
    covered_weight = weight_of(res.covered_groups, weights);

    res.selected.push_back(*probe);
    res.per_step.push_back(
        SelectionStep{*probe, covered_weight - before, covered_weight / total});
  }
  res.coverage_fraction_achieved = covered_weight / total;
  res.unique_anomaly_count = res.covered_groups.size();
  return res;
}

}  // namespace

SelectionResult greedy_select(const Incidence& incidence, const GroupWeights& weights,
                              double coverage_c) {
  validate_selection_inputs(incidence, weights, coverage_c);

  // Ascending ProbeId order; the strict '>' below then realizes the
  // smallest-id tie-break on equal marginal gains.
  std::vector<ProbeId> remaining;
  remaining.reserve(incidence.size());
  for (const auto& [p, groups] : incidence) remaining.push_back(p);

  ProbeId current;
  auto next = [&](const std::set<GroupId>& covered, double) -> const ProbeId* {
    std::size_t best_idx = remaining.size();
    double best_gain = -1.0;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      double gain = 0.0;
      for (const GroupId g : incidence.at(remaining[i])) {
        if (covered.count(g)) continue;
        const auto it = weights.find(g);
        if (it != weights.end()) gain += it->second;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_idx = i;
      }
    }
    if (best_idx == remaining.size()) return nullptr;
    current = remaining[best_idx];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_idx));
    return &current;
  };
  return run_selection(SelectionMethod::Greedy, incidence, weights, coverage_c, next);
}

RandomSelectionSummary random_select(const Incidence& incidence, const GroupWeights& weights,
                                     double coverage_c, int reps, std::uint64_t seed) {
  validate_selection_inputs(incidence, weights, coverage_c);
  if (reps < 1) throw config_error("random_select: reps must be >= 1");

  std::vector<ProbeId> all_probes;
  for (const auto& [p, groups] : incidence) all_probes.push_back(p);

  RandomSelectionSummary summary;
  summary.runs.reserve(static_cast<std::size_t>(reps));
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng = Rng::derive(seed, 0xA11D /*random baseline*/, static_cast<std::uint64_t>(rep));
    std::vector<ProbeId> order = all_probes;
    rng.shuffle(order);
    std::size_t cursor = 0;
    auto next = [&](const std::set<GroupId>&, double) -> const ProbeId* {
      if (cursor >= order.size()) return nullptr;
      return &order[cursor++];
    };
    SelectionResult r =
        run_selection(SelectionMethod::Random, incidence, weights, coverage_c, next);
    summary.runs.push_back(std::move(r));
  }

  const double n = static_cast<double>(summary.runs.size());
  double mp = 0, mu = 0;
  for (const auto& r : summary.runs) {
    mp += static_cast<double>(r.selected.size());
    mu += static_cast<double>(r.unique_anomaly_count);
  }
  mp /= n;
  mu /= n;
  double sp = 0, su = 0;
  for (const auto& r : summary.runs) {
    sp += (static_cast<double>(r.selected.size()) - mp) * (static_cast<double>(r.selected.size()) - mp);
    su += (static_cast<double>(r.unique_anomaly_count) - mu) * (static_cast<double>(r.unique_anomaly_count) - mu);
  }
  summary.mean_probe_count = mp;
  summary.stdev_probe_count = std::sqrt(sp / n);
  summary.mean_unique_count = mu;
  summary.stdev_unique_count = std::sqrt(su / n);
  return summary;
}

SelectionResult descending_impact_select(const Incidence& incidence,
                                         const GroupWeights& weights, double coverage_c) {
  validate_selection_inputs(incidence, weights, coverage_c);

  // Overlap-blind per-probe score: weight of the probe's own group set.
  std::vector<std::pair<double, ProbeId>> ranked;
  for (const auto& [p, groups] : incidence) ranked.emplace_back(weight_of(groups, weights), p);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  std::size_t cursor = 0;
  auto next = [&](const std::set<GroupId>&, double) -> const ProbeId* {
    if (cursor >= ranked.size()) return nullptr;
    return &ranked[cursor++].second;
  };
  return run_selection(SelectionMethod::DescendingImpact, incidence, weights, coverage_c, next);
}

std::vector<SweepRow> sweep(
    const std::vector<double>& c_values, const std::vector<double>& delta_values,
    const std::function<std::pair<Incidence, GroupWeights>(double)>& regroup) {
  if (c_values.empty() || delta_values.empty())
    throw config_error("sweep: parameter lists must be non-empty");

  std::vector<SweepRow> rows;
  for (const double delta : delta_values) {
    const auto [incidence, weights] = regroup(delta);
    for (const double c : c_values) {
      const SelectionResult r = greedy_select(incidence, weights, c);
      SweepRow row;
      row.coverage_c = c;
      row.delta_iou = delta;
      row.probe_count = r.selected.size();
      row.coverage_achieved = r.coverage_fraction_achieved;
      row.unique_anomaly_count = r.unique_anomaly_count;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace latsel
