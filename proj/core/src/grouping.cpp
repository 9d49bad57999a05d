#include "latsel/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "latsel/error.hpp"
#include "latsel/overlap.hpp"

namespace latsel {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<AnomalyGroup> group_anomalies(const std::vector<Anomaly>& anomalies,
                                          double delta_iou) {
  if (!(delta_iou > 0.0 && delta_iou <= 1.0))
    throw config_error("group_anomalies: delta_iou must lie in (0, 1]");

  // Canonical node order so components are independent of input order.
  std::vector<std::size_t> order(anomalies.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Anomaly& x = anomalies[a];
    const Anomaly& y = anomalies[b];
    if (x.destination != y.destination) return x.destination < y.destination;
    if (x.start != y.start) return x.start < y.start;
    return x.id < y.id;
  });

  UnionFind uf(anomalies.size());
  // Same-destination anomalies are contiguous in `order` and start-sorted;
  // sweep for IoU edges.
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Anomaly& a = anomalies[order[i]];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Anomaly& b = anomalies[order[j]];
      if (b.destination != a.destination || b.start >= a.end) break;
      if (interval_iou(a.start, a.end, b.start, b.end) >= delta_iou)
        uf.unite(order[i], order[j]);
    }
  }

  std::map<std::size_t, AnomalyGroup> by_root;
  for (std::size_t i = 0; i < anomalies.size(); ++i) {
    const Anomaly& a = anomalies[i];
    AnomalyGroup& g = by_root[uf.find(i)];
    if (g.members.empty()) {
      g.destination = a.destination;
      g.earliest_start = a.start;
    } else {
      g.earliest_start = std::min(g.earliest_start, a.start);
    }
    g.members.push_back(a.id);
    g.probes.insert(a.probe);
    g.group_impact = std::max(g.group_impact, a.impact_ms_h);
  }

  std::vector<AnomalyGroup> groups;
  groups.reserve(by_root.size());
  for (auto& [root, g] : by_root) {
    std::sort(g.members.begin(), g.members.end());
    g.group_log_impact = std::log1p(g.group_impact);
    groups.push_back(std::move(g));
  }
  std::sort(groups.begin(), groups.end(), [](const AnomalyGroup& x, const AnomalyGroup& y) {
    if (x.earliest_start != y.earliest_start) return x.earliest_start < y.earliest_start;
    if (x.destination != y.destination) return x.destination < y.destination;
    return x.members.front() < y.members.front();
  });
  GroupId next = 1;
  for (auto& g : groups) g.group_id = next++;
  return groups;
}

Incidence probe_group_incidence(const std::vector<AnomalyGroup>& groups,
                                const std::vector<ProbeId>& probes) {
  Incidence incidence;
  for (const auto& p : probes) incidence[p];  // ensure empty sets exist
  for (const auto& g : groups)
    for (const auto& p : g.probes) incidence[p].insert(g.group_id);
  return incidence;
}

GroupWeights group_weights(const std::vector<AnomalyGroup>& groups, bool use_log) {
  GroupWeights weights;
  for (const auto& g : groups)
    weights[g.group_id] = use_log ? g.group_log_impact : g.group_impact;
  return weights;
}

}  // namespace latsel
