#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "latsel/types.hpp"

namespace latsel {

// A connected set of same-destination anomalies treated as one unique
// network event. group_impact is the largest member impact (members are
// near-duplicate observations of the same event; summing would double
// count) and group_log_impact = log(1 + group_impact).
struct AnomalyGroup {
  GroupId group_id = 0;
  std::string destination;
  std::vector<AnomalyId> members;  // ascending
  std::set<ProbeId> probes;
  double group_impact = 0.0;
  double group_log_impact = 0.0;
  Timestamp earliest_start = 0;
};

// Connected components, per destination, of the graph with an edge between
// two anomalies when their interval IoU >= delta_iou. Every anomaly lands
// in exactly one group. Groups are ordered (and numbered from 1) by
// (earliest member start, destination, smallest member id), which makes
// the assignment stable under input reordering.
std::vector<AnomalyGroup> group_anomalies(const std::vector<Anomaly>& anomalies,
                                          double delta_iou);

using Incidence = std::map<ProbeId, std::set<GroupId>>;
using GroupWeights = std::map<GroupId, double>;

// probe -> every group containing at least one of the probe's anomalies.
// Probes present in `probes` but observing nothing map to an empty set.
Incidence probe_group_incidence(const std::vector<AnomalyGroup>& groups,
                                const std::vector<ProbeId>& probes = {});

// group_id -> group_log_impact (or raw group_impact when use_log is false).
GroupWeights group_weights(const std::vector<AnomalyGroup>& groups, bool use_log = true);

}  // namespace latsel
