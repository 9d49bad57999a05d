#pragma once

// Brute-force reference implementations used only by tests. These are
// deliberately independent of the library code paths they check: the
// segmentation oracle is a full O(n^2) dynamic program with no pruning,
// coverage optima come from exhaustive subset enumeration, interval IoU is
// counted over unit cells, and connected components use plain BFS.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <vector>

namespace oracle {

struct DpResult {
  double objective = 0.0;
  std::vector<std::size_t> breakpoints;  // exclusive segment ends, last == n
};

// Exhaustive penalized least-squares segmentation: full dynamic program
// over every admissible last-segment start, no candidate pruning.
inline DpResult segmentation_dp(const std::vector<double>& xs, double penalty) {
  const std::size_t n = xs.size();
  std::vector<double> p1(n + 1, 0.0), p2(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    p1[i + 1] = p1[i] + xs[i];
    p2[i + 1] = p2[i] + xs[i] * xs[i];
  }
  auto cost = [&](std::size_t s, std::size_t t) {
    const double len = static_cast<double>(t - s);
    const double sum = p1[t] - p1[s];
    return (p2[t] - p2[s]) - (sum * sum) / len;
  };

  std::vector<double> best(n + 1, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> prev(n + 1, 0);
  best[0] = -penalty;
  for (std::size_t t = 1; t <= n; ++t) {
    for (std::size_t s = 0; s < t; ++s) {
      const double total = best[s] + cost(s, t) + penalty;
      if (total < best[t]) {
        best[t] = total;
        prev[t] = s;
      }
    }
  }

  DpResult res;
  res.objective = best[n];
  for (std::size_t t = n; t > 0; t = prev[t]) res.breakpoints.push_back(t);
  std::reverse(res.breakpoints.begin(), res.breakpoints.end());
  return res;
}

// Enumeration over all 2^(n-1) segmentations; sanity check for the DP
// itself on tiny inputs.
inline double segmentation_enumerate(const std::vector<double>& xs, double penalty) {
  const std::size_t n = xs.size();
  auto seg_cost = [&](std::size_t s, std::size_t t) {
    double mean = 0.0;
    for (std::size_t i = s; i < t; ++i) mean += xs[i];
    mean /= static_cast<double>(t - s);
    double c = 0.0;
    for (std::size_t i = s; i < t; ++i) c += (xs[i] - mean) * (xs[i] - mean);
    return c;
  };

  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t masks = n >= 1 ? (1ULL << (n - 1)) : 1;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    double total = 0.0;
    int segments = 0;
    std::size_t start = 0;
    for (std::size_t cut = 1; cut <= n; ++cut) {
      const bool is_end = cut == n || (mask >> (cut - 1)) & 1ULL;
      if (!is_end) continue;
      total += seg_cost(start, cut);
      ++segments;
      start = cut;
    }
    total += penalty * (segments - 1);
    best = std::min(best, total);
  }
  return best;
}

// Exhaustive maximum coverage: best[k] = the largest total weight of the
// union of any k sets. Sets are given as group-index vectors.
inline std::vector<double> best_coverage_per_budget(
    const std::vector<std::vector<int>>& sets, const std::vector<double>& weights) {
  const std::size_t n = sets.size();
  std::vector<double> best(n + 1, 0.0);
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::set<int> covered;
    int k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1ULL)) continue;
      ++k;
      covered.insert(sets[i].begin(), sets[i].end());
    }
    double w = 0.0;
    for (const int g : covered) w += weights[static_cast<std::size_t>(g)];
    best[static_cast<std::size_t>(k)] = std::max(best[static_cast<std::size_t>(k)], w);
  }
  // A budget of k admits any subset of size <= k.
  for (std::size_t k = 1; k <= n; ++k) best[k] = std::max(best[k], best[k - 1]);
  return best;
}

// Smallest subset whose union weight reaches `target`; returns sets.size()+1
// when unreachable.
inline std::size_t min_sets_for_target(const std::vector<std::vector<int>>& sets,
                                       const std::vector<double>& weights, double target) {
  const std::size_t n = sets.size();
  std::size_t best = n + 1;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::set<int> covered;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1ULL)) continue;
      ++k;
      covered.insert(sets[i].begin(), sets[i].end());
    }
    if (k >= best) continue;
    double w = 0.0;
    for (const int g : covered) w += weights[static_cast<std::size_t>(g)];
    if (w >= target) best = k;
  }
  return best;
}

// IoU of integer-endpoint intervals by counting unit cells.
inline double interval_iou_cells(int s1, int e1, int s2, int e2) {
  int inter = 0, hull = 0;
  const int lo = std::min(s1, s2);
  const int hi = std::max(e1, e2);
  for (int cell = lo; cell < hi; ++cell) {
    const bool in1 = cell >= s1 && cell < e1;
    const bool in2 = cell >= s2 && cell < e2;
    if (in1 && in2) ++inter;
    ++hull;  // every cell in [min(s), max(e)) is in the hull
  }
  if (inter == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(hull);
}

// Connected components over n nodes by BFS.
inline std::vector<std::set<std::size_t>> bfs_components(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::set<std::size_t>> components;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::set<std::size_t> comp;
    std::queue<std::size_t> q;
    q.push(start);
    seen[start] = true;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      comp.insert(v);
      for (const std::size_t w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
      }
    }
    components.push_back(std::move(comp));
  }
  return components;
}

}  // namespace oracle
