#include <doctest.h>

#include <cmath>

#include "latsel/error.hpp"
#include "latsel/pelt.hpp"
#include "latsel/rng.hpp"
#include "oracles.hpp"

using namespace latsel;

namespace {

MinRttSeries make_series(Timestamp start, std::size_t bins, int bin_minutes = 15) {
  MinRttSeries s;
  s.probe = "p1";
  s.destination = "Chicago";
  s.isp_segment = "NetA";
  s.bin_minutes = bin_minutes;
  for (std::size_t i = 0; i < bins; ++i)
    s.bins.push_back(MinRttBin{start + static_cast<Timestamp>(i) * bin_minutes * 60, 10.0});
  return s;
}

double recompute_objective(const std::vector<double>& xs, const Segmentation& seg,
                           double penalty) {
  double total = 0.0;
  for (const auto& s : seg.segments) {
    double mean = 0.0;
    for (std::size_t i = s.start_idx; i < s.end_idx; ++i) mean += xs[i];
    mean /= static_cast<double>(s.end_idx - s.start_idx);
    for (std::size_t i = s.start_idx; i < s.end_idx; ++i)
      total += (xs[i] - mean) * (xs[i] - mean);
  }
  return total + penalty * (static_cast<double>(seg.segments.size()) - 1.0);
}

}  // namespace

TEST_SUITE("pelt") {

TEST_CASE("a constant series never splits") {
  const auto seg = pelt_segment({5, 5, 5, 5}, 0.01);
  REQUIRE(seg.breakpoints.size() == 1);
  CHECK(seg.breakpoints[0] == 4);
  CHECK(seg.segments[0].mean == 5.0);
  CHECK(seg.segments[0].max == 5.0);
}

TEST_CASE("a clean level shift splits exactly at the shift") {
  const std::vector<double> xs{0, 0, 0, 10, 10, 10};
  const auto seg = pelt_segment(xs, 0.001);
  REQUIRE(seg.breakpoints.size() == 2);
  CHECK(seg.breakpoints[0] == 3);
  CHECK(seg.breakpoints[1] == 6);
  CHECK(seg.objective == oracle::segmentation_dp(xs, 0.001).objective);
}

TEST_CASE("a dominating penalty keeps one segment") {
  const auto seg = pelt_segment({0, 10, 0, 10}, 1e6);
  CHECK(seg.breakpoints == std::vector<std::size_t>{4});
}

TEST_CASE("invalid input is rejected") {
  CHECK_THROWS_AS(pelt_segment({}, 0.1), Error);
  CHECK_THROWS_AS(pelt_segment({1.0, std::nan("")}, 0.1), Error);
  CHECK_THROWS_AS(pelt_segment({1.0}, -0.5), Error);
}

TEST_CASE("objective matches the exhaustive dynamic program exactly") {
  Rng rng(31);
  const double penalties[] = {0.001, 0.1, 10.0};
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.uniform_int(30);
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.uniform(0.0, 50.0);
    const double penalty = penalties[trial % 3];
    const auto seg = pelt_segment(xs, penalty);
    const auto ref = oracle::segmentation_dp(xs, penalty);
    CHECK(seg.objective == ref.objective);  // bit-exact: same cost expressions
    // The reported objective is also consistent with its own segments.
    CHECK(recompute_objective(xs, seg, penalty) ==
          doctest::Approx(seg.objective).epsilon(1e-12));
  }
}

TEST_CASE("dynamic-program oracle agrees with full enumeration on tiny inputs") {
  Rng rng(32);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + rng.uniform_int(10);
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.uniform(0.0, 50.0);
    const double penalty = trial % 2 ? 0.05 : 1.0;
    CHECK(oracle::segmentation_dp(xs, penalty).objective ==
          doctest::Approx(oracle::segmentation_enumerate(xs, penalty)).epsilon(1e-9));
  }
}

TEST_CASE("raising the penalty never adds breakpoints") {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + rng.uniform_int(60);
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.uniform(0.0, 20.0);
    std::size_t last = xs.size() + 1;
    for (const double penalty : {0.001, 0.01, 0.1, 1.0, 10.0, 100.0}) {
      const std::size_t count = pelt_segment(xs, penalty).breakpoints.size();
      CHECK(count <= last);
      last = count;
    }
  }
}

TEST_CASE("segment statistics equal recomputation from the values") {
  Rng rng(34);
  std::vector<double> xs(40);
  for (auto& x : xs) x = rng.uniform(0.0, 30.0);
  const auto seg = pelt_segment(xs, 0.5);
  std::size_t expected_start = 0;
  for (const auto& s : seg.segments) {
    CHECK(s.start_idx == expected_start);
    double mean = 0.0, mx = xs[s.start_idx];
    for (std::size_t i = s.start_idx; i < s.end_idx; ++i) {
      mean += xs[i];
      mx = std::max(mx, xs[i]);
    }
    mean /= static_cast<double>(s.end_idx - s.start_idx);
    CHECK(s.mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(s.max == mx);
    expected_start = s.end_idx;
  }
  CHECK(expected_start == xs.size());  // segments partition [0, n)
}

TEST_CASE("cost depends only on segment membership, not order within") {
  Rng rng(35);
  std::vector<double> xs(50);
  for (auto& x : xs) x = rng.uniform(0.0, 30.0);
  const auto seg = pelt_segment(xs, 2.0);
  // Shuffle values inside the widest segment and recompute the objective.
  const auto widest = *std::max_element(
      seg.segments.begin(), seg.segments.end(), [](const Segment& a, const Segment& b) {
        return a.end_idx - a.start_idx < b.end_idx - b.start_idx;
      });
  std::vector<double> permuted = xs;
  std::vector<double> inside(permuted.begin() + widest.start_idx,
                             permuted.begin() + widest.end_idx);
  rng.shuffle(inside);
  std::copy(inside.begin(), inside.end(), permuted.begin() + widest.start_idx);
  CHECK(recompute_objective(permuted, seg, 2.0) ==
        doctest::Approx(recompute_objective(xs, seg, 2.0)).epsilon(1e-9));
}

TEST_CASE("window_series produces overlapping sliding windows") {
  // 96 hours of 15-minute bins, 48-hour windows stepped by 24 hours.
  const MinRttSeries series = make_series(0, 96 * 4);
  const auto windows = window_series(series, 48, 24);
  REQUIRE(windows.size() == 4);
  CHECK(windows[0].start == 0);
  CHECK(windows[1].start == 24 * 3600);
  CHECK(windows[2].start == 48 * 3600);
  CHECK(windows[3].start == 72 * 3600);
  CHECK(windows[0].bin_count == 192);
  CHECK(windows[3].bin_count == 96);  // final window truncated at the span end
  CHECK(windows[3].end == 96 * 3600);
}

TEST_CASE("window_series degenerate cases") {
  CHECK(window_series(make_series(0, 0), 48, 24).empty());
  CHECK(window_series(make_series(0, 1), 48, 24).empty());  // one bin: nothing to segment
  const auto one = window_series(make_series(0, 24 * 4), 48, 24);  // span <= window
  REQUIRE(one.size() == 1);
  CHECK(one[0].bin_count == 96);
  CHECK_THROWS_AS(window_series(make_series(0, 8), 24, 48), Error);
}

TEST_CASE("every bin is covered by at least one window") {
  Rng rng(36);
  MinRttSeries series = make_series(0, 0);
  Timestamp t = 1648771200;
  for (int i = 0; i < 400; ++i) {
    t += 900 * (1 + static_cast<Timestamp>(rng.uniform_int(5)));  // gaps allowed
    series.bins.push_back(MinRttBin{t, 10.0});
  }
  const auto windows = window_series(series, 48, 24);
  for (std::size_t b = 0; b < series.bins.size(); ++b) {
    bool covered = false;
    for (const auto& w : windows)
      if (b >= w.first_bin && b < w.first_bin + w.bin_count) covered = true;
    CHECK(covered);
  }
}

}  // TEST_SUITE
