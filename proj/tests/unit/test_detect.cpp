#include <doctest.h>

#include <cmath>

#include "latsel/detect.hpp"
#include "latsel/error.hpp"
#include "latsel/overlap.hpp"
#include "latsel/rng.hpp"

using namespace latsel;

namespace {

Segment seg(std::size_t s, std::size_t e, double mean, double max) {
  return Segment{s, e, mean, max};
}

Segmentation make_segmentation(std::vector<Segment> segments) {
  Segmentation out;
  for (const auto& s : segments) out.breakpoints.push_back(s.end_idx);
  out.segments = std::move(segments);
  return out;
}

MinRttSeries flat_series(std::size_t bins, double value, Timestamp start = 0) {
  MinRttSeries s;
  s.probe = "p1";
  s.destination = "Chicago";
  s.isp_segment = "NetA";
  s.bin_minutes = 15;
  for (std::size_t i = 0; i < bins; ++i)
    s.bins.push_back(MinRttBin{start + static_cast<Timestamp>(i) * 900, value});
  return s;
}

SeriesWindow whole_window(const MinRttSeries& s) {
  SeriesWindow w;
  w.start = s.bins.front().start;
  w.end = s.bins.back().start + 900;
  w.first_bin = 0;
  w.bin_count = s.bins.size();
  return w;
}

Anomaly interval(Timestamp start, Timestamp end, double amplitude = 1.0) {
  Anomaly a;
  a.probe = "p1";
  a.destination = "Chicago";
  a.start = start;
  a.end = end;
  a.amplitude_ms = amplitude;
  a.baseline_ms = 10.0;
  finalize_anomaly(a);
  return a;
}

}  // namespace

TEST_SUITE("detect") {

TEST_CASE("baseline is the center of the busiest 0.1 ms bin") {
  const BaselineStats stats = compute_baseline({5.0, 5.0, 9.0});
  CHECK(stats.baseline == doctest::Approx(5.05));
  const double mean = (5.0 + 5.0 + 9.0) / 3.0;
  const double var =
      ((5 - mean) * (5 - mean) * 2 + (9 - mean) * (9 - mean)) / 3.0;  // population
  CHECK(stats.sigma == doctest::Approx(std::sqrt(var)));
}

TEST_CASE("baseline of an identical series stays within its 0.1 ms bin") {
  const BaselineStats stats = compute_baseline({7.0, 7.0, 7.0});
  CHECK(stats.baseline >= 7.0);
  CHECK(stats.baseline < 7.1);
  CHECK(stats.sigma == 0.0);
  // Clamped into [min, max] so it never exceeds the observed values.
  CHECK(stats.baseline == 7.0);
}

TEST_CASE("bimodal tie resolves to the lower bin") {
  const BaselineStats stats = compute_baseline({5.02, 5.07, 9.01, 9.06});
  CHECK(stats.baseline == doctest::Approx(5.05));
}

TEST_CASE("compute_baseline rejects empty input") {
  CHECK_THROWS_AS(compute_baseline({}), Error);
}

TEST_CASE("threshold jump then memory-rule jump") {
  const Config cfg;
  const BaselineStats stats{10.0, 0.2};
  const auto labels = label_segments(
      make_segmentation({seg(0, 4, 10.0, 10.1), seg(4, 8, 10.6, 10.7), seg(8, 12, 10.6, 10.75)}),
      stats, cfg);
  REQUIRE(labels.size() == 3);
  CHECK(labels[0].kind == SegmentKind::Normal);
  CHECK(labels[1].kind == SegmentKind::Jump);   // +0.6 over previous, above baseline
  CHECK(labels[2].kind == SegmentKind::Jump);   // memory rule: |10.75-10.7| <= 1.5*0.2
}

TEST_CASE("recovery from a dip is not a jump") {
  const Config cfg;
  const BaselineStats stats{10.0, 0.2};
  const auto labels = label_segments(
      make_segmentation({seg(0, 4, 10.0, 10.0), seg(4, 8, 9.0, 9.2), seg(8, 12, 10.0, 10.0)}),
      stats, cfg);
  REQUIRE(labels.size() == 3);
  CHECK(labels[0].kind == SegmentKind::Normal);
  CHECK(labels[1].kind == SegmentKind::Dip);
  CHECK(labels[2].kind == SegmentKind::Normal);
}

TEST_CASE("a single constant segment is normal") {
  const Config cfg;
  const auto labels =
      label_segments(make_segmentation({seg(0, 6, 10.0, 10.0)}), BaselineStats{10.0, 0.0}, cfg);
  REQUIRE(labels.size() == 1);
  CHECK(labels[0].kind == SegmentKind::Normal);
}

TEST_CASE("first segment below baseline is a dip") {
  const Config cfg;
  const auto labels = label_segments(
      make_segmentation({seg(0, 3, 9.0, 9.1), seg(3, 6, 10.0, 10.0)}), BaselineStats{10.0, 0.1},
      cfg);
  CHECK(labels[0].kind == SegmentKind::Dip);
  CHECK(labels[1].kind == SegmentKind::Normal);  // blocked by the preceding dip
}

TEST_CASE("memory rule does not fire without a preceding jump") {
  const Config cfg;
  const auto labels = label_segments(
      make_segmentation({seg(0, 3, 10.0, 10.1), seg(3, 6, 10.2, 10.15)}),
      BaselineStats{10.0, 1.0}, cfg);
  CHECK(labels[1].kind == SegmentKind::Normal);
}

TEST_CASE("one jump run becomes one anomaly with the stated arithmetic") {
  const Config cfg;
  MinRttSeries series = flat_series(8, 15.0);
  const BaselineStats stats{10.0, 0.1};
  const std::vector<SegmentLabel> jump{{SegmentKind::Jump, seg(0, 8, 15.0, 15.0)}};
  const auto anomalies = merge_and_extract(jump, series, whole_window(series), stats, cfg);
  REQUIRE(anomalies.size() == 1);
  CHECK(anomalies[0].start == 0);
  CHECK(anomalies[0].end == 8 * 900);
  CHECK(anomalies[0].amplitude_ms == 5.0);
  CHECK(anomalies[0].duration_h == 2.0);
  CHECK(anomalies[0].impact_ms_h == 10.0);
}

TEST_CASE("no jump segments, no anomalies") {
  const Config cfg;
  MinRttSeries series = flat_series(8, 10.0);
  const BaselineStats stats{10.0, 0.1};
  const std::vector<SegmentLabel> labels{{SegmentKind::Normal, seg(0, 8, 10.0, 10.0)}};
  CHECK(merge_and_extract(labels, series, whole_window(series), stats, cfg).empty());
}

TEST_CASE("jump runs bridged by a single-bin gap merge into one anomaly") {
  const Config cfg;  // merge_gap_bins = 1
  MinRttSeries series = flat_series(5, 12.0);
  series.bins[2].min_rtt = 10.0;  // the gap bin
  const BaselineStats stats{10.0, 0.1};
  const std::vector<SegmentLabel> labels{{SegmentKind::Jump, seg(0, 2, 12.0, 12.0)},
                                         {SegmentKind::Normal, seg(2, 3, 10.0, 10.0)},
                                         {SegmentKind::Jump, seg(3, 5, 12.0, 12.0)}};
  const auto anomalies =
      merge_and_extract(labels, series, whole_window(series), stats, cfg);
  REQUIRE(anomalies.size() == 1);
  CHECK(anomalies[0].start == 0);
  CHECK(anomalies[0].end == 5 * 900);
  CHECK(anomalies[0].amplitude_ms == 2.0);
}

TEST_CASE("gaps wider than merge_gap_bins split the run") {
  const Config cfg;
  MinRttSeries series = flat_series(6, 12.0);
  series.bins[2].min_rtt = 10.0;
  series.bins[3].min_rtt = 10.0;
  const BaselineStats stats{10.0, 0.1};
  const std::vector<SegmentLabel> labels{{SegmentKind::Jump, seg(0, 2, 12.0, 12.0)},
                                         {SegmentKind::Normal, seg(2, 4, 10.0, 10.0)},
                                         {SegmentKind::Jump, seg(4, 6, 12.0, 12.0)}};
  const auto anomalies =
      merge_and_extract(labels, series, whole_window(series), stats, cfg);
  REQUIRE(anomalies.size() == 2);
  CHECK(anomalies[0].end == 2 * 900);
  CHECK(anomalies[1].start == 4 * 900);
}

TEST_CASE("wall-clock holes in the data are never bridged") {
  const Config cfg;
  MinRttSeries series = flat_series(2, 12.0);
  // Second jump bin three days later; only these two bins exist.
  series.bins[1].start = 3 * 86400;
  const BaselineStats stats{10.0, 0.1};
  const std::vector<SegmentLabel> labels{{SegmentKind::Jump, seg(0, 2, 12.0, 12.0)}};
  const auto anomalies =
      merge_and_extract(labels, series, whole_window(series), stats, cfg);
  REQUIRE(anomalies.size() == 2);  // adjacent in the bin list but hours apart
}

TEST_CASE("dedup unions intersecting windows' detections") {
  SUBCASE("identical intervals collapse") {
    const auto out = dedup_across_windows({interval(0, 3600), interval(0, 3600)});
    REQUIRE(out.size() == 1);
    CHECK(out[0].start == 0);
    CHECK(out[0].end == 3600);
  }
  SUBCASE("overlapping intervals union") {
    const auto out =
        dedup_across_windows({interval(0, 3 * 3600, 2.0), interval(2 * 3600, 5 * 3600, 3.0)});
    REQUIRE(out.size() == 1);
    CHECK(out[0].start == 0);
    CHECK(out[0].end == 5 * 3600);
    CHECK(out[0].amplitude_ms == 3.0);  // max of members
    CHECK(out[0].duration_h == 5.0);
    CHECK(out[0].impact_ms_h == 15.0);  // recomputed
  }
  SUBCASE("disjoint intervals pass through") {
    const auto out = dedup_across_windows({interval(0, 3600), interval(4 * 3600, 5 * 3600)});
    CHECK(out.size() == 2);
  }
}

TEST_CASE("dedup output intervals are pairwise disjoint") {
  Rng rng(41);
  std::vector<Anomaly> in;
  for (int i = 0; i < 100; ++i) {
    const Timestamp s = static_cast<Timestamp>(rng.uniform_int(100 * 3600));
    in.push_back(interval(s, s + 900 + static_cast<Timestamp>(rng.uniform_int(8 * 3600))));
  }
  const auto out = dedup_across_windows(in);
  for (std::size_t i = 1; i < out.size(); ++i) CHECK(out[i].start > out[i - 1].end);
}

TEST_CASE("a dip followed by recovery yields zero anomalies") {
  const Config cfg;
  MinRttSeries series = flat_series(192, 10.0);  // 48 h
  for (std::size_t i = 60; i < 76; ++i) series.bins[i].min_rtt = 8.0;  // 4 h dip
  CHECK(detect_series(series, cfg).empty());
}

TEST_CASE("a square step pulse is recovered as exactly one anomaly") {
  const Config cfg;
  Rng rng(42);
  MinRttSeries series = flat_series(4 * 96, 0.0, 1648771200);  // 4 days of bins
  for (std::size_t i = 0; i < series.bins.size(); ++i)
    series.bins[i].min_rtt = 10.0 + rng.normal(0.0, 0.05);
  // 3-hour pulse of +5 ms starting 30 h in (bin-aligned).
  const std::size_t pulse_from = 120, pulse_to = 132;
  for (std::size_t i = pulse_from; i < pulse_to; ++i) series.bins[i].min_rtt += 5.0;

  const auto anomalies = detect_series(series, cfg);
  REQUIRE(anomalies.size() == 1);
  const Anomaly& a = anomalies[0];
  CHECK(a.amplitude_ms == doctest::Approx(5.0).epsilon(0.2));
  const Timestamp truth_start = series.bins[pulse_from].start;
  const Timestamp truth_end = series.bins[pulse_to].start;
  CHECK(interval_iou(a.start, a.end, truth_start, truth_end) >= 0.8);
}

TEST_CASE("detected anomalies always have sane amplitude and duration") {
  const Config cfg;
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    MinRttSeries series = flat_series(200, 0.0);
    double level = 10.0;
    for (auto& bin : series.bins) {
      if (rng.uniform() < 0.05) level += rng.uniform(-3.0, 3.0);  // random level shifts
      bin.min_rtt = std::max(0.5, level + rng.normal(0.0, 0.1));
    }
    const auto anomalies = detect_series(series, cfg);
    for (std::size_t i = 0; i < anomalies.size(); ++i) {
      CHECK(anomalies[i].amplitude_ms >= 0.0);
      CHECK(anomalies[i].duration_h > 0.0);
      CHECK(anomalies[i].impact_ms_h ==
            anomalies[i].amplitude_ms * anomalies[i].duration_h);
      if (i > 0) CHECK(anomalies[i].start > anomalies[i - 1].end);
    }
  }
}

TEST_CASE("assign_anomaly_ids orders by probe, destination, start") {
  std::vector<Anomaly> v;
  v.push_back(interval(3600, 7200));
  v.back().probe = "p2";
  v.push_back(interval(7200, 9000));
  v.back().probe = "p1";
  v.push_back(interval(0, 900));
  v.back().probe = "p1";
  assign_anomaly_ids(v);
  CHECK(v[0].id == 1);
  CHECK(v[0].probe == "p1");
  CHECK(v[0].start == 0);
  CHECK(v[2].probe == "p2");
  CHECK(v[2].id == 3);
}

}  // TEST_SUITE
