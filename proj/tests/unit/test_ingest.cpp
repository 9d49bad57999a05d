#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "latsel/csv.hpp"
#include "latsel/error.hpp"
#include "latsel/ingest.hpp"
#include "latsel/rng.hpp"

using namespace latsel;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("latsel_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const std::string p = (path / name).string();
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
  static inline int counter = 0;
};

const std::string kMeta = "probe_id,isp,region\np1,NetA,60601\np2,NetB,\n";

RttSample sample(Timestamp t, double rtt, const std::string& isp = "NetA") {
  return RttSample{t, rtt, isp};
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("valid rows parse into time-ordered series") {
  TempDir dir;
  const auto samples = dir.file("s.csv",
                                "probe_id,destination,timestamp_utc,rtt_ms,isp\n"
                                "p1,Chicago,2022-04-01T00:10:00Z,10.5,NetA\n"
                                "p1,Chicago,600,9.5,NetA\n"
                                "p2,Chicago,2022-04-01T00:00:00Z,20,NetB\n");
  const auto meta = dir.file("m.csv", kMeta);
  const RawDataset ds = ingest(samples, meta);
  CHECK(ds.sample_count() == 3);
  CHECK(ds.dropped_samples == 0);
  const auto& s1 = ds.series.at(SeriesKey{"p1", "Chicago"});
  REQUIRE(s1.size() == 2);
  CHECK(s1[0].timestamp == 600);  // epoch-seconds row sorts first
  CHECK(s1[0].rtt_ms == 9.5);
  CHECK(s1[1].timestamp == 1648771800);
  CHECK(ds.meta.at("p2").isp == "NetB");
  CHECK(ds.meta.at("p2").region.empty());
}

TEST_CASE("non-positive and non-finite rtt rows are dropped and counted") {
  TempDir dir;
  const auto samples = dir.file("s.csv",
                                "probe_id,destination,timestamp_utc,rtt_ms,isp\n"
                                "p1,Chicago,0,-1,NetA\n"
                                "p1,Chicago,300,nan,NetA\n"
                                "p1,Chicago,600,10,NetA\n");
  const auto meta = dir.file("m.csv", kMeta);
  const RawDataset ds = ingest(samples, meta);
  CHECK(ds.sample_count() == 1);
  CHECK(ds.dropped_samples == 2);
}

TEST_CASE("duplicate (probe,destination,timestamp) resolves to the later row") {
  TempDir dir;
  const auto samples = dir.file("s.csv",
                                "probe_id,destination,timestamp_utc,rtt_ms,isp\n"
                                "p1,Chicago,600,10,NetA\n"
                                "p1,Chicago,600,12,NetA\n");
  const auto meta = dir.file("m.csv", kMeta);
  const RawDataset ds = ingest(samples, meta);
  REQUIRE(ds.sample_count() == 1);
  CHECK(ds.series.at(SeriesKey{"p1", "Chicago"})[0].rtt_ms == 12.0);
  CHECK(ds.duplicate_samples == 1);
}

TEST_CASE("malformed rows are rejected with their line number") {
  TempDir dir;
  const auto meta = dir.file("m.csv", kMeta);
  const auto bad_fields = dir.file("s1.csv",
                                   "probe_id,destination,timestamp_utc,rtt_ms,isp\n"
                                   "p1,Chicago,600,10\n");
  CHECK_THROWS_WITH_AS(ingest(bad_fields, meta), doctest::Contains(":2"), Error);
  const auto bad_number = dir.file("s2.csv",
                                   "probe_id,destination,timestamp_utc,rtt_ms,isp\n"
                                   "p1,Chicago,600,10,NetA\n"
                                   "p1,Chicago,900,ten,NetA\n");
  CHECK_THROWS_WITH_AS(ingest(bad_number, meta), doctest::Contains(":3"), Error);
}

TEST_CASE("a sample probe missing from meta is rejected by name") {
  TempDir dir;
  const auto samples = dir.file("s.csv",
                                "probe_id,destination,timestamp_utc,rtt_ms,isp\n"
                                "ghost,Chicago,600,10,NetA\n");
  const auto meta = dir.file("m.csv", kMeta);
  CHECK_THROWS_WITH_AS(ingest(samples, meta), doctest::Contains("ghost"), Error);
}

TEST_CASE("segment_by_isp splits exactly at label changes") {
  SUBCASE("single label yields one run") {
    const std::vector<RttSample> in{sample(0, 1, "A"), sample(1, 1, "A"), sample(2, 1, "A")};
    const auto runs = segment_by_isp(in);
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].isp == "A");
    CHECK(runs[0].samples.size() == 3);
  }
  SUBCASE("A,A,B,B yields two runs of two") {
    const std::vector<RttSample> in{sample(0, 1, "A"), sample(1, 1, "A"), sample(2, 1, "B"),
                                    sample(3, 1, "B")};
    const auto runs = segment_by_isp(in);
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].samples.size() == 2);
    CHECK(runs[1].samples.size() == 2);
  }
  SUBCASE("A,B,A yields three runs") {
    const std::vector<RttSample> in{sample(0, 1, "A"), sample(1, 1, "B"), sample(2, 1, "A")};
    CHECK(segment_by_isp(in).size() == 3);
  }
  SUBCASE("empty input yields no runs") { CHECK(segment_by_isp({}).empty()); }
}

TEST_CASE("segmentation then concatenation reproduces the sample order") {
  Rng rng(21);
  std::vector<RttSample> in;
  const char* isps[] = {"A", "B", "C"};
  for (int i = 0; i < 200; ++i)
    in.push_back(sample(i, rng.uniform(1, 50), isps[rng.uniform_int(3)]));
  const auto runs = segment_by_isp(in);
  std::vector<RttSample> flat;
  for (const auto& run : runs) {
    for (const auto& s : run.samples) {
      CHECK(s.isp == run.isp);
      flat.push_back(s);
    }
  }
  REQUIRE(flat.size() == in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    CHECK(flat[i].timestamp == in[i].timestamp);
    CHECK(flat[i].rtt_ms == in[i].rtt_ms);
  }
}

TEST_CASE("bin_min_rtt keeps the per-bin minimum") {
  IspRun run{"A", {sample(0, 10), sample(300, 8), sample(600, 12)}};
  const MinRttSeries series = bin_min_rtt("p1", "Chicago", run, 15);
  REQUIRE(series.bins.size() == 1);
  CHECK(series.bins[0].start == 0);
  CHECK(series.bins[0].min_rtt == 8.0);
  CHECK(series.isp_segment == "A");
}

TEST_CASE("bin boundaries are half-open and epoch-aligned") {
  IspRun run{"A", {sample(899, 10), sample(900, 5)}};
  const MinRttSeries series = bin_min_rtt("p1", "Chicago", run, 15);
  REQUIRE(series.bins.size() == 2);
  CHECK(series.bins[0].start == 0);
  CHECK(series.bins[0].min_rtt == 10.0);
  CHECK(series.bins[1].start == 900);  // a sample exactly on the boundary
  CHECK(series.bins[1].min_rtt == 5.0);
}

TEST_CASE("bin_min_rtt degenerate inputs") {
  CHECK(bin_min_rtt("p1", "Chicago", IspRun{"A", {}}, 15).bins.empty());
  const MinRttSeries one = bin_min_rtt("p1", "Chicago", IspRun{"A", {sample(450, 7)}}, 15);
  REQUIRE(one.bins.size() == 1);
  CHECK(one.bins[0].min_rtt == 7.0);
  CHECK_THROWS_AS(bin_min_rtt("p1", "Chicago", IspRun{"A", {}}, 0), Error);
}

TEST_CASE("every bin minimum is attained by a member sample") {
  Rng rng(22);
  IspRun run{"A", {}};
  Timestamp t = 0;
  for (int i = 0; i < 500; ++i) {
    t += static_cast<Timestamp>(rng.uniform_int(400));
    run.samples.push_back(sample(t, rng.uniform(1, 50)));
  }
  const MinRttSeries series = bin_min_rtt("p1", "Chicago", run, 15);
  for (const auto& bin : series.bins) {
    bool attained = false;
    for (const auto& s : run.samples) {
      if (s.timestamp >= bin.start && s.timestamp < bin.start + 900) {
        CHECK(bin.min_rtt <= s.rtt_ms);
        if (s.rtt_ms == bin.min_rtt) attained = true;
      }
    }
    CHECK(attained);
  }
  // Strictly increasing bin starts.
  for (std::size_t i = 1; i < series.bins.size(); ++i)
    CHECK(series.bins[i].start > series.bins[i - 1].start);
}

}  // TEST_SUITE
