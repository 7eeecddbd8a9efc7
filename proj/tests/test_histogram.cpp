#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "qca/histogram.hpp"

using namespace qca;

namespace {

Histogram from_counts(const std::vector<std::size_t>& counts) {
  Histogram h;
  h.lo = 0.0;
  h.hi = double(counts.size());
  h.bin_width = 1.0;
  h.counts = counts;
  for (auto c : counts) h.total += c;
  return h;
}

}  // namespace

TEST_CASE("option validation") {
  HistogramOptions o;
  CHECK_NOTHROW(o.validate());
  o.bin_width = 0.003;  // does not divide 1.0 evenly
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = {};
  o.hi = o.lo;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = {};
  o.bin_width = -1.0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = {};
  o.bin_width = 1e-9;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);  // > 1e7 bins
}

TEST_CASE("values land in the right bins") {
  HistogramOptions o;
  o.lo = -0.5;
  o.hi = 0.5;
  o.bin_width = 0.25;
  const Histogram h = build_histogram({-0.4, -0.3, 0.1, 0.2, 0.49}, o);
  REQUIRE(h.n_bins() == 4);
  CHECK(h.total == 5);
  CHECK(h.counts[0] == 2);
  CHECK(h.counts[1] == 0);
  CHECK(h.counts[2] == 2);
  CHECK(h.counts[3] == 1);
  CHECK(h.bin_center(0) == Catch::Approx(-0.375));
  CHECK(h.bin_center(3) == Catch::Approx(0.375));
}

TEST_CASE("edge and out-of-range values are clamped into the end bins") {
  HistogramOptions o;
  o.lo = 0.0;
  o.hi = 1.0;
  o.bin_width = 0.5;
  const Histogram h = build_histogram({0.0, 1.0, -0.2, 1.7}, o);
  REQUIRE(h.n_bins() == 2);
  CHECK(h.counts[0] == 2);  // 0.0 and -0.2
  CHECK(h.counts[1] == 2);  // 1.0 and 1.7
}

TEST_CASE("non-finite samples are rejected") {
  CHECK_THROWS_AS(build_histogram({std::numeric_limits<double>::quiet_NaN()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_histogram({std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);
}

TEST_CASE("local maxima with plateau merging") {
  SECTION("simple interior peak") {
    const auto m = local_maxima(from_counts({1, 5, 2}));
    REQUIRE(m.size() == 1);
    CHECK(m[0] == 1);
  }
  SECTION("peaks at open chain ends") {
    const auto m = local_maxima(from_counts({7, 1, 2, 1, 9}));
    REQUIRE(m.size() == 3);
    CHECK(m[0] == 0);
    CHECK(m[1] == 2);
    CHECK(m[2] == 4);
  }
  SECTION("a plateau counts once, at its middle bin") {
    const auto m = local_maxima(from_counts({1, 4, 4, 4, 2, 1}));
    REQUIRE(m.size() == 1);
    CHECK(m[0] == 2);
  }
  SECTION("a plateau flanked by an equal run is no maximum") {
    const auto m = local_maxima(from_counts({3, 3, 3}));
    REQUIRE(m.size() == 1);  // single global plateau, open ends
    CHECK(m[0] == 1);
  }
  SECTION("empty bins are never maxima") {
    CHECK(local_maxima(from_counts({0, 0, 0})).empty());
    const auto m = local_maxima(from_counts({0, 2, 0, 0, 1}));
    REQUIRE(m.size() == 2);
    CHECK(m[0] == 1);
    CHECK(m[1] == 4);
  }
  SECTION("staircases have no interior maxima") {
    const auto m = local_maxima(from_counts({1, 2, 3, 4}));
    REQUIRE(m.size() == 1);
    CHECK(m[0] == 3);
  }
}

TEST_CASE("bimodality report") {
  SECTION("unimodal data") {
    const auto r = bimodality_report(from_counts({1, 6, 2}));
    CHECK(r.n_maxima == 1);
    CHECK_FALSE(r.bimodal);
    CHECK(r.peak_lo_center == Catch::Approx(1.5));
    CHECK(r.peak_lo_count == 6);
  }
  SECTION("two peaks and the valley between them") {
    const auto r = bimodality_report(from_counts({1, 8, 2, 1, 3, 6, 2}));
    CHECK(r.n_maxima == 2);
    CHECK(r.bimodal);
    CHECK(r.peak_lo_center == Catch::Approx(1.5));
    CHECK(r.peak_hi_center == Catch::Approx(5.5));
    CHECK(r.peak_lo_count == 8);
    CHECK(r.peak_hi_count == 6);
    CHECK(r.valley_center == Catch::Approx(3.5));
    CHECK(r.valley_count == 1);
  }
  SECTION("more than two maxima selects the two highest") {
    // maxima at bins 0, 2, 4 and the open right end 6; highest are 9 and 7
    const auto r = bimodality_report(from_counts({5, 1, 9, 1, 7, 1, 2}));
    CHECK(r.n_maxima == 4);
    CHECK_FALSE(r.bimodal);
    CHECK(r.peak_lo_center == Catch::Approx(2.5));
    CHECK(r.peak_hi_center == Catch::Approx(4.5));
  }
  SECTION("flat histogram is unimodal by plateau merging") {
    const auto r = bimodality_report(from_counts({4, 4, 4, 4}));
    CHECK(r.n_maxima == 1);
    CHECK_FALSE(r.bimodal);
  }
  SECTION("empty histogram") {
    const auto r = bimodality_report(from_counts({0, 0}));
    CHECK(r.n_maxima == 0);
    CHECK_FALSE(r.bimodal);
  }
}

TEST_CASE("default binning spans the order parameter range") {
  const Histogram h = build_histogram({});
  CHECK(h.n_bins() == 200);
  CHECK(h.lo == -0.5);
  CHECK(h.hi == 0.5);
  CHECK(h.total == 0);
}
