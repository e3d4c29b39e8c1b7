#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qtrend/numfmt.hpp"
#include "qtrend/record.hpp"
#include "qtrend/rng.hpp"
#include "qtrend/scaler.hpp"
#include "qtrend/windows.hpp"

using namespace qtrend;

namespace {

std::string fixture_csv() { return write_records_text(sample_quarters_1998_2003()); }

}  // namespace

TEST_CASE("parse_period accepts the table format") {
  CHECK(parse_period("1998 Q1") == Period{1998, 1});
  CHECK(parse_period("2003 Q4") == Period{2003, 4});
  CHECK(parse_period("2100 Q2") == Period{2100, 2});
}

TEST_CASE("parse_period rejects malformed input") {
  CHECK_THROWS_WITH_AS(parse_period("1998 Q5"), doctest::Contains("Q5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_period("1998Q1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_period("199x Q1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_period("1997 Q1"), std::invalid_argument);  // below accepted range
  CHECK_THROWS_AS(parse_period("2101 Q1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_period(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_period("1998 q1"), std::invalid_argument);
}

TEST_CASE("periods order and advance by quarter") {
  CHECK(Period{1999, 4}.next() == Period{2000, 1});
  CHECK(Period{1999, 2}.next() == Period{1999, 3});
  CHECK(Period{1998, 4} < Period{1999, 1});
  CHECK(Period{2000, 1}.quarters_since({1998, 1}) == 8);
}

TEST_CASE("fixture holds the 24 sample quarters") {
  const auto& recs = sample_quarters_1998_2003();
  REQUIRE(recs.size() == 24);
  CHECK(recs.front().period == Period{1998, 1});
  CHECK(recs.back().period == Period{2003, 4});
  CHECK(recs[0].financial(0) == 15736.0);
  CHECK(recs[0].financial(4) == 1.7);
  CHECK(recs[13].period == Period{2001, 2});
  CHECK(recs[13].financial(3) == 312.0);
  CHECK(recs[13].financial(4) == 0.01);
  CHECK(recs[23].financial(5) == 1427000.0);
  CHECK(fixture_by_name("table2").size() == 24);
  CHECK_THROWS_AS(fixture_by_name("nope"), std::runtime_error);
}

TEST_CASE("write then load then write is byte-identical on the fixture") {
  std::string first = fixture_csv();
  auto loaded = parse_records_text(first);
  REQUIRE(loaded.records.size() == 24);
  CHECK(write_records_text(loaded.records) == first);
}

TEST_CASE("loaded records come back sorted") {
  // fixture rows reversed in the file
  auto recs = sample_quarters_1998_2003();
  std::reverse(recs.begin(), recs.end());
  auto loaded = parse_records_text(write_records_text(recs));
  for (size_t i = 1; i < loaded.records.size(); ++i)
    CHECK(loaded.records[i - 1].period < loaded.records[i].period);
}

TEST_CASE("loader rejects bad tables with located errors") {
  std::string header =
      "period,net_sales,cost_of_sales,gross_profit,net_income,eps,wafer_shipment,"
      "income_from_operations,operating_expenses";

  SUBCASE("empty input") {
    CHECK_THROWS_WITH_AS(parse_records_text(""), doctest::Contains("no data rows"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_records_text(header + "\n"), doctest::Contains("no data rows"),
                         std::runtime_error);
  }
  SUBCASE("missing column") {
    CHECK_THROWS_WITH_AS(parse_records_text("period,net_sales\n1998 Q1,1\n"),
                         doctest::Contains("header"), std::runtime_error);
  }
  SUBCASE("non-numeric cell names row and column") {
    std::string text = header + "\n1998 Q1,1,2,3,4,5,6,7,8\n1998 Q2,1,2,oops,4,5,6,7,8\n";
    CHECK_THROWS_WITH_AS(parse_records_text(text, {}, "f.csv"),
                         doctest::Contains("f.csv:3: column gross_profit"), std::runtime_error);
  }
  SUBCASE("duplicate period") {
    std::string text = header + "\n1998 Q1,1,2,3,4,5,6,7,8\n1998 Q1,1,2,3,4,5,6,7,8\n";
    CHECK_THROWS_WITH_AS(parse_records_text(text), doctest::Contains("duplicate period 1998 Q1"),
                         std::runtime_error);
  }
  SUBCASE("gap names the missing quarter") {
    std::string text = header + "\n1998 Q1,1,2,3,4,5,6,7,8\n1998 Q3,1,2,3,4,5,6,7,8\n";
    CHECK_THROWS_WITH_AS(parse_records_text(text), doctest::Contains("missing 1998 Q2"),
                         std::runtime_error);
  }
  SUBCASE("negative wafer shipment") {
    std::string text = header + "\n1998 Q1,1,2,3,4,5,-6,7,8\n";
    CHECK_THROWS_WITH_AS(parse_records_text(text), doctest::Contains("wafer_shipment"),
                         std::runtime_error);
  }
  SUBCASE("out-of-range sentiment") {
    std::string text = header + ",sentiment_score\n1998 Q1,1,2,3,4,5,6,7,8,101\n";
    CHECK_THROWS_WITH_AS(parse_records_text(text), doctest::Contains("outside [0,100]"),
                         std::runtime_error);
  }
  SUBCASE("unknown trailing column") {
    std::string text = header + ",bogus\n1998 Q1,1,2,3,4,5,6,7,8,9\n";
    CHECK_THROWS_WITH_AS(parse_records_text(text), doctest::Contains("bogus"), std::runtime_error);
  }
}

TEST_CASE("allow-gaps interpolates interior quarters") {
  std::string header =
      "period,net_sales,cost_of_sales,gross_profit,net_income,eps,wafer_shipment,"
      "income_from_operations,operating_expenses,sentiment_score";
  std::string text = header +
                     "\n1998 Q1,10,2,3,4,5,6,7,8,40"
                     "\n1998 Q4,40,2,3,4,5,6,7,8,70\n";
  auto loaded = parse_records_text(text, {true});
  REQUIRE(loaded.records.size() == 4);
  CHECK(loaded.interpolated == 2);
  CHECK(loaded.records[1].period == Period{1998, 2});
  CHECK(loaded.records[1].financial(0) == doctest::Approx(20.0));
  CHECK(loaded.records[2].financial(0) == doctest::Approx(30.0));
  CHECK(*loaded.records[1].base_sentiment == doctest::Approx(50.0));
  CHECK(loaded.records[1].events.empty());
}

TEST_CASE("shares_outstanding column is ignored with a warning") {
  std::string text =
      "period,net_sales,cost_of_sales,gross_profit,net_income,eps,wafer_shipment,"
      "income_from_operations,operating_expenses,shares_outstanding\n"
      "1998 Q1,1,2,3,4,5,6,7,8,999\n";
  auto loaded = parse_records_text(text);
  REQUIRE(loaded.records.size() == 1);
  CHECK(loaded.records[0].financial(7) == 8.0);
  REQUIRE(loaded.warnings.size() == 1);
  CHECK(loaded.warnings[0].find("shares_outstanding") != std::string::npos);
}

TEST_CASE("scaler ranges match the fixture extremes") {
  auto s = fit_scaler(sample_quarters_1998_2003());
  CHECK(s.ranges[0].min == 11263.0);  // net_sales, 1998 Q3
  CHECK(s.ranges[0].max == 57780.0);  // net_sales, 2003 Q4
  CHECK(s.ranges[4].min == 0.01);     // eps, 2001 Q2
  CHECK(s.ranges[4].max == 1.84);     // eps, 2000 Q4
  CHECK_FALSE(s.ranges[0].degenerate());
}

TEST_CASE("scaler preconditions") {
  std::vector<QuarterlyRecord> one(1, sample_quarters_1998_2003()[0]);
  CHECK_THROWS_AS(fit_scaler(one), std::invalid_argument);

  auto no_sent = sample_quarters_1998_2003();
  no_sent[3].effective_sentiment.reset();
  CHECK_THROWS_WITH_AS(fit_scaler(no_sent), doctest::Contains("1998 Q4"), std::runtime_error);
}

TEST_CASE("constant feature is degenerate and pins to 0.5") {
  auto recs = sample_quarters_1998_2003();
  for (auto& r : recs) r.financial(2) = 5.0;
  auto s = fit_scaler(recs);
  CHECK(s.ranges[2].degenerate());
  CHECK(s.ranges[2].min == 5.0);
  CHECK(s.normalize_one(2, 123.0) == 0.5);
  CHECK(s.denormalize_one(2, 0.77) == 5.0);
}

TEST_CASE("normalization maps the fitted range onto [0,1] without clamping") {
  auto s = fit_scaler(sample_quarters_1998_2003());
  CHECK(s.normalize_one(0, 15736.0) == doctest::Approx(0.09616).epsilon(1e-3));
  CHECK(s.normalize_one(0, 11263.0) == 0.0);
  CHECK(s.normalize_one(0, 57780.0) == 1.0);
  CHECK(s.normalize_one(0, 60000.0) > 1.0);  // forecast overshoot stays unclamped
  CHECK(s.normalize_one(0, 10000.0) < 0.0);
  CHECK(s.denormalize_one(0, 0.0) == 11263.0);
  CHECK(s.denormalize_one(4, 1.0) == 1.84);
}

TEST_CASE("normalize/denormalize round-trip within 1e-9 relative") {
  auto s = fit_scaler(sample_quarters_1998_2003());
  SplitMix64 rng(99);
  for (int it = 0; it < 200; ++it) {
    std::array<double, kNumFeatures> v{};
    for (auto& x : v) x = rng.uniform(-1e6, 1e6);
    auto n = normalize(v, s);
    std::array<double, kNumFinancial> fin{};
    for (int f = 0; f < kNumFinancial; ++f) fin[static_cast<size_t>(f)] = n[static_cast<size_t>(f)];
    auto back = denormalize(fin, s);
    for (int f = 0; f < kNumFinancial; ++f) {
      double orig = v[static_cast<size_t>(f)];
      CHECK(std::abs(back[static_cast<size_t>(f)] - orig) <= 1e-9 * std::max(1.0, std::abs(orig)));
    }
  }
}

TEST_CASE("windowing yields N-L chronological samples") {
  Matrix series(24, kNumFeatures);
  SplitMix64 rng(5);
  for (double& v : series.data) v = rng.uniform01();

  auto windows = make_windows(series, 8);
  REQUIRE(windows.size() == 16);
  for (size_t i = 0; i < windows.size(); ++i) {
    CHECK(windows[i].input.rows == 8);
    // target is the row immediately after the input block
    for (int c = 0; c < kNumFeatures; ++c) {
      CHECK(windows[i].target[static_cast<size_t>(c)] == series(static_cast<int>(i) + 8, c));
      CHECK(windows[i].input(0, c) == series(static_cast<int>(i), c));
    }
  }
}

TEST_CASE("windowing boundary cases") {
  Matrix five(5, 2);
  CHECK_THROWS_AS(make_windows(five, 5), std::invalid_argument);
  CHECK_THROWS_AS(make_windows(five, 0), std::invalid_argument);

  Matrix two(2, 3);
  two(0, 0) = 1.0;
  two(1, 2) = 7.0;
  auto w = make_windows(two, 1);
  REQUIRE(w.size() == 1);
  CHECK(w[0].input(0, 0) == 1.0);
  CHECK(w[0].target[2] == 7.0);
}

TEST_CASE("canonical number format is shortest round-trip") {
  CHECK(format_double(15736.0) == "15736");
  CHECK(format_double(1.7) == "1.7");
  CHECK(format_double(0.01) == "0.01");
  CHECK(*parse_double("81.17") == 81.17);
  CHECK_FALSE(parse_double("12x").has_value());
  CHECK_FALSE(parse_double("").has_value());
}
