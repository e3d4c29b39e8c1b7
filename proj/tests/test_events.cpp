#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qtrend/events.hpp"
#include "qtrend/rng.hpp"

using namespace qtrend;

namespace {

std::vector<std::string> names(const std::vector<EventSpec>& events) {
  std::vector<std::string> out;
  for (const auto& e : events) out.push_back(e.name);
  return out;
}

EventSpec make_event(std::string name, double weight, Period start, Period end) {
  EventSpec e;
  e.name = std::move(name);
  e.weight = weight;
  e.polarity = weight > 1.0 ? EventPolarity::positive : EventPolarity::negative;
  e.start = start;
  e.end = end;
  return e;
}

}  // namespace

TEST_CASE("calendar lookups match the sample data quarters") {
  const auto& cal = builtin_calendar();
  CHECK(names(active_events(cal, {2001, 1})) ==
        std::vector<std::string>{"Internet Bubble", "9/11 Investigation", "0.13um Process"});
  CHECK(active_events(cal, {2002, 2}).empty());
  CHECK(names(active_events(cal, {2003, 4})) == std::vector<std::string>{"90nm Process"});
  CHECK(active_events(EventCalendar{}, {2001, 1}).empty());
}

TEST_CASE("calendar covers every labeled fixture quarter") {
  const auto& cal = builtin_calendar();
  for (const auto& r : sample_quarters_1998_2003())
    CHECK(names(active_events(cal, r.period)) == r.events);
}

TEST_CASE("intervention multiplier is the product of weights") {
  CHECK(intervention_multiplier({}) == 1.0);

  const auto& cal = builtin_calendar();
  const EventSpec* covid = cal.find("COVID-19");
  REQUIRE(covid != nullptr);
  CHECK(covid->weight == 1.2);
  CHECK(intervention_multiplier({{*covid}}) == 1.2);

  std::vector<EventSpec> pair = {*cal.find("Internet Bubble"), *cal.find("0.18um Process")};
  CHECK(std::abs(intervention_multiplier(pair) - 0.99) < 1e-12);
}

TEST_CASE("multiplier ignores event order") {
  std::vector<EventSpec> events = {make_event("a", 1.1, {2000, 1}, {2000, 4}),
                                   make_event("b", 0.9, {2000, 1}, {2000, 4}),
                                   make_event("c", 1.2, {2000, 1}, {2000, 4}),
                                   make_event("d", 0.85, {2000, 1}, {2000, 4})};
  double reference = intervention_multiplier(events);
  SplitMix64 rng(3);
  for (int it = 0; it < 30; ++it) {
    auto shuffled = events;
    for (size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.next() % i]);
    CHECK(std::abs(intervention_multiplier(shuffled) - reference) < 1e-12);
  }
}

TEST_CASE("apply_intervention recovers the stored 1998 Q2 score") {
  // stored score 67.07 under the single 1.1 event implies base 67.07/1.1
  const auto& cal = builtin_calendar();
  auto events = active_events(cal, {1998, 2});
  REQUIRE(events.size() == 1);
  CHECK(std::abs(apply_intervention(60.973, events) - 67.07) < 0.01);
}

TEST_CASE("apply_intervention identity and clamping") {
  CHECK(apply_intervention(64.0, {}) == 64.0);
  std::vector<EventSpec> covid = {make_event("COVID-19", 1.2, {2020, 1}, {2022, 2})};
  CHECK(apply_intervention(95.0, covid) == 100.0);
  CHECK(apply_intervention(0.0, covid) == 0.0);
}

TEST_CASE("effective scores stay in range under random events") {
  SplitMix64 rng(11);
  for (int it = 0; it < 1000; ++it) {
    std::vector<EventSpec> events;
    int n = static_cast<int>(rng.next() % 4);
    for (int i = 0; i < n; ++i) {
      double w = rng.next() % 2 ? rng.uniform(1.0001, 1.5) : rng.uniform(0.5, 0.9999);
      events.push_back(make_event("e" + std::to_string(i), w, {2000, 1}, {2000, 4}));
    }
    double base = rng.uniform(0.0, 100.0);
    double eff = apply_intervention(base, events);
    CHECK(eff >= 0.0);
    CHECK(eff <= 100.0);
  }
}

TEST_CASE("directionality holds away from the clamp") {
  std::vector<EventSpec> pos = {make_event("up", 1.1, {2000, 1}, {2000, 4}),
                                make_event("up more", 1.2, {2000, 1}, {2000, 4})};
  std::vector<EventSpec> neg = {make_event("down", 0.9, {2000, 1}, {2000, 4})};
  CHECK(apply_intervention(50.0, pos) > 50.0);
  CHECK(apply_intervention(50.0, neg) < 50.0);
}

TEST_CASE("enrich recomputes events and effective scores") {
  auto enriched = enrich(sample_quarters_1998_2003(), builtin_calendar());
  REQUIRE(enriched.size() == 24);
  for (const auto& r : enriched) {
    REQUIRE(r.effective_sentiment.has_value());
    if (r.events.empty()) CHECK(*r.effective_sentiment == *r.base_sentiment);
  }
  // 2001 Q4 .. 2002 Q3 carry no events in the sample
  CHECK(enriched[15].events.empty());
  CHECK(*enriched[15].effective_sentiment == 53.83);
}

TEST_CASE("enrich applies single event weights") {
  QuarterlyRecord r;
  r.period = {2000, 1};
  r.base_sentiment = 50.0;
  EventCalendar cal({make_event("slump", 0.9, {1999, 4}, {2000, 2})});
  auto out = enrich({r}, cal);
  CHECK(*out[0].effective_sentiment == doctest::Approx(45.0));
  CHECK(out[0].events == std::vector<std::string>{"slump"});

  r.base_sentiment = 0.0;
  out = enrich({r}, cal);
  CHECK(*out[0].effective_sentiment == 0.0);
}

TEST_CASE("enrich is idempotent") {
  auto once = enrich(sample_quarters_1998_2003(), builtin_calendar());
  auto twice = enrich(once, builtin_calendar());
  REQUIRE(once.size() == twice.size());
  for (size_t i = 0; i < once.size(); ++i) {
    CHECK(once[i].events == twice[i].events);
    CHECK(*once[i].effective_sentiment == *twice[i].effective_sentiment);
    CHECK(*once[i].base_sentiment == *twice[i].base_sentiment);
  }
}

TEST_CASE("enrich rejects records without a base score") {
  auto recs = sample_quarters_1998_2003();
  recs[5].base_sentiment.reset();
  CHECK_THROWS_WITH_AS(enrich(recs, builtin_calendar()), doctest::Contains("1999 Q2"),
                       std::runtime_error);
}

TEST_CASE("enrich rejects event labels missing from the calendar") {
  auto recs = sample_quarters_1998_2003();
  recs[2].events = {"Totally Made Up"};
  CHECK_THROWS_WITH_AS(enrich(recs, builtin_calendar()), doctest::Contains("Totally Made Up"),
                       std::runtime_error);
}

TEST_CASE("calendar validation") {
  SUBCASE("duplicate names") {
    std::vector<EventSpec> two = {make_event("x", 1.1, {2000, 1}, {2000, 4}),
                                  make_event("x", 0.9, {2001, 1}, {2001, 4})};
    CHECK_THROWS_WITH_AS(EventCalendar{two}, doctest::Contains("duplicate"), std::runtime_error);
  }
  SUBCASE("positive weight must exceed 1") {
    auto e = make_event("x", 1.1, {2000, 1}, {2000, 4});
    e.weight = 0.95;  // polarity stays positive
    CHECK_THROWS_WITH_AS(EventCalendar{{e}}, doctest::Contains("weight > 1"), std::runtime_error);
  }
  SUBCASE("negative weight must be below 1") {
    auto e = make_event("x", 0.9, {2000, 1}, {2000, 4});
    e.weight = 1.2;
    CHECK_THROWS_WITH_AS(EventCalendar{{e}}, doctest::Contains("weight < 1"), std::runtime_error);
  }
  SUBCASE("range must not be inverted") {
    auto e = make_event("x", 1.1, {2001, 1}, {2000, 4});
    CHECK_THROWS_WITH_AS(EventCalendar{{e}}, doctest::Contains("before it starts"),
                         std::runtime_error);
  }
}

TEST_CASE("calendar file parsing") {
  std::string good =
      "# comment\n"
      "name = Some Shock\n"
      "polarity = negative\n"
      "weight = 0.9\n"
      "scope = external\n"
      "start = 2005 Q1\n"
      "end = 2005 Q4\n";
  auto cal = parse_calendar_text(good);
  REQUIRE(cal.events().size() == 1);
  CHECK(cal.events()[0].scope == EventScope::external);
  CHECK(cal.find("Some Shock") != nullptr);
  CHECK(cal.find("missing") == nullptr);

  CHECK_THROWS_WITH_AS(parse_calendar_text("name = x\n"), doctest::Contains("missing"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_calendar_text("junk line\n"), doctest::Contains("key = value"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(
      parse_calendar_text(good + "\nname = Other\npolarity = sideways\nweight = 0.9\n"
                                 "scope = external\nstart = 2005 Q1\nend = 2005 Q4\n"),
      doctest::Contains("polarity"), std::runtime_error);
  CHECK_THROWS_AS(load_calendar("/nonexistent/calendar.txt"), std::runtime_error);
}

TEST_CASE("bundled calendar spans the study window") {
  const auto& cal = builtin_calendar();
  CHECK(cal.events().size() == 21);
  for (const auto& e : cal.events()) {
    CHECK(e.start.year >= 1998);
    CHECK(e.end.year <= 2023);
  }
  // every quarter of 2020 sees COVID-19 active
  for (int q = 1; q <= 4; ++q) {
    auto active = names(active_events(cal, {2020, q}));
    CHECK(std::find(active.begin(), active.end(), "COVID-19") != active.end());
  }
}
