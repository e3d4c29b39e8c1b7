#include "qtrend/events.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kvblocks.hpp"
#include "qtrend/numfmt.hpp"

namespace qtrend {

namespace {

void validate_event(const EventSpec& e) {
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("event '" + e.name + "': " + why);
  };
  if (e.name.empty()) fail("empty name");
  if (!(e.weight > 0.0) || !std::isfinite(e.weight)) fail("weight must be a positive real");
  if (e.polarity == EventPolarity::positive && e.weight <= 1.0)
    fail("positive event needs weight > 1, got " + format_double(e.weight));
  if (e.polarity == EventPolarity::negative && e.weight >= 1.0)
    fail("negative event needs weight < 1, got " + format_double(e.weight));
  if (e.end < e.start)
    fail("active range ends (" + e.end.str() + ") before it starts (" + e.start.str() + ")");
}

}  // namespace

EventCalendar::EventCalendar(std::vector<EventSpec> events) : events_(std::move(events)) {
  std::set<std::string> names;
  for (const auto& e : events_) {
    validate_event(e);
    if (!names.insert(e.name).second)
      throw std::runtime_error("duplicate event name '" + e.name + "'");
  }
}

const EventSpec* EventCalendar::find(const std::string& name) const {
  for (const auto& e : events_)
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<EventSpec> active_events(const EventCalendar& calendar, const Period& p) {
  std::vector<EventSpec> out;
  for (const auto& e : calendar.events())
    if (e.start <= p && p <= e.end) out.push_back(e);
  return out;
}

double intervention_multiplier(std::span<const EventSpec> events) {
  double m = 1.0;
  for (const auto& e : events) m *= e.weight;
  return m;
}

double apply_intervention(double base, std::span<const EventSpec> events) {
  return std::clamp(base * intervention_multiplier(events), 0.0, 100.0);
}

std::vector<QuarterlyRecord> enrich(std::vector<QuarterlyRecord> records,
                                    const EventCalendar& calendar) {
  for (auto& r : records) {
    if (!r.base_sentiment)
      throw std::runtime_error("record " + r.period.str() + " has no base sentiment score");
    for (const auto& name : r.events)
      if (!calendar.find(name))
        throw std::runtime_error("record " + r.period.str() + " names event '" + name +
                                 "' which is not in the calendar");
    auto active = active_events(calendar, r.period);
    r.events.clear();
    for (const auto& e : active) r.events.push_back(e.name);
    r.effective_sentiment = apply_intervention(*r.base_sentiment, active);
  }
  return records;
}

namespace detail {

std::vector<KvBlock> parse_kv_blocks(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<KvBlock> blocks;
  KvBlock current;

  auto flush = [&]() {
    if (!current.kv.empty()) blocks.push_back(std::move(current));
    current = {};
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty()) {
      flush();
      continue;
    }
    if (sv.front() == '#') continue;
    auto eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": expected 'key = value', got '" + std::string(sv) + "'");
    if (current.kv.empty()) current.line_no = line_no;
    std::string key(trim(sv.substr(0, eq)));
    std::string value(trim(sv.substr(eq + 1)));
    if (!current.kv.emplace(key, value).second)
      throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": repeated key '" + key +
                               "' in one block");
  }
  flush();
  return blocks;
}

EventSpec event_from_kv(const KvBlock& block, const std::string& origin) {
  auto fail = [&](const std::string& msg) -> EventSpec {
    throw std::runtime_error(origin + ":" + std::to_string(block.line_no) + ": " + msg);
  };
  for (const char* key : {"name", "polarity", "weight", "scope", "start", "end"})
    if (!block.kv.count(key)) return fail(std::string("event block is missing '") + key + "'");
  for (const auto& [k, v] : block.kv)
    if (k != "name" && k != "polarity" && k != "weight" && k != "scope" && k != "start" &&
        k != "end")
      return fail("unknown key '" + k + "'");

  EventSpec e;
  e.name = block.kv.at("name");
  const std::string& pol = block.kv.at("polarity");
  if (pol == "positive")
    e.polarity = EventPolarity::positive;
  else if (pol == "negative")
    e.polarity = EventPolarity::negative;
  else
    return fail("polarity must be positive|negative, got '" + pol + "'");
  const std::string& scope = block.kv.at("scope");
  if (scope == "internal")
    e.scope = EventScope::internal;
  else if (scope == "external")
    e.scope = EventScope::external;
  else
    return fail("scope must be internal|external, got '" + scope + "'");
  auto w = parse_double(block.kv.at("weight"));
  if (!w) return fail("weight '" + block.kv.at("weight") + "' is not a number");
  e.weight = *w;
  try {
    e.start = parse_period(block.kv.at("start"));
    e.end = parse_period(block.kv.at("end"));
  } catch (const std::exception& ex) {
    return fail(ex.what());
  }
  return e;
}

}  // namespace detail

EventCalendar parse_calendar_text(const std::string& text, const std::string& origin) {
  std::vector<EventSpec> events;
  for (const auto& block : detail::parse_kv_blocks(text, origin))
    events.push_back(detail::event_from_kv(block, origin));
  try {
    return EventCalendar(std::move(events));
  } catch (const std::exception& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
}

EventCalendar load_calendar(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open calendar file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_calendar_text(ss.str(), path);
}

const EventCalendar& builtin_calendar() {
  static const EventCalendar cal =
      parse_calendar_text(builtin_calendar_text(), "<builtin calendar>");
  return cal;
}

}  // namespace qtrend
