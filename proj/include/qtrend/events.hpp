#pragma once

#include <span>
#include <string>
#include <vector>

#include "qtrend/period.hpp"
#include "qtrend/record.hpp"

namespace qtrend {

enum class EventPolarity { positive, negative };
enum class EventScope { internal, external };

// A named intervention with a multiplicative weight over an inclusive quarter
// range. Positive events carry weight > 1, negative < 1.
struct EventSpec {
  std::string name;
  EventPolarity polarity = EventPolarity::positive;
  double weight = 1.0;
  EventScope scope = EventScope::external;
  Period start;
  Period end;
};

class EventCalendar {
 public:
  EventCalendar() = default;
  explicit EventCalendar(std::vector<EventSpec> events);  // validates, rejects duplicate names

  const std::vector<EventSpec>& events() const { return events_; }
  bool empty() const { return events_.empty(); }
  const EventSpec* find(const std::string& name) const;

 private:
  std::vector<EventSpec> events_;
};

// Events whose active range contains p, in calendar order.
std::vector<EventSpec> active_events(const EventCalendar& calendar, const Period& p);

// Product of event weights; 1.0 for no events.
double intervention_multiplier(std::span<const EventSpec> events);

// base * multiplier, clamped into [0,100].
double apply_intervention(double base, std::span<const EventSpec> events);

// Rewrites each record's events from the calendar and recomputes
// effective_sentiment from base_sentiment. Stored event labels unknown to the
// calendar are a hard error, as is a missing base score.
std::vector<QuarterlyRecord> enrich(std::vector<QuarterlyRecord> records,
                                    const EventCalendar& calendar);

// Calendar file: key=value blocks (name/polarity/weight/scope/start/end)
// separated by blank lines; '#' comments allowed.
EventCalendar parse_calendar_text(const std::string& text, const std::string& origin = "<string>");
EventCalendar load_calendar(const std::string& path);

// Bundled 1998 Q1 .. 2023 Q4 calendar (see data/calendar.txt).
const EventCalendar& builtin_calendar();
const char* builtin_calendar_text();

}  // namespace qtrend
