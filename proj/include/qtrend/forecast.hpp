#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtrend/events.hpp"
#include "qtrend/record.hpp"
#include "qtrend/train.hpp"

namespace qtrend {

// What-if inputs for the forecast horizon: assumed future events plus the
// sentiment level they modulate. Event ranges must start after the last
// observed quarter.
struct ScenarioCalendar {
  EventCalendar events;
  double baseline_sentiment = 50.0;
};

// Mean of the last four observed effective scores; the default rollout level.
double default_baseline_sentiment(std::span<const QuarterlyRecord> history);

struct ForecastSeries {
  Period start;                                            // first forecast quarter
  std::vector<std::array<double, kNumFinancial>> values;   // denormalized, one row per quarter
  std::vector<double> assumed_sentiment;                   // exogenous channel, 0..100
  std::vector<double> combined_index;                      // equal-weight trend curve in [0,1]

  int horizon() const { return static_cast<int>(values.size()); }
  Period period_at(int k) const;
};

// Recursive rollout: each predicted quarter feeds the next step's input, with
// the sentiment channel overwritten by the scenario (it is an input, not a
// modeled output). `history` must cover at least the model window.
ForecastSeries roll_forward(const TrainedModel& model, std::span<const QuarterlyRecord> history,
                            int horizon, const ScenarioCalendar& scenario);

// Per-series min-max over the horizon (flat series pin to 0.5), averaged with
// equal weights.
std::vector<double> combined_index(std::span<const std::array<double, kNumFinancial>> values);

enum class ExtremumKind { peak, trough };

struct Extremum {
  Period period;
  ExtremumKind kind;

  bool operator==(const Extremum&) const = default;
};

// Strict interior local extrema; plateaus yield nothing and endpoints are
// never reported. Needs at least 3 points.
std::vector<Extremum> find_extrema(std::span<const double> index, const Period& start);

// Forecast table: period,<8 financials>,assumed_sentiment,combined_index.
std::string write_forecast_text(const ForecastSeries& series);
void write_forecast(const std::string& path, const ForecastSeries& series);
ForecastSeries load_forecast(const std::string& path);

// Scenario file: calendar-style event blocks plus an optional block holding
// just "baseline_sentiment = <value>". An unset baseline falls back to
// default_baseline_sentiment(history).
struct ScenarioFile {
  EventCalendar events;
  std::optional<double> baseline_sentiment;
};

ScenarioFile parse_scenario_text(const std::string& text, const std::string& origin = "<string>");
ScenarioFile load_scenario(const std::string& path);

}  // namespace qtrend
