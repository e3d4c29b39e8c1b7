#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kvblocks.hpp"
#include "qtrend/forecast.hpp"
#include "qtrend/numfmt.hpp"

namespace qtrend {

ScenarioFile parse_scenario_text(const std::string& text, const std::string& origin) {
  ScenarioFile scenario;
  std::vector<EventSpec> events;
  for (const auto& block : detail::parse_kv_blocks(text, origin)) {
    if (block.kv.size() == 1 && block.kv.count("baseline_sentiment")) {
      if (scenario.baseline_sentiment)
        throw std::runtime_error(origin + ":" + std::to_string(block.line_no) +
                                 ": baseline_sentiment set twice");
      auto v = parse_double(block.kv.at("baseline_sentiment"));
      if (!v || !std::isfinite(*v) || *v < 0.0 || *v > 100.0)
        throw std::runtime_error(origin + ":" + std::to_string(block.line_no) +
                                 ": baseline_sentiment must be a real in [0,100]");
      scenario.baseline_sentiment = *v;
      continue;
    }
    events.push_back(detail::event_from_kv(block, origin));
  }
  try {
    scenario.events = EventCalendar(std::move(events));
  } catch (const std::exception& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
  return scenario;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str(), path);
}

}  // namespace qtrend
