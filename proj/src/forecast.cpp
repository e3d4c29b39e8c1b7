#include "qtrend/forecast.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qtrend/numfmt.hpp"

namespace qtrend {

double default_baseline_sentiment(std::span<const QuarterlyRecord> history) {
  if (history.empty()) throw std::invalid_argument("no history records");
  size_t n = std::min<size_t>(4, history.size());
  double acc = 0.0;
  for (size_t i = history.size() - n; i < history.size(); ++i) {
    if (!history[i].effective_sentiment)
      throw std::runtime_error("record " + history[i].period.str() +
                               " has no effective sentiment");
    acc += *history[i].effective_sentiment;
  }
  return acc / static_cast<double>(n);
}

Period ForecastSeries::period_at(int k) const {
  Period p = start;
  for (int i = 0; i < k; ++i) p = p.next();
  return p;
}

namespace {

void check_finite(double v, const Period& p, const char* what) {
  if (!std::isfinite(v))
    throw std::runtime_error(std::string("forecast produced non-finite ") + what + " at " +
                             p.str());
}

}  // namespace

ForecastSeries roll_forward(const TrainedModel& model, std::span<const QuarterlyRecord> history,
                            int horizon, const ScenarioCalendar& scenario) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (static_cast<int>(history.size()) < model.window)
    throw std::invalid_argument("need at least window=" + std::to_string(model.window) +
                                " history records, got " + std::to_string(history.size()));
  if (model.models.empty()) throw std::invalid_argument("model has no parameters");

  Period last_observed = history.back().period;
  for (const auto& e : scenario.events.events())
    if (e.start <= last_observed)
      throw std::runtime_error("scenario event '" + e.name + "' starts " + e.start.str() +
                               ", not after the last observed quarter " + last_observed.str());
  if (scenario.baseline_sentiment < 0.0 || scenario.baseline_sentiment > 100.0)
    throw std::invalid_argument("baseline sentiment must be in [0,100]");

  // Rolling window of normalized 9-channel rows, oldest first.
  std::vector<std::array<double, kNumFeatures>> window;
  window.reserve(static_cast<size_t>(model.window));
  for (size_t i = history.size() - static_cast<size_t>(model.window); i < history.size(); ++i)
    window.push_back(normalize(record_features(history[i]), model.scaler));

  ForecastSeries out;
  out.start = last_observed.next();

  Period p = last_observed;
  for (int k = 0; k < horizon; ++k) {
    p = p.next();

    // Exogenous sentiment for this quarter, before normalization.
    double sentiment =
        apply_intervention(scenario.baseline_sentiment, active_events(scenario.events, p));
    double sentiment_norm = model.scaler.normalize_one(kSentimentChannel, sentiment);

    std::array<double, kNumFeatures> next_norm{};
    if (model.mode == TrainMode::multivariate) {
      Matrix seq(model.window, kNumFeatures);
      for (int t = 0; t < model.window; ++t)
        for (int c = 0; c < kNumFeatures; ++c)
          seq(t, c) = window[static_cast<size_t>(t)][static_cast<size_t>(c)];
      Vector pred = forward(model.models[0], seq).prediction;
      for (int c = 0; c < kNumFinancial; ++c)
        next_norm[static_cast<size_t>(c)] = pred[static_cast<size_t>(c)];
    } else {
      for (int s = 0; s < kNumFinancial; ++s) {
        Matrix seq(model.window, 2);
        for (int t = 0; t < model.window; ++t) {
          seq(t, 0) = window[static_cast<size_t>(t)][static_cast<size_t>(s)];
          seq(t, 1) = window[static_cast<size_t>(t)][kSentimentChannel];
        }
        next_norm[static_cast<size_t>(s)] =
            forward(model.models[static_cast<size_t>(s)], seq).prediction[0];
      }
    }
    next_norm[kSentimentChannel] = sentiment_norm;  // predicted sentiment is discarded

    std::array<double, kNumFinancial> fin{};
    for (int c = 0; c < kNumFinancial; ++c) {
      fin[static_cast<size_t>(c)] =
          model.scaler.denormalize_one(c, next_norm[static_cast<size_t>(c)]);
      check_finite(fin[static_cast<size_t>(c)], p, kFinancialColumns[static_cast<size_t>(c)]);
    }
    out.values.push_back(fin);
    out.assumed_sentiment.push_back(sentiment);

    window.erase(window.begin());
    window.push_back(next_norm);
  }

  out.combined_index = combined_index(out.values);
  return out;
}

std::vector<double> combined_index(std::span<const std::array<double, kNumFinancial>> values) {
  if (values.empty()) throw std::invalid_argument("combined_index: empty horizon");
  size_t h = values.size();
  std::array<double, kNumFinancial> lo{}, hi{};
  for (int s = 0; s < kNumFinancial; ++s) {
    lo[static_cast<size_t>(s)] = hi[static_cast<size_t>(s)] = values[0][static_cast<size_t>(s)];
    for (size_t k = 1; k < h; ++k) {
      double v = values[k][static_cast<size_t>(s)];
      lo[static_cast<size_t>(s)] = std::min(lo[static_cast<size_t>(s)], v);
      hi[static_cast<size_t>(s)] = std::max(hi[static_cast<size_t>(s)], v);
    }
  }
  std::vector<double> index(h, 0.0);
  for (size_t k = 0; k < h; ++k) {
    double acc = 0.0;
    for (int s = 0; s < kNumFinancial; ++s) {
      double span = hi[static_cast<size_t>(s)] - lo[static_cast<size_t>(s)];
      acc += span == 0.0 ? 0.5 : (values[k][static_cast<size_t>(s)] - lo[static_cast<size_t>(s)]) / span;
    }
    index[k] = acc / kNumFinancial;
  }
  return index;
}

std::vector<Extremum> find_extrema(std::span<const double> index, const Period& start) {
  if (index.size() < 3)
    throw std::invalid_argument("find_extrema needs at least 3 points, got " +
                                std::to_string(index.size()));
  std::vector<Extremum> out;
  Period p = start;
  for (size_t i = 1; i + 1 < index.size(); ++i) {
    p = p.next();
    if (index[i] > index[i - 1] && index[i] > index[i + 1])
      out.push_back({p, ExtremumKind::peak});
    else if (index[i] < index[i - 1] && index[i] < index[i + 1])
      out.push_back({p, ExtremumKind::trough});
  }
  return out;
}

std::string write_forecast_text(const ForecastSeries& series) {
  std::string out = "period";
  for (const char* name : kFinancialColumns) {
    out += ',';
    out += name;
  }
  out += ",assumed_sentiment,combined_index\n";
  for (int k = 0; k < series.horizon(); ++k) {
    out += series.period_at(k).str();
    for (int c = 0; c < kNumFinancial; ++c) {
      out += ',';
      out += format_double(series.values[static_cast<size_t>(k)][static_cast<size_t>(c)]);
    }
    out += ',';
    out += format_double(series.assumed_sentiment[static_cast<size_t>(k)]);
    out += ',';
    out += format_double(series.combined_index[static_cast<size_t>(k)]);
    out += '\n';
  }
  return out;
}

void write_forecast(const std::string& path, const ForecastSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << write_forecast_text(series);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ForecastSeries load_forecast(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open forecast file: " + path);

  std::string expected_header = "period";
  for (const char* name : kFinancialColumns) {
    expected_header += ',';
    expected_header += name;
  }
  expected_header += ",assumed_sentiment,combined_index";

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header)
    throw std::runtime_error(path + ":1: not a forecast table (unexpected header)");

  ForecastSeries series;
  int line_no = 1;
  bool first = true;
  Period prev;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::istringstream ss(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != kNumFinancial + 3)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(kNumFinancial + 3) + " cells");
    Period p = parse_period(cells[0]);
    if (first) {
      series.start = p;
      first = false;
    } else if (p != prev.next()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": forecast periods must be consecutive");
    }
    prev = p;
    auto num = [&](size_t i) {
      auto v = parse_double(cells[i]);
      if (!v)
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad number '" +
                                 cells[i] + "'");
      return *v;
    };
    std::array<double, kNumFinancial> fin{};
    for (int c = 0; c < kNumFinancial; ++c) fin[static_cast<size_t>(c)] = num(static_cast<size_t>(c + 1));
    series.values.push_back(fin);
    series.assumed_sentiment.push_back(num(kNumFinancial + 1));
    series.combined_index.push_back(num(kNumFinancial + 2));
  }
  if (series.values.empty()) throw std::runtime_error(path + ": no forecast rows");
  return series;
}

}  // namespace qtrend
