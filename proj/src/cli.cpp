#include "qtrend/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "qtrend/checkpoint.hpp"
#include "qtrend/events.hpp"
#include "qtrend/forecast.hpp"
#include "qtrend/numfmt.hpp"
#include "qtrend/record.hpp"
#include "qtrend/sentiment.hpp"
#include "qtrend/train.hpp"

namespace fs = std::filesystem;

namespace qtrend {

namespace {

// All outputs land via temp-file + rename so a failed run leaves nothing
// half-written behind.
void write_file_atomic(const std::string& path, const std::string& content) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

void print_warnings(const LoadResult& loaded) {
  for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
}

struct CommonOpts {
  std::string out;
  std::string fixture;
  std::string calendar_path;
  std::string lexicon_path;
  std::string scenario_path;
  bool allow_gaps = false;
};

LoadResult load_input_records(const std::string& records_path, const CommonOpts& opts) {
  if (!opts.fixture.empty()) {
    if (!records_path.empty())
      throw std::runtime_error("give either a records file or --fixture, not both");
    return LoadResult{fixture_by_name(opts.fixture), 0, {}};
  }
  if (records_path.empty())
    throw std::runtime_error("no records file given (or use --fixture table2)");
  LoadResult loaded = load_records(records_path, {opts.allow_gaps});
  print_warnings(loaded);
  return loaded;
}

EventCalendar load_calendar_opt(const CommonOpts& opts) {
  return opts.calendar_path.empty() ? builtin_calendar() : load_calendar(opts.calendar_path);
}

Lexicon load_lexicon_opt(const CommonOpts& opts) {
  return opts.lexicon_path.empty() ? builtin_lexicon() : load_lexicon(opts.lexicon_path);
}

std::string ingest_summary(const LoadResult& loaded) {
  const auto& recs = loaded.records;
  return std::to_string(recs.size()) + " records, " + recs.front().period.str() + " ... " +
         recs.back().period.str() + ", " + std::to_string(loaded.interpolated) + " gaps";
}

int cmd_ingest(const std::string& records_path, const CommonOpts& opts) {
  LoadResult loaded = load_input_records(records_path, opts);
  write_file_atomic(opts.out, write_records_text(loaded.records));
  std::cout << ingest_summary(loaded) << "\n";
  return 0;
}

int cmd_score(const std::string& transcripts_dir, const CommonOpts& opts) {
  Lexicon lexicon = load_lexicon_opt(opts);
  if (!fs::is_directory(transcripts_dir))
    throw std::runtime_error("not a directory: " + transcripts_dir);

  std::map<Period, double> scores;
  for (const auto& entry : fs::directory_iterator(transcripts_dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (entry.path().extension() != ".txt") continue;
    // expected name: YYYY-QN.txt
    std::string stem = entry.path().stem().string();
    auto dash = stem.find('-');
    bool ok = dash != std::string::npos;
    Period p;
    if (ok) {
      try {
        p = parse_period(stem.substr(0, dash) + " " + stem.substr(dash + 1));
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) {
      std::cerr << "warning: skipping '" << name << "' (transcripts are named YYYY-QN.txt)\n";
      continue;
    }
    std::ifstream in(entry.path(), std::ios::binary);
    if (!in) throw std::runtime_error("cannot open transcript: " + entry.path().string());
    std::ostringstream ss;
    ss << in.rdbuf();
    scores[p] = score(ss.str(), lexicon);
  }
  if (scores.empty())
    throw std::runtime_error("no transcripts named YYYY-QN.txt in " + transcripts_dir);

  std::string out = "period,sentiment_score\n";
  for (const auto& [p, s] : scores) out += p.str() + "," + format_double(s) + "\n";
  write_file_atomic(opts.out, out);
  std::cout << scores.size() << " transcripts scored, " << scores.begin()->first.str() << " ... "
            << scores.rbegin()->first.str() << "\n";
  return 0;
}

int cmd_enrich(const std::string& records_path, const CommonOpts& opts) {
  LoadResult loaded = load_input_records(records_path, opts);
  EventCalendar calendar = load_calendar_opt(opts);
  auto enriched = enrich(std::move(loaded.records), calendar);
  write_file_atomic(opts.out, write_records_text(enriched));
  int with_events = 0;
  for (const auto& r : enriched)
    if (!r.events.empty()) ++with_events;
  std::cout << enriched.size() << " records enriched, " << with_events
            << " quarters with active events\n";
  return 0;
}

void require_effective(const std::vector<QuarterlyRecord>& records) {
  for (const auto& r : records)
    if (!r.effective_sentiment)
      throw std::runtime_error("record " + r.period.str() +
                               " has no effective sentiment score; run 'enrich' first");
}

int cmd_train(const std::string& records_path, const TrainingConfig& config,
              const CommonOpts& opts) {
  LoadResult loaded = load_input_records(records_path, opts);
  require_effective(loaded.records);
  auto [model, report] = train(loaded.records, config);
  write_file_atomic(opts.out + ".report", report.text());
  save_checkpoint(opts.out, model);
  std::cout << "trained " << model.models.size() << " model(s) ("
            << train_mode_name(model.mode) << "), " << config.epochs << " epochs, loss "
            << format_double(report.epoch_loss.front()) << " -> "
            << format_double(report.epoch_loss.back());
  if (report.validation_loss)
    std::cout << ", validation " << format_double(*report.validation_loss);
  std::cout << "\n";
  return 0;
}

std::string extrema_summary(const ForecastSeries& series) {
  std::string out;
  if (series.horizon() >= 3) {
    auto extrema = find_extrema(series.combined_index, series.start);
    if (extrema.empty()) {
      out += "no interior peaks or troughs\n";
    } else {
      for (const auto& e : extrema)
        out += std::string(e.kind == ExtremumKind::peak ? "peak" : "trough") + " " +
               e.period.str() + "\n";
    }
  } else {
    out += "horizon too short for extrema detection\n";
  }
  return out;
}

int cmd_forecast(const std::string& checkpoint_path, const std::string& records_path, int horizon,
                 const CommonOpts& opts) {
  TrainedModel model = load_checkpoint(checkpoint_path);
  LoadResult loaded = load_input_records(records_path, opts);
  require_effective(loaded.records);

  ScenarioCalendar scenario;
  std::string baseline_note;
  if (!opts.scenario_path.empty()) {
    ScenarioFile file = load_scenario(opts.scenario_path);
    scenario.events = std::move(file.events);
    if (file.baseline_sentiment) {
      scenario.baseline_sentiment = *file.baseline_sentiment;
      baseline_note = "from scenario file";
    } else {
      scenario.baseline_sentiment = default_baseline_sentiment(loaded.records);
      baseline_note = "mean of last 4 observed quarters (scenario file sets no baseline)";
    }
  } else {
    scenario.baseline_sentiment = default_baseline_sentiment(loaded.records);
    baseline_note = "mean of last 4 observed quarters (no scenario given)";
  }

  ForecastSeries series = roll_forward(model, loaded.records, horizon, scenario);
  write_file_atomic(opts.out, write_forecast_text(series));

  std::cout << "forecast " << series.start.str() << " ... "
            << series.period_at(series.horizon() - 1).str() << " (" << horizon << " quarters)\n";
  std::cout << "baseline sentiment " << format_double(scenario.baseline_sentiment) << " ("
            << baseline_note << ")\n";
  std::cout << extrema_summary(series);
  return 0;
}

int cmd_report(const std::string& forecast_path, const CommonOpts& opts) {
  ForecastSeries series = load_forecast(forecast_path);
  fs::path dir(opts.out);
  if (!fs::exists(dir)) fs::create_directories(dir);
  if (!fs::is_directory(dir)) throw std::runtime_error("--out must be a directory: " + opts.out);

  for (int s = 0; s < kNumFinancial; ++s) {
    std::string body = "period,value\n";
    for (int k = 0; k < series.horizon(); ++k)
      body += series.period_at(k).str() + "," +
              format_double(series.values[static_cast<size_t>(k)][static_cast<size_t>(s)]) + "\n";
    write_file_atomic((dir / (std::string("report_") + kFinancialColumns[static_cast<size_t>(s)] +
                              ".csv")).string(),
                      body);
  }
  std::string body = "period,combined_index\n";
  for (int k = 0; k < series.horizon(); ++k)
    body += series.period_at(k).str() + "," +
            format_double(series.combined_index[static_cast<size_t>(k)]) + "\n";
  write_file_atomic((dir / "report_combined_index.csv").string(), body);
  write_file_atomic((dir / "report_extrema.txt").string(), extrema_summary(series));

  std::cout << "wrote " << (kNumFinancial + 2) << " report files to " << dir.string() << "\n";
  return 0;
}

int cmd_pipeline(const std::string& records_path, const TrainingConfig& config, int horizon,
                 const CommonOpts& opts) {
  fs::path dir(opts.out);
  if (!fs::exists(dir)) fs::create_directories(dir);
  if (!fs::is_directory(dir)) throw std::runtime_error("--out must be a directory: " + opts.out);

  LoadResult loaded = load_input_records(records_path, opts);
  write_file_atomic((dir / "records.csv").string(), write_records_text(loaded.records));
  std::cout << "[ingest] " << ingest_summary(loaded) << "\n";

  EventCalendar calendar = load_calendar_opt(opts);
  auto enriched = enrich(std::move(loaded.records), calendar);
  write_file_atomic((dir / "enriched.csv").string(), write_records_text(enriched));
  std::cout << "[enrich] done\n";

  auto [model, report] = train(enriched, config);
  write_file_atomic((dir / "training.report").string(), report.text());
  save_checkpoint((dir / "model.ckpt").string(), model);
  std::cout << "[train] loss " << format_double(report.epoch_loss.front()) << " -> "
            << format_double(report.epoch_loss.back()) << "\n";

  ScenarioCalendar scenario;
  std::string baseline_note = "mean of last 4 observed quarters";
  if (!opts.scenario_path.empty()) {
    ScenarioFile file = load_scenario(opts.scenario_path);
    scenario.events = std::move(file.events);
    if (file.baseline_sentiment) {
      scenario.baseline_sentiment = *file.baseline_sentiment;
      baseline_note = "from scenario file";
    } else {
      scenario.baseline_sentiment = default_baseline_sentiment(enriched);
    }
  } else {
    scenario.baseline_sentiment = default_baseline_sentiment(enriched);
  }
  ForecastSeries series = roll_forward(model, enriched, horizon, scenario);
  write_file_atomic((dir / "forecast.csv").string(), write_forecast_text(series));
  std::cout << "[forecast] " << series.start.str() << " ... "
            << series.period_at(series.horizon() - 1).str() << ", baseline sentiment "
            << format_double(scenario.baseline_sentiment) << " (" << baseline_note << ")\n";

  CommonOpts report_opts = opts;
  cmd_report((dir / "forecast.csv").string(), report_opts);
  std::cout << "[report] " << extrema_summary(series);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Quarterly financial trend forecasting with event-weighted sentiment"};
  app.require_subcommand(1);

  CommonOpts opts;
  TrainingConfig config;
  std::string records_path, transcripts_dir, checkpoint_path, forecast_path;
  std::string mode_name = "multivariate";
  int horizon = 24;

  auto add_out = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("--out", opts.out, what)->required();
  };
  auto add_gaps = [&](CLI::App* cmd) {
    cmd->add_flag("--allow-gaps", opts.allow_gaps,
                  "interpolate interior gaps instead of rejecting them");
  };
  auto add_fixture = [&](CLI::App* cmd) {
    cmd->add_option("--fixture", opts.fixture, "use a bundled dataset (table2) instead of a file");
  };
  auto add_train_flags = [&](CLI::App* cmd) {
    cmd->add_option("--window", config.window, "lookback quarters per sample");
    cmd->add_option("--hidden", config.hidden, "hidden units");
    cmd->add_option("--epochs", config.epochs, "training epochs");
    cmd->add_option("--lr", config.learning_rate, "learning rate");
    cmd->add_option("--clip", config.clip, "global gradient norm clip");
    cmd->add_option("--seed", config.seed, "rng seed");
    cmd->add_option("--mode", mode_name, "multivariate|per-series");
    cmd->add_option("--validation-fraction", config.validation_fraction,
                    "chronological tail held out for validation");
  };

  auto* ingest = app.add_subcommand("ingest", "validate a records file and write canonical form");
  ingest->add_option("records", records_path, "input records csv");
  add_fixture(ingest);
  add_gaps(ingest);
  add_out(ingest, "canonical records csv");

  auto* sc = app.add_subcommand("score", "score transcripts into per-quarter base sentiment");
  sc->add_option("transcripts", transcripts_dir, "directory of YYYY-QN.txt transcripts")
      ->required();
  sc->add_option("--lexicon", opts.lexicon_path, "lexicon file (default: bundled)");
  add_out(sc, "period,sentiment_score csv");

  auto* en = app.add_subcommand("enrich", "apply the event calendar to base sentiment scores");
  en->add_option("records", records_path, "records csv with sentiment_score");
  add_fixture(en);
  en->add_option("--calendar", opts.calendar_path, "event calendar file (default: bundled)");
  add_gaps(en);
  add_out(en, "enriched records csv");

  auto* tr = app.add_subcommand("train", "train the forecaster on enriched records");
  tr->add_option("records", records_path, "enriched records csv");
  add_fixture(tr);
  add_train_flags(tr);
  add_gaps(tr);
  add_out(tr, "checkpoint path (report lands beside it)");

  auto* fc = app.add_subcommand("forecast", "recursive multi-quarter forecast from a checkpoint");
  fc->add_option("checkpoint", checkpoint_path, "trained checkpoint")->required();
  fc->add_option("records", records_path, "enriched records csv");
  add_fixture(fc);
  fc->add_option("--horizon", horizon, "quarters to forecast");
  fc->add_option("--scenario", opts.scenario_path, "future event scenario file");
  add_gaps(fc);
  add_out(fc, "forecast table csv");

  auto* rp = app.add_subcommand("report", "split a forecast table into plot-ready files");
  rp->add_option("forecast", forecast_path, "forecast table csv")->required();
  add_out(rp, "output directory");

  auto* pl = app.add_subcommand("pipeline", "ingest, enrich, train, forecast and report in one go");
  pl->add_option("records", records_path, "records csv with sentiment_score");
  add_fixture(pl);
  pl->add_option("--calendar", opts.calendar_path, "event calendar file (default: bundled)");
  pl->add_option("--scenario", opts.scenario_path, "future event scenario file");
  pl->add_option("--horizon", horizon, "quarters to forecast");
  add_train_flags(pl);
  add_gaps(pl);
  add_out(pl, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    config.mode = parse_train_mode(mode_name);
    if (ingest->parsed()) return cmd_ingest(records_path, opts);
    if (sc->parsed()) return cmd_score(transcripts_dir, opts);
    if (en->parsed()) return cmd_enrich(records_path, opts);
    if (tr->parsed()) return cmd_train(records_path, config, opts);
    if (fc->parsed()) return cmd_forecast(checkpoint_path, records_path, horizon, opts);
    if (rp->parsed()) return cmd_report(forecast_path, opts);
    if (pl->parsed()) return cmd_pipeline(records_path, config, horizon, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qtrend
