#include "qtrend/train.hpp"

#include <cmath>
#include <stdexcept>

#include "qtrend/batch.hpp"
#include "qtrend/numfmt.hpp"
#include "qtrend/optimizer.hpp"
#include "qtrend/windows.hpp"

namespace qtrend {

TrainMode parse_train_mode(const std::string& s) {
  if (s == "multivariate") return TrainMode::multivariate;
  if (s == "per-series" || s == "per_series") return TrainMode::per_series;
  throw std::invalid_argument("mode must be multivariate|per-series, got '" + s + "'");
}

const char* train_mode_name(TrainMode m) {
  return m == TrainMode::multivariate ? "multivariate" : "per-series";
}

void TrainingConfig::validate() const {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (hidden < 1) throw std::invalid_argument("hidden must be >= 1");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be > 0");
  if (!(clip > 0.0)) throw std::invalid_argument("clip must be > 0");
  if (!(validation_fraction >= 0.0) || validation_fraction >= 0.5)
    throw std::invalid_argument("validation fraction must be in [0, 0.5)");
}

std::string TrainReport::text() const {
  std::string out = "epoch,loss\n";
  for (size_t e = 0; e < epoch_loss.size(); ++e)
    out += std::to_string(e + 1) + "," + format_double(epoch_loss[e]) + "\n";
  if (validation_loss)
    out += "validation," + format_double(*validation_loss) + "\n";
  return out;
}

namespace {

// Model channel layout per mode. Multivariate trains on all 9 columns; a
// per-series model s sees [series s, sentiment] and predicts series s.
std::vector<WindowSample> slice_samples(std::span<const WindowSample> full, int series) {
  std::vector<WindowSample> out;
  out.reserve(full.size());
  for (const auto& s : full) {
    WindowSample w;
    w.input = Matrix(s.input.rows, 2);
    for (int t = 0; t < s.input.rows; ++t) {
      w.input(t, 0) = s.input(t, series);
      w.input(t, 1) = s.input(t, kSentimentChannel);
    }
    w.target = {s.target[static_cast<size_t>(series)]};
    out.push_back(std::move(w));
  }
  return out;
}

struct Split {
  std::vector<WindowSample> train;
  std::vector<WindowSample> val;
};

Split split_windows(std::vector<WindowSample> samples, double validation_fraction) {
  Split s;
  size_t n_val = static_cast<size_t>(std::floor(validation_fraction * static_cast<double>(samples.size())));
  size_t n_train = samples.size() - n_val;
  s.train.assign(std::make_move_iterator(samples.begin()),
                 std::make_move_iterator(samples.begin() + static_cast<long>(n_train)));
  s.val.assign(std::make_move_iterator(samples.begin() + static_cast<long>(n_train)),
               std::make_move_iterator(samples.end()));
  return s;
}

double mean_validation_loss(const LstmParameters& params, std::span<const WindowSample> val) {
  double acc = 0.0;
  for (const auto& s : val) acc += mse_loss(forward(params, s.input).prediction, s.target);
  return acc / static_cast<double>(val.size());
}

// SGD epochs on one model; loss curve returned, non-finite loss aborts.
std::vector<double> fit(LstmParameters& params, std::span<const WindowSample> train_samples,
                        const TrainingConfig& config) {
  std::vector<double> curve;
  curve.reserve(static_cast<size_t>(config.epochs));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    BatchResult batch = batch_loss_gradient(params, train_samples);
    if (!std::isfinite(batch.mean_loss))
      throw std::runtime_error("training diverged: non-finite loss at epoch " +
                               std::to_string(epoch + 1));
    sgd_step(params, batch.gradient, config.learning_rate, config.clip);
    curve.push_back(batch.mean_loss);
  }
  return curve;
}

}  // namespace

std::pair<TrainedModel, TrainReport> train(std::span<const QuarterlyRecord> records,
                                           const TrainingConfig& config) {
  config.validate();
  if (static_cast<int>(records.size()) < config.window + 2)
    throw std::invalid_argument("need at least window+2=" + std::to_string(config.window + 2) +
                                " records, got " + std::to_string(records.size()));

  int n = static_cast<int>(records.size());
  int n_windows = n - config.window;
  int n_val = static_cast<int>(std::floor(config.validation_fraction * n_windows));
  int last_train_record = n - n_val;  // records feeding training windows

  TrainedModel model;
  model.mode = config.mode;
  model.window = config.window;
  model.scaler = fit_scaler(records.subspan(0, static_cast<size_t>(last_train_record)));

  Matrix series(n, kNumFeatures);
  for (int r = 0; r < n; ++r) {
    auto v = normalize(record_features(records[static_cast<size_t>(r)]), model.scaler);
    for (int c = 0; c < kNumFeatures; ++c) series(r, c) = v[static_cast<size_t>(c)];
  }
  auto windows = make_windows(series, config.window);

  TrainReport report;
  if (config.mode == TrainMode::multivariate) {
    Split split = split_windows(std::move(windows), config.validation_fraction);
    SplitMix64 rng(config.seed);
    LstmParameters params =
        init_parameters({kNumFeatures, config.hidden, kNumFeatures}, rng);
    report.epoch_loss = fit(params, split.train, config);
    report.per_model_loss = {report.epoch_loss};
    if (!split.val.empty()) report.validation_loss = mean_validation_loss(params, split.val);
    model.models.push_back(std::move(params));
  } else {
    // 8 independent models over immutable slices; training order does not
    // matter, so the loop is safe to parallelize.
    std::vector<Split> splits(kNumFinancial);
    model.models.resize(kNumFinancial);
    report.per_model_loss.resize(kNumFinancial);
    std::vector<std::string> errors(kNumFinancial);
    for (int s = 0; s < kNumFinancial; ++s) {
      splits[static_cast<size_t>(s)] =
          split_windows(slice_samples(windows, s), config.validation_fraction);
      SplitMix64 rng(config.seed + static_cast<uint64_t>(s));
      model.models[static_cast<size_t>(s)] = init_parameters({2, config.hidden, 1}, rng);
    }
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < kNumFinancial; ++s) {
      try {
        report.per_model_loss[static_cast<size_t>(s)] =
            fit(model.models[static_cast<size_t>(s)], splits[static_cast<size_t>(s)].train, config);
      } catch (const std::exception& e) {
        errors[static_cast<size_t>(s)] = e.what();
      }
    }
    for (int s = 0; s < kNumFinancial; ++s)
      if (!errors[static_cast<size_t>(s)].empty())
        throw std::runtime_error(std::string(kFinancialColumns[static_cast<size_t>(s)]) + ": " +
                                 errors[static_cast<size_t>(s)]);

    report.epoch_loss.assign(static_cast<size_t>(config.epochs), 0.0);
    for (int e = 0; e < config.epochs; ++e) {
      for (int s = 0; s < kNumFinancial; ++s)
        report.epoch_loss[static_cast<size_t>(e)] +=
            report.per_model_loss[static_cast<size_t>(s)][static_cast<size_t>(e)];
      report.epoch_loss[static_cast<size_t>(e)] /= kNumFinancial;
    }
    if (!splits[0].val.empty()) {
      double acc = 0.0;
      for (int s = 0; s < kNumFinancial; ++s)
        acc += mean_validation_loss(model.models[static_cast<size_t>(s)],
                                    splits[static_cast<size_t>(s)].val);
      report.validation_loss = acc / kNumFinancial;
    }
  }
  return {std::move(model), std::move(report)};
}

}  // namespace qtrend
