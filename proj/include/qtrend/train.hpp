#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtrend/lstm.hpp"
#include "qtrend/record.hpp"
#include "qtrend/scaler.hpp"

namespace qtrend {

enum class TrainMode {
  multivariate,  // one model, 9 channels in -> 9 channels out
  per_series,    // 8 models, each [series, sentiment] -> series
};

TrainMode parse_train_mode(const std::string& s);
const char* train_mode_name(TrainMode m);

struct TrainingConfig {
  int window = 8;
  int hidden = 32;
  int epochs = 2000;
  double learning_rate = 0.005;
  double clip = 1.0;
  uint64_t seed = 42;
  TrainMode mode = TrainMode::multivariate;
  double validation_fraction = 0.0;  // chronological tail, in [0, 0.5)

  void validate() const;  // throws on out-of-range fields
};

struct TrainReport {
  std::vector<double> epoch_loss;                      // mean over models in per-series mode
  std::vector<std::vector<double>> per_model_loss;     // one curve per model
  std::optional<double> validation_loss;               // set when validation_fraction > 0
  std::string text() const;                            // "epoch,loss" lines + summary
};

// A trained model plus everything needed to forecast with it.
struct TrainedModel {
  TrainMode mode = TrainMode::multivariate;
  int window = 0;
  FeatureScaler scaler;                // fitted on the training split
  std::vector<LstmParameters> models;  // 1 (multivariate) or 8 (per-series)

  bool operator==(const TrainedModel&) const = default;
};

// Fits the scaler on the training split, windows the normalized series, and
// runs full-batch clipped SGD for config.epochs. Deterministic given the seed;
// in per-series mode model s is seeded with seed+s and the 8 models train
// concurrently.
std::pair<TrainedModel, TrainReport> train(std::span<const QuarterlyRecord> records,
                                           const TrainingConfig& config);

}  // namespace qtrend
