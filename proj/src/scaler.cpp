#include "qtrend/scaler.hpp"

#include <stdexcept>

namespace qtrend {

std::array<double, kNumFeatures> record_features(const QuarterlyRecord& r) {
  std::array<double, kNumFeatures> v{};
  for (int f = 0; f < kNumFinancial; ++f) v[static_cast<size_t>(f)] = r.financial(f);
  if (!r.effective_sentiment)
    throw std::runtime_error("record " + r.period.str() + " has no effective sentiment");
  v[kSentimentChannel] = *r.effective_sentiment;
  return v;
}

FeatureScaler fit_scaler(std::span<const QuarterlyRecord> records) {
  if (records.size() < 2)
    throw std::invalid_argument("fit_scaler needs at least 2 records, got " +
                                std::to_string(records.size()));
  FeatureScaler s;
  bool first = true;
  for (const auto& r : records) {
    auto v = record_features(r);  // throws if sentiment absent
    for (int f = 0; f < kNumFeatures; ++f) {
      auto& range = s.ranges[static_cast<size_t>(f)];
      double x = v[static_cast<size_t>(f)];
      if (first) {
        range.min = range.max = x;
      } else {
        if (x < range.min) range.min = x;
        if (x > range.max) range.max = x;
      }
    }
    first = false;
  }
  return s;
}

std::array<double, kNumFeatures> normalize(const std::array<double, kNumFeatures>& v,
                                           const FeatureScaler& s) {
  std::array<double, kNumFeatures> out{};
  for (int f = 0; f < kNumFeatures; ++f)
    out[static_cast<size_t>(f)] = s.normalize_one(f, v[static_cast<size_t>(f)]);
  return out;
}

std::array<double, kNumFinancial> denormalize(const std::array<double, kNumFinancial>& v,
                                              const FeatureScaler& s) {
  std::array<double, kNumFinancial> out{};
  for (int f = 0; f < kNumFinancial; ++f)
    out[static_cast<size_t>(f)] = s.denormalize_one(f, v[static_cast<size_t>(f)]);
  return out;
}

}  // namespace qtrend
