#pragma once

#include <array>
#include <span>
#include <vector>

#include "qtrend/record.hpp"

namespace qtrend {

// Per-feature min/max over the fitted records. A feature with min == max is
// degenerate: it normalizes to 0.5 and denormalizes back to the stored value.
struct FeatureScaler {
  struct Range {
    double min = 0.0;
    double max = 0.0;
    bool degenerate() const { return min == max; }
  };
  std::array<Range, kNumFeatures> ranges{};

  double normalize_one(int feature, double x) const {
    const Range& r = ranges[static_cast<size_t>(feature)];
    if (r.degenerate()) return 0.5;
    return (x - r.min) / (r.max - r.min);
  }
  double denormalize_one(int feature, double y) const {
    const Range& r = ranges[static_cast<size_t>(feature)];
    if (r.degenerate()) return r.min;
    return r.min + y * (r.max - r.min);
  }
};

// Requires >= 2 records, all with effective_sentiment. Fitted only on the
// records given (never on forecast output).
FeatureScaler fit_scaler(std::span<const QuarterlyRecord> records);

// Channel order: the 8 financials then effective sentiment.
std::array<double, kNumFeatures> record_features(const QuarterlyRecord& r);

std::array<double, kNumFeatures> normalize(const std::array<double, kNumFeatures>& v,
                                           const FeatureScaler& s);
std::array<double, kNumFinancial> denormalize(const std::array<double, kNumFinancial>& v,
                                              const FeatureScaler& s);

}  // namespace qtrend
