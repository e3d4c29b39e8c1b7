#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qtrend/period.hpp"

namespace qtrend {

inline constexpr int kNumFinancial = 8;
inline constexpr int kNumFeatures = 9;  // 8 financial channels + sentiment
inline constexpr int kSentimentChannel = 8;

// Column order of every records table, and the channel order of all model
// feature vectors.
inline constexpr std::array<const char*, kNumFinancial> kFinancialColumns = {
    "net_sales",       "cost_of_sales",  "gross_profit",           "net_income",
    "eps",             "wafer_shipment", "income_from_operations", "operating_expenses"};

struct QuarterlyRecord {
  Period period;
  std::array<double, kNumFinancial> financials{};
  std::optional<double> base_sentiment;       // lexicon score before intervention
  std::vector<std::string> events;            // event labels, possibly empty
  std::optional<double> effective_sentiment;  // score after event intervention

  double& financial(int i) { return financials[static_cast<size_t>(i)]; }
  double financial(int i) const { return financials[static_cast<size_t>(i)]; }
};

struct LoadOptions {
  bool allow_gaps = false;  // interior gaps are linearly interpolated instead of rejected
};

struct LoadResult {
  std::vector<QuarterlyRecord> records;        // sorted, strictly increasing periods
  int interpolated = 0;                        // quarters synthesized for gaps
  std::vector<std::string> warnings;           // e.g. ignored shares_outstanding column
};

// CSV per the records table format. Throws std::runtime_error with line/column
// context on malformed input.
LoadResult load_records(const std::string& path, const LoadOptions& opts = {});
LoadResult parse_records_text(const std::string& text, const LoadOptions& opts = {},
                              const std::string& origin = "<string>");

// Canonical form: header + one row per record, shortest round-trip numbers,
// sentiment column carries effective score when present, else base.
std::string write_records_text(const std::vector<QuarterlyRecord>& records);
void write_records(const std::string& path, const std::vector<QuarterlyRecord>& records);

// Embedded 24-quarter sample series (1998 Q1 .. 2003 Q4) with per-quarter
// sentiment scores and event labels; base == effective as stored.
const std::vector<QuarterlyRecord>& sample_quarters_1998_2003();

// Names a bundled fixture ("table2" -> the 24-quarter sample).
const std::vector<QuarterlyRecord>& fixture_by_name(const std::string& name);

}  // namespace qtrend
