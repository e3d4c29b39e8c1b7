#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace qtrend {

// One fiscal quarter, "YYYY QN" in all file formats.
struct Period {
  int year = 0;
  int quarter = 0;  // 1..4

  auto operator<=>(const Period&) const = default;

  Period next() const { return quarter == 4 ? Period{year + 1, 1} : Period{year, quarter + 1}; }

  // Number of quarters from `from` to *this (negative if earlier).
  int quarters_since(const Period& from) const {
    return (year - from.year) * 4 + (quarter - from.quarter);
  }

  std::string str() const;
};

inline constexpr int kMinYear = 1998;
inline constexpr int kMaxYear = 2100;

// Accepts exactly "<year> Q<digit>"; throws std::invalid_argument naming the
// offending token otherwise.
Period parse_period(std::string_view text);

}  // namespace qtrend
