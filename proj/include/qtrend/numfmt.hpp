#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace qtrend {

// Shortest round-trip decimal form ("15736", "0.01", "81.17").
// Locale-independent; used for all table output so files are byte-stable.
std::string format_double(double v);

// Hex float form ("1.91cp+13" style), bit-exact across save/load.
std::string format_double_hex(double v);

// Strict full-token parses; nullopt on trailing garbage or empty input.
std::optional<double> parse_double(std::string_view s);
std::optional<double> parse_double_hex(std::string_view s);
std::optional<long> parse_long(std::string_view s);

std::string_view trim(std::string_view s);

}  // namespace qtrend
