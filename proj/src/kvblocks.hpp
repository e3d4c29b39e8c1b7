#pragma once

#include <map>
#include <string>
#include <vector>

#include "qtrend/events.hpp"

// Internal helpers for the key=value block formats (calendar and scenario
// files).
namespace qtrend::detail {

struct KvBlock {
  int line_no = 0;  // first line of the block
  std::map<std::string, std::string> kv;
};

// Blank-line separated blocks of "key = value" lines; '#' comments skipped.
std::vector<KvBlock> parse_kv_blocks(const std::string& text, const std::string& origin);

EventSpec event_from_kv(const KvBlock& block, const std::string& origin);

}  // namespace qtrend::detail
