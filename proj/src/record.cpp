#include "qtrend/record.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qtrend/numfmt.hpp"

namespace qtrend {

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(trim(line.substr(start)));
      break;
    }
    out.emplace_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void fail_at(const std::string& origin, int line_no, const std::string& msg) {
  throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": " + msg);
}

struct HeaderLayout {
  std::vector<int> financial_col;  // file column index per financial channel
  int sentiment_col = -1;
  int events_col = -1;
  int shares_col = -1;  // recognized but ignored
  size_t expected_cells = 0;
};

HeaderLayout parse_header(const std::string& origin, const std::vector<std::string>& cells,
                          std::vector<std::string>& warnings) {
  HeaderLayout layout;
  layout.expected_cells = cells.size();
  std::vector<std::string> logical;  // header minus ignored columns
  std::vector<int> logical_col;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] == "shares_outstanding") {
      layout.shares_col = static_cast<int>(i);
      warnings.push_back("column 'shares_outstanding' is not modeled and was ignored");
      continue;
    }
    logical.push_back(cells[i]);
    logical_col.push_back(static_cast<int>(i));
  }

  std::vector<std::string> required = {"period"};
  for (const char* name : kFinancialColumns) required.emplace_back(name);

  if (logical.size() < required.size())
    fail_at(origin, 1, "header is missing columns (expected at least " +
                           std::to_string(required.size()) + ", got " +
                           std::to_string(logical.size()) + ")");
  for (size_t i = 0; i < required.size(); ++i) {
    if (logical[i] != required[i])
      fail_at(origin, 1,
              "header column " + std::to_string(i + 1) + " is '" + logical[i] + "', expected '" +
                  required[i] + "'");
  }
  layout.financial_col.resize(kNumFinancial);
  for (int f = 0; f < kNumFinancial; ++f) layout.financial_col[f] = logical_col[f + 1];

  size_t extra = logical.size() - required.size();
  if (extra >= 1) {
    if (logical[required.size()] != "sentiment_score")
      fail_at(origin, 1, "unexpected trailing column '" + logical[required.size()] +
                             "' (only sentiment_score,events are allowed)");
    layout.sentiment_col = logical_col[required.size()];
  }
  if (extra >= 2) {
    if (logical[required.size() + 1] != "events")
      fail_at(origin, 1, "unexpected trailing column '" + logical[required.size() + 1] +
                             "' (only sentiment_score,events are allowed)");
    layout.events_col = logical_col[required.size() + 1];
  }
  if (extra > 2)
    fail_at(origin, 1, "too many columns: " + std::to_string(extra - 2) +
                           " unrecognized after sentiment_score,events");
  return layout;
}

QuarterlyRecord interpolated_record(const QuarterlyRecord& a, const QuarterlyRecord& b,
                                    const Period& p) {
  int span = b.period.quarters_since(a.period);
  int step = p.quarters_since(a.period);
  double t = static_cast<double>(step) / static_cast<double>(span);
  QuarterlyRecord r;
  r.period = p;
  for (int f = 0; f < kNumFinancial; ++f)
    r.financial(f) = a.financial(f) + t * (b.financial(f) - a.financial(f));
  if (a.base_sentiment && b.base_sentiment)
    r.base_sentiment = *a.base_sentiment + t * (*b.base_sentiment - *a.base_sentiment);
  if (a.effective_sentiment && b.effective_sentiment)
    r.effective_sentiment =
        *a.effective_sentiment + t * (*b.effective_sentiment - *a.effective_sentiment);
  return r;
}

}  // namespace

LoadResult parse_records_text(const std::string& text, const LoadOptions& opts,
                              const std::string& origin) {
  LoadResult result;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) throw std::runtime_error(origin + ": no data rows");
  ++line_no;
  HeaderLayout layout = parse_header(origin, split(line, ','), result.warnings);

  std::set<Period> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != layout.expected_cells)
      fail_at(origin, line_no,
              "expected " + std::to_string(layout.expected_cells) + " cells, got " +
                  std::to_string(cells.size()));

    QuarterlyRecord rec;
    try {
      rec.period = parse_period(cells[0]);
    } catch (const std::exception& e) {
      fail_at(origin, line_no, std::string("column period: ") + e.what());
    }
    if (!seen.insert(rec.period).second)
      fail_at(origin, line_no, "duplicate period " + rec.period.str());

    for (int f = 0; f < kNumFinancial; ++f) {
      const std::string& cell = cells[static_cast<size_t>(layout.financial_col[f])];
      auto v = parse_double(cell);
      if (!v || !std::isfinite(*v))
        fail_at(origin, line_no,
                std::string("column ") + kFinancialColumns[static_cast<size_t>(f)] +
                    ": non-numeric cell '" + cell + "'");
      rec.financial(f) = *v;
    }
    if (rec.financial(5) < 0.0)
      fail_at(origin, line_no, "column wafer_shipment: negative value");

    if (layout.sentiment_col >= 0) {
      const std::string& cell = cells[static_cast<size_t>(layout.sentiment_col)];
      if (!cell.empty()) {
        auto v = parse_double(cell);
        if (!v || !std::isfinite(*v))
          fail_at(origin, line_no, "column sentiment_score: non-numeric cell '" + cell + "'");
        if (*v < 0.0 || *v > 100.0)
          fail_at(origin, line_no,
                  "column sentiment_score: " + cell + " outside [0,100]");
        rec.base_sentiment = *v;
        // A file that carries event labels is an enriched table; its score is
        // the post-intervention channel.
        if (layout.events_col >= 0) rec.effective_sentiment = *v;
      }
    }
    if (layout.events_col >= 0) {
      const std::string& cell = cells[static_cast<size_t>(layout.events_col)];
      if (!cell.empty()) {
        for (auto& name : split(cell, ';'))
          if (!name.empty()) rec.events.push_back(std::move(name));
      }
    }
    result.records.push_back(std::move(rec));
  }

  if (result.records.empty()) throw std::runtime_error(origin + ": no data rows");

  std::sort(result.records.begin(), result.records.end(),
            [](const QuarterlyRecord& a, const QuarterlyRecord& b) { return a.period < b.period; });

  // Gap scan; interior gaps either reject or interpolate.
  std::vector<QuarterlyRecord> filled;
  filled.reserve(result.records.size());
  for (size_t i = 0; i < result.records.size(); ++i) {
    if (i > 0) {
      Period expect = filled.back().period.next();
      if (result.records[i].period != expect) {
        if (!opts.allow_gaps)
          throw std::runtime_error(origin + ": gap in quarterly series: missing " + expect.str());
        const QuarterlyRecord& prev = result.records[i - 1];
        const QuarterlyRecord& next = result.records[i];
        for (Period p = expect; p < next.period; p = p.next()) {
          filled.push_back(interpolated_record(prev, next, p));
          ++result.interpolated;
        }
      }
    }
    filled.push_back(std::move(result.records[i]));
  }
  result.records = std::move(filled);
  return result;
}

LoadResult load_records(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open records file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_records_text(ss.str(), opts, path);
}

std::string write_records_text(const std::vector<QuarterlyRecord>& records) {
  bool any_sentiment = false, any_events = false;
  for (const auto& r : records) {
    any_sentiment = any_sentiment || r.base_sentiment || r.effective_sentiment;
    any_events = any_events || !r.events.empty();
  }
  bool sentiment_cols = any_sentiment || any_events;

  std::string out = "period";
  for (const char* name : kFinancialColumns) {
    out += ',';
    out += name;
  }
  if (sentiment_cols) out += ",sentiment_score,events";
  out += '\n';

  for (const auto& r : records) {
    out += r.period.str();
    for (int f = 0; f < kNumFinancial; ++f) {
      out += ',';
      out += format_double(r.financial(f));
    }
    if (sentiment_cols) {
      out += ',';
      if (r.effective_sentiment)
        out += format_double(*r.effective_sentiment);
      else if (r.base_sentiment)
        out += format_double(*r.base_sentiment);
      out += ',';
      for (size_t i = 0; i < r.events.size(); ++i) {
        if (i > 0) out += ';';
        out += r.events[i];
      }
    }
    out += '\n';
  }
  return out;
}

void write_records(const std::string& path, const std::vector<QuarterlyRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << write_records_text(records);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace qtrend
