#include "qtrend/sentiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qtrend/numfmt.hpp"

namespace qtrend {

namespace {

bool is_word_char(unsigned char c) {
  if (c >= 0x80) return true;  // any UTF-8 multibyte unit
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char fold(unsigned char c) {
  if (c >= 'A' && c <= 'Z') return static_cast<char>(c - 'A' + 'a');
  return static_cast<char>(c);
}

bool valid_lexicon_token(std::string_view tok) {
  if (tok.empty()) return false;
  for (unsigned char c : tok) {
    if (c >= 0x80) continue;
    if (c < 'a' || c > 'z') return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_word_char(c)) {
      current.push_back(fold(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

double polarity(const std::vector<std::string>& tokens, const Lexicon& lexicon) {
  double sum = 0.0;
  int matches = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    auto it = lexicon.polarities.find(tokens[i]);
    if (it == lexicon.polarities.end()) continue;
    double p = it->second;
    if (i > 0 && lexicon.negators.count(tokens[i - 1])) p = -p;
    sum += p;
    ++matches;
  }
  return matches == 0 ? 0.0 : sum / matches;
}

double score(std::string_view text, const Lexicon& lexicon) {
  return 50.0 * (1.0 + polarity(tokenize(text), lexicon));
}

Lexicon parse_lexicon_text(const std::string& text, const std::string& origin) {
  Lexicon lex;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool in_negators = false;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    if (sv == "[negators]") {
      in_negators = true;
      continue;
    }
    if (in_negators) {
      std::string tok(sv);
      if (!valid_lexicon_token(tok)) fail("negator '" + tok + "' must be lowercase alphabetic");
      lex.negators.insert(std::move(tok));
      continue;
    }
    auto tab = sv.find('\t');
    if (tab == std::string_view::npos) fail("expected token<TAB>polarity");
    std::string tok(trim(sv.substr(0, tab)));
    std::string_view pol_sv = trim(sv.substr(tab + 1));
    if (!valid_lexicon_token(tok)) fail("token '" + tok + "' must be lowercase alphabetic");
    auto p = parse_double(pol_sv);
    if (!p || !std::isfinite(*p)) fail("polarity '" + std::string(pol_sv) + "' is not a number");
    if (*p < -1.0 || *p > 1.0) fail("polarity " + std::string(pol_sv) + " outside [-1,1]");
    if (!lex.polarities.emplace(std::move(tok), *p).second)
      fail("duplicate token '" + std::string(trim(sv.substr(0, tab))) + "'");
  }
  if (lex.polarities.empty()) throw std::runtime_error(origin + ": lexicon has no tokens");
  return lex;
}

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_lexicon_text(ss.str(), path);
}

const Lexicon& builtin_lexicon() {
  static const Lexicon lex = parse_lexicon_text(builtin_lexicon_text(), "<builtin lexicon>");
  return lex;
}

}  // namespace qtrend
