#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace qtrend {

// Token polarities in [-1,1] plus a set of negator tokens. Keys are lowercase
// alphabetic-only.
struct Lexicon {
  std::unordered_map<std::string, double> polarities;
  std::unordered_set<std::string> negators;
};

// Maximal runs of alphabetic characters, lowercased (ASCII case fold; bytes
// outside ASCII count as letters so UTF-8 names survive intact).
std::vector<std::string> tokenize(std::string_view text);

// Mean polarity of the tokens found in the lexicon; a match directly after a
// negator flips sign. No matches -> 0 (neutral).
double polarity(const std::vector<std::string>& tokens, const Lexicon& lexicon);

// 50 * (1 + polarity), so neutral text lands on 50 and the result spans 0..100.
double score(std::string_view text, const Lexicon& lexicon);

// Lexicon file: "token<TAB>polarity" lines, '#' comments, and a "[negators]"
// section listing one negator per line.
Lexicon parse_lexicon_text(const std::string& text, const std::string& origin = "<string>");
Lexicon load_lexicon(const std::string& path);

// Bundled financial lexicon (see data/lexicon.tsv).
const Lexicon& builtin_lexicon();
const char* builtin_lexicon_text();

}  // namespace qtrend
