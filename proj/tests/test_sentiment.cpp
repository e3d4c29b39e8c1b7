#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qtrend/rng.hpp"
#include "qtrend/sentiment.hpp"

using namespace qtrend;

namespace {

Lexicon tiny_lexicon() {
  Lexicon lex;
  lex.polarities = {{"growth", 0.6}, {"loss", -0.5}, {"good", 1.0}, {"bad", -1.0}};
  lex.negators = {"not", "no"};
  return lex;
}

}  // namespace

TEST_CASE("tokenize splits on everything but letters") {
  CHECK(tokenize("Net income ROSE 12%.") == std::vector<std::string>{"net", "income", "rose"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("state-of-the-art") == std::vector<std::string>{"state", "of", "the", "art"});
  CHECK(tokenize("  \t\n ") == std::vector<std::string>{});
  CHECK(tokenize("a1b") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("tokenize keeps non-ascii letters inside tokens") {
  auto toks = tokenize("Herr M\xc3\xbcller speaks");
  REQUIRE(toks.size() == 3);
  CHECK(toks[1] == "m\xc3\xbcller");
}

TEST_CASE("polarity averages matches and honors negation") {
  auto lex = tiny_lexicon();
  CHECK(polarity({"growth"}, lex) == 0.6);
  CHECK(polarity({"not", "growth"}, lex) == -0.6);
  CHECK(polarity({}, lex) == 0.0);
  CHECK(polarity({"unknown", "words", "only"}, lex) == 0.0);
  CHECK(polarity({"growth", "loss"}, lex) == doctest::Approx(0.05));
  // negator flips only the token directly after it
  CHECK(polarity({"not", "growth", "loss"}, lex) == doctest::Approx((-0.6 - 0.5) / 2));
}

TEST_CASE("score maps polarity onto the 0..100 scale") {
  auto lex = tiny_lexicon();
  CHECK(score("entirely unrelated words", lex) == 50.0);
  CHECK(score("", lex) == 50.0);
  CHECK(score("good good good", lex) == 100.0);
  CHECK(score("bad bad", lex) == 0.0);
  CHECK(score("growth", lex) == doctest::Approx(80.0));
}

TEST_CASE("scoring is deterministic") {
  auto lex = tiny_lexicon();
  std::string text = "growth but not loss, mostly good quarters";
  double a = score(text, lex);
  double b = score(text, lex);
  CHECK(a == b);  // bitwise
}

TEST_CASE("score stays within 0..100 on random token soup") {
  const auto& lex = builtin_lexicon();
  std::vector<std::string> vocab;
  for (const auto& [tok, p] : lex.polarities) vocab.push_back(tok);
  for (const auto& tok : lex.negators) vocab.push_back(tok);
  std::sort(vocab.begin(), vocab.end());

  SplitMix64 rng(1234);
  for (int it = 0; it < 300; ++it) {
    std::string text;
    int len = static_cast<int>(rng.next() % 40);
    for (int i = 0; i < len; ++i) {
      text += vocab[rng.next() % vocab.size()];
      text += ' ';
    }
    double s = score(text, lex);
    CHECK(s >= 0.0);
    CHECK(s <= 100.0);
  }
}

TEST_CASE("polarity is order-free away from negators") {
  const auto& lex = builtin_lexicon();
  std::vector<std::string> tokens = {"growth", "loss",  "strong", "weak",
                                     "record", "crisis", "gain",   "filler"};
  SplitMix64 rng(7);
  double reference = polarity(tokens, lex);
  for (int it = 0; it < 50; ++it) {
    // Fisher-Yates with the deterministic generator
    auto shuffled = tokens;
    for (size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.next() % i]);
    CHECK(polarity(shuffled, lex) == doctest::Approx(reference).epsilon(1e-12));
  }
}

TEST_CASE("appending a +1 token strictly raises a sub-1 score") {
  auto lex = tiny_lexicon();
  std::vector<std::string> tokens = {"growth", "loss"};
  double before = polarity(tokens, lex);
  REQUIRE(before < 1.0);
  tokens.push_back("good");
  CHECK(polarity(tokens, lex) > before);
  CHECK(50.0 * (1 + polarity(tokens, lex)) > 50.0 * (1 + before));
}

TEST_CASE("lexicon parser accepts comments and negator section") {
  std::string text =
      "# a comment\n"
      "growth\t0.5\n"
      "loss\t-0.5\n"
      "\n"
      "[negators]\n"
      "not\n";
  auto lex = parse_lexicon_text(text);
  CHECK(lex.polarities.size() == 2);
  CHECK(lex.polarities.at("growth") == 0.5);
  CHECK(lex.negators.count("not") == 1);
}

TEST_CASE("lexicon parser rejects bad lines") {
  CHECK_THROWS_WITH_AS(parse_lexicon_text("growth 0.5\n"), doctest::Contains("TAB"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_lexicon_text("growth\t1.5\n"), doctest::Contains("outside"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_lexicon_text("Gr0wth\t0.5\n"), doctest::Contains("alphabetic"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_lexicon_text("growth\t0.5\ngrowth\t0.2\n"),
                       doctest::Contains("duplicate"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_lexicon_text("growth\tabc\n"), doctest::Contains("not a number"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_lexicon_text("# only comments\n"), doctest::Contains("no tokens"),
                       std::runtime_error);
  CHECK_THROWS_AS(load_lexicon("/nonexistent/lexicon.tsv"), std::runtime_error);
}

TEST_CASE("bundled lexicon is well formed") {
  const auto& lex = builtin_lexicon();
  CHECK(lex.polarities.size() >= 200);
  CHECK(!lex.negators.empty());
  for (const auto& [tok, p] : lex.polarities) {
    CHECK(p >= -1.0);
    CHECK(p <= 1.0);
  }
  CHECK(lex.polarities.count("growth") == 1);
  CHECK(lex.negators.count("not") == 1);
}
