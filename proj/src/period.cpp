#include "qtrend/period.hpp"

#include <stdexcept>

#include "qtrend/numfmt.hpp"

namespace qtrend {

std::string Period::str() const {
  return std::to_string(year) + " Q" + std::to_string(quarter);
}

Period parse_period(std::string_view text) {
  auto fail = [&](const std::string& why) -> Period {
    throw std::invalid_argument("bad period '" + std::string(text) + "': " + why);
  };

  auto sp = text.find(' ');
  if (sp == std::string_view::npos) return fail("expected '<year> Q<quarter>'");
  std::string_view year_tok = text.substr(0, sp);
  std::string_view q_tok = text.substr(sp + 1);

  auto year = parse_long(year_tok);
  if (!year) return fail("year token '" + std::string(year_tok) + "' is not a number");
  if (*year < kMinYear || *year > kMaxYear)
    return fail("year " + std::string(year_tok) + " outside " + std::to_string(kMinYear) + ".." +
                std::to_string(kMaxYear));

  if (q_tok.size() != 2 || q_tok[0] != 'Q')
    return fail("quarter token '" + std::string(q_tok) + "' must be Q1..Q4");
  int q = q_tok[1] - '0';
  if (q < 1 || q > 4) return fail("quarter token '" + std::string(q_tok) + "' must be Q1..Q4");

  return Period{static_cast<int>(*year), q};
}

}  // namespace qtrend
