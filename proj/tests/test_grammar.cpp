#include <random>

#include "doctest.h"
#include "ordlim/errors.hpp"
#include "ordlim/grammar.hpp"
#include "ordlim/presentations.hpp"
#include "support.hpp"

using namespace ordlim;

TEST_CASE("parse examples") {
  CHECK(parse_word("") == Word{});
  CHECK(parse_word("g(0)") == Word::gen(0));
  CHECK(parse_word("g(-1)^-1 g(0)") == Word{{-1, -1}, {0, 1}});
  CHECK(parse_word("g(2)^3 g(2)^-3").empty());
  const ChainSpec c23 = ChainSpec::constant(2, 3);
  CHECK(parse_word("a(0,1)", &c23) == cone_generator(c23, {0, 1}));
  CHECK(parse_word("a(1,1)^2 g(0)", &c23) ==
        mul({cone_generator(c23, {1, 1}), cone_generator(c23, {1, 1}), Word::gen(0)}));
  CHECK(parse_word("a(-1,1)", &c23) == Word::gen(-1));
}

TEST_CASE("parse errors") {
  const ChainSpec c23 = ChainSpec::constant(2, 3);
  for (const char* bad : {"g(0)^0", "g(0) ", " g(0)", "g(0)  g(1)", "g(x)", "h(0)", "g(0)^", "a(0,-1)", "a(2,1)",
                          "g(0)g(1)", "g(+1)", "g(0)^+2"}) {
    CAPTURE(std::string(bad));
    CHECK_THROWS_AS(parse_word(bad, &c23), InputError);
  }
  CHECK_THROWS_AS(parse_word("a(0,1)"), InputError);
  try {
    parse_word("g(0) q(1)");
    FAIL("no throw");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("column 6") != std::string::npos);
  }
}

TEST_CASE("format examples") {
  CHECK(format_word(Word{}).empty());
  CHECK(format_word(Word{{-1, -1}, {0, 1}}) == "g(-1)^-1 g(0)");
  CHECK(format_word(Word::gen(3, 4)) == "g(3)^4");
}

TEST_CASE("format and parse round trip") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 500; ++t) {
    const Word w = testsupport::random_word(rng, -12, 12, 8, 40);
    CHECK(parse_word(format_word(w)) == w);
  }
}
