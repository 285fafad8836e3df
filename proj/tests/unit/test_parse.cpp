#include <doctest.h>

#include "gcf237/parse.hpp"

using namespace gcf237;

TEST_CASE("expression grammar") {
  ParsedValue v = parse_expression("(1-eta^2)*theta");
  REQUIRE(!v.is_numeric);
  FElem eta = FElem::eta();
  CHECK(v.exact.to_L() == (FElem(1) - eta * eta) * LElem::theta());

  CHECK(parse_expression("theta*theta").exact.to_L() == LElem::from_F(eta));
  CHECK(parse_expression("3/4").exact.to_L() == LElem(Rat(3, 4)));
  CHECK(parse_expression("theta^-1").exact.to_L() == LElem::theta().inv());
  CHECK(parse_expression("2*theta - theta - theta").exact.sign() == 0);
  CHECK(parse_expression("inf").is_infinity);

  FElem D = FElem(4) * eta;
  ParsedValue q = parse_expression("1 + sqrtD", &D);
  CHECK(!q.is_numeric);
  CHECK(q.exact == QuadVal(LElem(1), LElem(1), D));
  CHECK_THROWS_AS(parse_expression("sqrtD"), ParseError);

  CHECK(parse_expression("e").is_numeric);
  CHECK(parse_expression("1/e").is_numeric);
  CHECK(parse_expression("pi - 3").is_numeric);
  CHECK(parse_expression("2.5").is_numeric);
  // decimal literals are exact rationals underneath
  IntervalReal d = parse_expression("2.5").num->eval(64);
  CHECK(d.lo_double() == 2.5);
  CHECK(d.hi_double() == 2.5);

  CHECK_THROWS_AS(parse_expression("foo"), ParseError);
  CHECK_THROWS_AS(parse_expression("1 +"), ParseError);
  CHECK_THROWS_AS(parse_expression("(1"), ParseError);
  CHECK_THROWS_AS(parse_expression("1/0"), ParseError);
}

TEST_CASE("print-parse round trip") {
  std::vector<std::string> corpus = {
      "0",
      "1",
      "-2/3",
      "eta",
      "1 - 2*eta + eta^2",
      "theta",
      "-theta",
      "(eta^2 - eta) + (1 - eta^2)*theta",
      "1/2 + 3/2*eta - eta^2",
  };
  for (const auto& text : corpus) {
    ParsedValue v = parse_expression(text);
    REQUIRE(!v.is_numeric);
    std::string printed = format(v.exact.to_L());
    ParsedValue again = parse_expression(printed);
    CHECK(again.exact.to_L() == v.exact.to_L());
    CHECK(format(again.exact.to_L()) == printed);  // idempotent
  }
  FElem D = FElem(4) * FElem::eta();
  QuadVal q(LElem(1) - LElem::theta(), LElem(Rat(1, 2)), D);
  ParsedValue again = parse_expression(format_quad(q), &D);
  CHECK(again.exact == q);
}

TEST_CASE("word parsing") {
  Word w = parse_word("g7^2 g2 g7^-2");
  CHECK(word_str(w) == "g7^2 g2 g7^-2");
  CHECK(parse_word("1").empty());
  CHECK(word_str(parse_word("g3^-1")) == "g3^-1");
  CHECK(word_str(parse_word("g7 g7")) == "g7^2");
  CHECK_THROWS_AS(parse_word("g5"), ParseError);
  CHECK_THROWS_AS(parse_word("x"), ParseError);
}
