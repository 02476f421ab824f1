#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plinth/parse.hpp"

using namespace plinth;

TEST_CASE("accepts the usual inputs") {
  CHECK_NOTHROW(parse_expr("f^2*g^2", {"f", "g"}));
  CHECK_NOTHROW(parse_expr("y^2", {"y"}));
  CHECK_NOTHROW(parse_expr(" ( f + 1 ) * g ", {"f", "g"}));
}

TEST_CASE("rejects malformed inputs with a position") {
  try {
    parse_expr("x^-1", {"x"});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.pos() == 2);
  }
  CHECK_THROWS_AS(parse_expr("f + h", {"f", "g"}), ParseError);
  CHECK_THROWS_AS(parse_expr("", {}), ParseError);
  CHECK_THROWS_AS(parse_expr("(f", {"f"}), ParseError);
  CHECK_THROWS_AS(parse_expr("f g", {"f", "g"}), ParseError);
  CHECK_THROWS_AS(parse_expr("f^x", {"f", "x"}), ParseError);
}

TEST_CASE("precedence") {
  auto R = Ring::make(7, {"x", "y"});
  CHECK(parse_poly("-x^2", R) == -(parse_poly("x", R) * parse_poly("x", R)));
  CHECK(parse_poly("2*x + 3*y", R) == parse_poly("3*y + x*2", R));
  CHECK(parse_poly("x - y - x", R) == parse_poly("-y", R));
  CHECK(parse_poly("(x^2)^3", R) == parse_poly("x^6", R));
  CHECK(parse_poly("x^2^3", R) == parse_poly("x^6", R));
  CHECK(parse_poly("-1*x", R) == parse_poly("6*x", R));
  CHECK(parse_poly("10", R) == parse_poly("3", R));
}

TEST_CASE("print round trip") {
  for (const char* s : {"f^2*g^2", "-(f + g)^3", "f - (g - 1)", "f*(g*f)", "-f^2", "(-f)^2", "2*-f", "--f"}) {
    AstPtr a = parse_expr(s, {"f", "g"});
    std::string once = print_expr(a);
    CHECK(print_expr(parse_expr(once, {"f", "g"})) == once);
    auto R = Ring::make(5, {"f", "g"});
    CHECK(to_poly(parse_expr(once), R) == to_poly(a, R));
  }
  CHECK(identifiers(parse_expr("f*g + f")) == std::set<std::string>{"f", "g"});
}
