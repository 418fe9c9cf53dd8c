#include <doctest.h>

#include <cmath>

#include "polyva/exprlang.hpp"

using namespace polyva;

namespace {

double eval_str(const std::string& src, int d, const Vector& x) {
  return eval_expression(*parse_expression(src, d), x);
}

Vector at(double x) {
  Vector v(1);
  v << x;
  return v;
}

Vector at(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

}  // namespace

TEST_CASE("variables and literals") {
  CHECK(eval_str("x1", 1, at(3.0)) == 3.0);
  CHECK(eval_str("2.5", 1, at(-100.0)) == 2.5);
  CHECK(eval_str("1e2", 1, at(0.0)) == 100.0);
  CHECK(eval_str("x2", 2, at(1.0, -4.0)) == -4.0);
}

TEST_CASE("the paper-style target functions evaluate correctly") {
  // Independent calculator value: sin(7/5) = 0.9854497299884601...
  CHECK(eval_str("sin((x1^2+x2^2+x1*x2)/5)", 2, at(1.0, 2.0)) ==
        doctest::Approx(0.985449729988460).epsilon(1e-14));
  CHECK(eval_str("abs(x1-2)*abs(x2-3)", 2, at(2.0, 7.0)) == 0.0);
  CHECK(eval_str("x1*cos(10*x1)", 1, at(0.0)) == 0.0);
  CHECK(eval_str("exp(x1)", 1, at(-1000.0)) == 0.0);  // underflow is fine
}

TEST_CASE("precedence and associativity") {
  CHECK(eval_str("2+3*4", 1, at(0.0)) == 14.0);
  CHECK(eval_str("2^3^2", 1, at(0.0)) == 512.0);   // right-associative
  CHECK(eval_str("-2^2", 1, at(0.0)) == -4.0);     // '^' binds tighter than unary minus
  CHECK(eval_str("2^-1", 1, at(0.0)) == 0.5);
  CHECK(eval_str("6/3/2", 1, at(0.0)) == 1.0);     // left-associative
  CHECK(eval_str("1-2-3", 1, at(0.0)) == -4.0);
  CHECK(eval_str("-x1^2+1", 1, at(2.0)) == -3.0);
}

TEST_CASE("whitespace is insignificant") {
  CHECK(eval_str("  1 +\t2 * x1 ", 1, at(4.0)) == 9.0);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_expression("", 1), ParseError);
  CHECK_THROWS_AS(parse_expression("2x1", 1), ParseError);       // no implicit product
  CHECK_THROWS_AS(parse_expression("sin", 1), ParseError);       // missing '('
  CHECK_THROWS_AS(parse_expression("(1+2", 1), ParseError);
  CHECK_THROWS_AS(parse_expression("foo(1)", 1), ParseError);
  CHECK_THROWS_AS(parse_expression("x3", 2), ParseError);        // exceeds dimension
  try {
    parse_expression("1+%", 1);
    FAIL("expected failure");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("evaluation errors identify the offending point") {
  CHECK_THROWS_AS(eval_str("log(x1)", 1, at(-1.0)), EvalError);
  CHECK_THROWS_AS(eval_str("1/x1", 1, at(0.0)), EvalError);
  CHECK_THROWS_AS(eval_str("sqrt(x1)", 1, at(-2.0)), EvalError);
  try {
    eval_str("log(x1-1)", 1, at(0.5));
    FAIL("expected failure");
  } catch (const EvalError& e) {
    CHECK(std::string(e.what()).find("(0.5)") != std::string::npos);
  }
}

TEST_CASE("parse-print-parse round trips the tree") {
  const char* sources[] = {
      "x1*cos(10*x1)",
      "sin((x1^2+x2^2+x1*x2)/5)",
      "-2^2 + x1/(3.5-x2)",
      "abs(x1-2)*abs(x2-3)",
      "exp(x1)*log(x2+4)-sqrt(x2)",
      "1e-3 * x1 ^ 2 ^ 3",
  };
  for (const char* src : sources) {
    const auto first = parse_expression(src, 2);
    const auto second = parse_expression(print_expression(*first), 2);
    CHECK(expr_equal(*first, *second));
  }
}
