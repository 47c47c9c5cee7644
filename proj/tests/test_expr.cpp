#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gaugequad/bind.hpp"
#include "gaugequad/expr.hpp"

using namespace gaugequad;
using namespace gaugequad::expr;

namespace {

double at(const std::string& text, double x) { return eval(parse(text), Env{{"x", x}}); }

}  // namespace

TEST_SUITE("expr") {

TEST_CASE("precedence and associativity") {
  CHECK(at("1 + 2 * 3", 0) == 7);
  CHECK(at("2 ^ 3 ^ 2", 0) == 512);
  CHECK(at("-2 ^ 2", 0) == -4);
  CHECK(at("2 ^ -1", 0) == 0.5);
  CHECK(at("8 / 4 / 2", 0) == 1);
  CHECK(at("10 - 4 - 3", 0) == 3);
  CHECK(at("x * (x + 1)", 2) == 6);
  CHECK(at("1e-3 * 1000", 0) == doctest::Approx(1.0));
}

TEST_CASE("constants and functions") {
  CHECK(at("pi", 0) == std::numbers::pi);
  CHECK(at("e", 0) == std::numbers::e);
  CHECK(at("sin(x) ^ 2 + cos(x) ^ 2", 0.7) == doctest::Approx(1.0));
  CHECK(at("tan(x)", 0.3) == doctest::Approx(std::tan(0.3)));
  CHECK(at("ln(exp(x))", 1.5) == doctest::Approx(1.5));
  CHECK(at("sqrt(x)", 9) == 3);
  CHECK(at("abs(x)", -2) == 2);
}

TEST_CASE("comparisons and piecewise") {
  CHECK(at("x < 1", 0) == 1);
  CHECK(at("x >= 1", 0) == 0);
  CHECK(at("x == 0", 0) == 1);
  CHECK(at("x != 0", 0) == 0);
  const std::string sign = "piecewise(x < 0 -> -1, x > 0 -> 1, else -> 0)";
  CHECK(at(sign, -3) == -1);
  CHECK(at(sign, 0) == 0);
  CHECK(at(sign, 2) == 1);
}

TEST_CASE("parse errors carry an offset and expectations") {
  try {
    parse("2**x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(parse("1 +"), ParseError);
  CHECK_THROWS_AS(parse("(1"), ParseError);
  CHECK_THROWS_AS(parse("2x"), ParseError);
  CHECK_THROWS_AS(parse("x = 1"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("piecewise(x < 0 -> 1)"), ParseError);
  try {
    parse("1 + foo(x)");
    FAIL("expected an unknown function");
  } catch (const UnknownFunction& e) {
    CHECK(e.name() == "foo");
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(eval(parse("y"), Env{{"x", 1.0}}), UnboundVariable);
  CHECK_THROWS_AS(at("ln(x)", 0), DomainError);
  CHECK_THROWS_AS(at("ln(x)", -1), DomainError);
  CHECK_THROWS_AS(at("sqrt(x)", -1), DomainError);
  CHECK_THROWS_AS(at("1 / x", 0), DomainError);
  CHECK_THROWS_AS(at("exp(x)", 1000), DomainError);
  try {
    at("1 + sqrt(x)", -1);
  } catch (const DomainError& e) {
    CHECK(e.subexpression() == "sqrt(x)");
  }
}

TEST_CASE("printing is canonical and parses back") {
  const Expr e = parse("x^2 - 3*sin(x)/y");
  CHECK(to_text(e) == "((x ^ 2) - ((3 * sin(x)) / y))");
  CHECK(parse(to_text(e)) == e);
  CHECK(to_text(parse("-x")) == "(-x)");
  CHECK(to_text(parse("piecewise(x < 0 -> 1, else -> 2)")) ==
        "piecewise((x < 0) -> 1, else -> 2)");
  CHECK(parse("-2") == Expr::number(-2));
  CHECK(to_text(Expr::number(0.1)) == "0.1");
}

TEST_CASE("structural equality") {
  CHECK(parse("x + 1") == parse("(x) + (1)"));
  CHECK_FALSE(parse("x + 1") == parse("1 + x"));
  CHECK_FALSE(parse("x") == parse("y"));
}

TEST_CASE("free variables") {
  const Expr e = parse("x * y + sin(t) + pi");
  CHECK(free_variables(e) == std::set<std::string>{"t", "x", "y"});
  CHECK(depends_on(e, "t"));
  CHECK_FALSE(depends_on(e, "z"));
  CHECK_THROWS(Expr::var("1x"));
}

TEST_CASE("symbolic derivatives") {
  auto d = [](const std::string& text, double x) {
    return eval(differentiate(parse(text), "x"), Env{{"x", x}, {"y", 2.0}});
  };
  CHECK(d("x^3", 2) == doctest::Approx(12));
  CHECK(d("sin(x) * cos(x)", 0.4) == doctest::Approx(std::cos(0.8)));
  CHECK(d("exp(2*x)", 0.5) == doctest::Approx(2 * std::exp(1.0)));
  CHECK(d("ln(x)", 4) == doctest::Approx(0.25));
  CHECK(d("sqrt(x)", 4) == doctest::Approx(0.25));
  CHECK(d("1 / x", 2) == doctest::Approx(-0.25));
  CHECK(d("tan(x)", 0.3) == doctest::Approx(1 / std::pow(std::cos(0.3), 2)));
  CHECK(d("x ^ x", 2) == doctest::Approx(4 * (std::log(2.0) + 1)));
  CHECK(d("x * y", 7) == doctest::Approx(2));
  CHECK(d("y ^ 2", 7) == 0);
  CHECK(d("2 ^ x", 1) == doctest::Approx(2 * std::log(2.0)));
}

TEST_CASE("simplification keeps derivatives small") {
  CHECK(differentiate(parse("x"), "x") == Expr::number(1));
  CHECK(differentiate(parse("5"), "x") == Expr::number(0));
  CHECK(differentiate(parse("x^2"), "x") == parse("2 * x"));
  CHECK(differentiate(parse("3 * x"), "x") == Expr::number(3));
}

TEST_CASE("non-differentiable nodes") {
  CHECK_THROWS_AS(differentiate(parse("abs(x)"), "x"), NotDifferentiable);
  CHECK_THROWS_AS(differentiate(parse("piecewise(x < 0 -> -x, else -> x)"), "x"),
                  NotDifferentiable);
  CHECK_NOTHROW(differentiate(parse("abs(y) * x"), "x"));
  CHECK_NOTHROW(differentiate(parse("piecewise(y < 0 -> x, else -> 2 * x)"), "x"));
}

TEST_CASE("compiled evaluation matches the tree walker") {
  const Expr e = parse("piecewise(x < y -> sin(x) * y, else -> exp(-x) + y ^ 2) - sqrt(abs(x))");
  const Compiled c(e, {"x", "y"});
  for (double x : {-1.5, 0.0, 0.3, 2.0}) {
    for (double y : {-1.0, 0.5, 3.0}) {
      CHECK(c(x, y) == doctest::Approx(eval(e, Env{{"x", x}, {"y", y}})).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(Compiled(e, {"x"}), UnboundVariable);
}

TEST_CASE("compiled evaluation turns domain errors into NaN") {
  const Compiled c(parse("ln(x)"), {"x"});
  CHECK(std::isnan(c(-1.0)));
  CHECK(std::isnan(Compiled(parse("1 / x"), {"x"})(0.0)));
  // Only the selected branch is evaluated.
  const Compiled p(parse("piecewise(x == 0 -> 0, else -> 1 / x)"), {"x"});
  CHECK(p(0.0) == 0.0);
  CHECK(p(4.0) == 0.25);
}

TEST_CASE("binding to evaluators") {
  const Evaluator f = bind1(parse("x^2 + 1"), "x");
  CHECK(f(3.0) == 10.0);
  const Evaluator2 g = bind2(parse("x - y"), "x", "y");
  CHECK(g(5.0, 2.0) == 3.0);
  CHECK_THROWS_AS(bind1(parse("x + y"), "x"), UnboundVariable);
}

}
