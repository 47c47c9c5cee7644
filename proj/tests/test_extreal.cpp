#include <doctest.h>

#include <cmath>
#include <limits>

#include "gaugequad/extreal.hpp"
#include "gaugequad/format.hpp"

using namespace gaugequad;

TEST_SUITE("extreal") {

TEST_CASE("ordering puts the infinities at the ends") {
  const ExtReal lo = ExtReal::neg_inf();
  const ExtReal hi = ExtReal::pos_inf();
  CHECK(lo < ExtReal(-1e308));
  CHECK(ExtReal(1e308) < hi);
  CHECK(lo < hi);
  CHECK(lo == ExtReal::neg_inf());
  CHECK(ExtReal(2.0) == ExtReal(2.0));
  CHECK(ExtReal(-0.0) == ExtReal(0.0));
}

TEST_CASE("non-finite doubles are rejected") {
  CHECK_THROWS_AS(ExtReal(std::numeric_limits<double>::quiet_NaN()), IntervalError);
  CHECK_THROWS_AS(ExtReal(std::numeric_limits<double>::infinity()), IntervalError);
  CHECK_THROWS_AS(ExtReal::pos_inf().value(), IntervalError);
}

TEST_CASE("parse and print") {
  CHECK(ExtReal::parse("inf").is_pos_inf());
  CHECK(ExtReal::parse("+inf").is_pos_inf());
  CHECK(ExtReal::parse("-inf").is_neg_inf());
  CHECK(ExtReal::parse("-2.5").value() == -2.5);
  CHECK(ExtReal::parse("+3").value() == 3.0);
  CHECK_THROWS_AS(ExtReal::parse("abc"), IntervalError);
  CHECK_THROWS_AS(ExtReal::parse(""), IntervalError);
  CHECK_THROWS_AS(ExtReal::parse("1.0x"), IntervalError);
  CHECK(ExtReal::neg_inf().to_string() == "-inf");
  CHECK(ExtReal::pos_inf().to_string() == "+inf");
  CHECK(ExtReal(0.1).to_string() == "0.1");
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("closed intervals must be nondegenerate") {
  CHECK_THROWS_AS(ClosedInterval(1.0, 1.0), IntervalError);
  CHECK_THROWS_AS(ClosedInterval(2.0, 1.0), IntervalError);
  CHECK_THROWS_AS(ClosedInterval(ExtReal::pos_inf(), ExtReal::pos_inf()), IntervalError);
  const ClosedInterval all(ExtReal::neg_inf(), ExtReal::pos_inf());
  CHECK_FALSE(all.is_bounded());
  CHECK(all.contains(ExtReal::neg_inf()));
  CHECK(all.contains(5.0));
}

TEST_CASE("length is zero for unbounded intervals") {
  CHECK(length(ClosedInterval(1.0, 3.5)) == 2.5);
  CHECK(length(ClosedInterval(0.0, ExtReal::pos_inf())) == 0.0);
  CHECK(length(ClosedInterval(ExtReal::neg_inf(), 0.0)) == 0.0);
}

TEST_CASE("open intervals and the infinite endpoints") {
  CHECK_THROWS_AS(OpenInterval(1.0, 1.0), IntervalError);
  CHECK_THROWS_AS(OpenInterval(0.0, 1.0, true, false), IntervalError);
  const OpenInterval tail(5.0, ExtReal::pos_inf(), false, true);
  CHECK(open_contains(tail, ExtReal::pos_inf()));
  CHECK_FALSE(open_contains(tail, 5.0));
  CHECK(open_contains(tail, 5.5));
  const OpenInterval no_inf(5.0, ExtReal::pos_inf());
  CHECK_FALSE(open_contains(no_inf, ExtReal::pos_inf()));
  CHECK(open_contains(OpenInterval::everything(), ExtReal::neg_inf()));
  CHECK(tail.to_string() == "(5, +inf]");
}

TEST_CASE("closed subsets of open intervals") {
  const OpenInterval o = OpenInterval::around(0.5, 0.5);
  CHECK(closed_subset_of_open(ClosedInterval(0.1, 0.9), o));
  CHECK_FALSE(closed_subset_of_open(ClosedInterval(0.0, 0.9), o));
  const OpenInterval tail(5.0, ExtReal::pos_inf(), false, true);
  CHECK(closed_subset_of_open(ClosedInterval(6.0, ExtReal::pos_inf()), tail));
  CHECK_FALSE(closed_subset_of_open(ClosedInterval(6.0, ExtReal::pos_inf()),
                                    OpenInterval(5.0, ExtReal::pos_inf())));
}

TEST_CASE("intersection keeps the common part") {
  const OpenInterval a(0.0, 2.0);
  const OpenInterval b(1.0, ExtReal::pos_inf(), false, true);
  const OpenInterval c = intersect(a, b);
  CHECK(c.lo() == ExtReal(1.0));
  CHECK(c.hi() == ExtReal(2.0));
  CHECK_FALSE(c.includes_pos_inf());
  const OpenInterval d = intersect(OpenInterval::everything(), b);
  CHECK(d.includes_pos_inf());
  CHECK_FALSE(d.includes_neg_inf());
}

}
