#include <doctest.h>

#include <cmath>
#include <vector>

#include "gaugequad/gauge.hpp"

using namespace gaugequad;

TEST_SUITE("gauge") {

TEST_CASE("uniform gauge windows") {
  const Gauge g = uniform_gauge(0.5, 10.0);
  const OpenInterval w = g(0.3);
  CHECK(w.lo().value() == doctest::Approx(0.05));
  CHECK(w.hi().value() == doctest::Approx(0.55));
  const OpenInterval lo = g(ExtReal::neg_inf());
  CHECK(lo.includes_neg_inf());
  CHECK(lo.hi() == ExtReal(-10.0));
  const OpenInterval hi = g(ExtReal::pos_inf());
  CHECK(hi.includes_pos_inf());
  CHECK(hi.lo() == ExtReal(10.0));
  CHECK_THROWS(uniform_gauge(0.0, 1.0));
  CHECK_THROWS(uniform_gauge(1.0, -1.0));
}

TEST_CASE("every gauge window contains its point") {
  const std::vector<double> pts = {0.0, 1.0, 0.5};
  const std::vector<double> rat = rationals_in_unit_interval(100);
  const std::vector<Gauge> gauges = {
      everything_gauge(),
      uniform_gauge(1e-9, 1e9),
      singularity_gauge(uniform_gauge(0.1, 1.0), pts, 1e-3),
      enumeration_gauge(rat, 1e-6, uniform_gauge(0.1, 1.0)),
      enumeration_gauge(rat, 1e-300, everything_gauge()),
  };
  for (const Gauge& g : gauges) {
    for (double x : {0.0, 1.0, 0.5, 1.0 / 3.0, 1e-12, -7.25, 1e15, 0.5 + 1e-16}) {
      CHECK(open_contains(g(x), x));
    }
    CHECK(open_contains(g(ExtReal::neg_inf()), ExtReal::neg_inf()));
    CHECK(open_contains(g(ExtReal::pos_inf()), ExtReal::pos_inf()));
  }
}

TEST_CASE("singularity gauge narrows quadratically near the points") {
  const Gauge g = singularity_gauge(uniform_gauge(1.0, 1.0), {0.0}, 0.5);
  const OpenInterval w = g(0.1);
  CHECK(w.hi().value() - 0.1 == doctest::Approx(0.5 * 0.01));
  const OpenInterval far = g(4.0);
  CHECK(far.hi().value() - 4.0 == doctest::Approx(0.5));
  const OpenInterval at = g(0.0);
  CHECK(at.hi().value() == doctest::Approx(0.5));
  CHECK_THROWS(singularity_gauge(uniform_gauge(1.0, 1.0), {0.0}, 0.0));
}

TEST_CASE("enumeration gauge windows shrink geometrically") {
  const std::vector<double> rat = rationals_in_unit_interval(10);
  const Gauge g = enumeration_gauge(rat, 1e-3, everything_gauge());
  for (std::size_t k = 0; k < rat.size(); ++k) {
    const OpenInterval w = g(rat[k]);
    CHECK(w.hi().value() - rat[k] == doctest::Approx(1e-3 * std::ldexp(1.0, -int(k) - 2)));
  }
  CHECK(g(0.123).includes_neg_inf());
  double total = 0.0;
  for (std::size_t k = 0; k < 1000; ++k) total += 2.0 * enumeration_radius(1e-3, k);
  CHECK(total <= 1e-3);
}

TEST_CASE("enumeration uses only the prefix and the first occurrence") {
  const std::vector<double> pts = {0.5, 0.25, 0.5, 0.75};
  const EnumerationIndex idx(pts, 3);
  CHECK(idx.size() == 3);
  CHECK(idx.find(0.5) == 0);
  CHECK(idx.find(0.25) == 1);
  CHECK(idx.find(0.75) == -1);
  CHECK(idx.find(-0.0) == -1);
}

TEST_CASE("rational enumeration order") {
  const std::vector<double> r = rationals_in_unit_interval(8);
  const std::vector<double> want = {0.0, 1.0, 0.5, 1.0 / 3, 2.0 / 3, 0.25, 0.75, 0.2};
  CHECK(r == want);
  const std::vector<double> big = rationals_in_unit_interval(100000);
  CHECK(big.size() == 100000);
  const EnumerationIndex idx(big, big.size());
  CHECK(idx.size() == big.size());
}

TEST_CASE("marks are carried through combinations") {
  const Gauge s = singularity_gauge(uniform_gauge(1.0, 1.0), {0.5, 0.25, 0.5}, 1.0);
  CHECK(s.marks() == std::vector<double>{0.25, 0.5});
  const Gauge e = enumeration_gauge(rationals_in_unit_interval(5), 1e-3, s);
  CHECK(e.marks() == s.marks());
  const Gauge both = intersect_gauges(e, singularity_gauge(everything_gauge(), {0.1}, 1.0));
  CHECK(both.marks() == std::vector<double>{0.1, 0.25, 0.5});
  CHECK(uniform_gauge(1.0, 1.0).marks().empty());
}

TEST_CASE("intersection of gauges") {
  const Gauge g = intersect_gauges(uniform_gauge(1.0, 5.0), uniform_gauge(0.2, 50.0));
  const OpenInterval w = g(0.0);
  CHECK(w.hi().value() == doctest::Approx(0.1));
  CHECK(g(ExtReal::pos_inf()).lo() == ExtReal(50.0));
}

}
