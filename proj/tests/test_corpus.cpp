#include <doctest.h>

#include <cmath>
#include <set>

#include "gaugequad/corpus.hpp"

using namespace gaugequad;

TEST_SUITE("corpus") {

TEST_CASE("registry names are unique and complete") {
  const auto& cases = list_cases();
  std::set<std::string> names;
  for (const auto& c : cases) {
    CHECK(names.insert(c.name).second);
    CHECK_FALSE(c.description.empty());
    CHECK(c.budget_seconds > 0.0);
    CHECK(static_cast<bool>(c.run));
  }
  for (const char* n : {"pathological-derivative", "dirichlet-gauge", "sinc-improper",
                        "cauchy-convergent-cos-s0", "cauchy-convergent-sin-s2",
                        "cauchy-divergent-sin", "cauchy-divergent-cos", "ftc-abs",
                        "fubini-counterexample", "series-exponential",
                        "series-telescoping-failure"}) {
    CHECK(names.count(n) == 1);
  }
}

TEST_CASE("integral cases carry an integrand and an interval") {
  for (const auto& c : list_cases()) {
    if (c.kind == CaseKind::Integrate || c.kind == CaseKind::Improper) {
      CHECK(static_cast<bool>(c.integrand));
      CHECK(c.interval.has_value());
    }
  }
}

TEST_CASE("unknown names are reported") {
  CHECK_THROWS_AS(find_case("no-such-case"), UnknownCase);
  CHECK(find_case("poly-x").name == "poly-x");
}

TEST_CASE("fast cases pass") {
  for (const char* n : {"poly-x", "poly-x2", "ftc-square", "ftc-abs", "dui-smooth",
                        "iterated-smooth", "fubini-counterexample", "series-finite-support"}) {
    const CaseReport r = run_case(n);
    CHECK_MESSAGE(r.pass, n << ": " << r.message);
    CHECK(r.runtime_seconds <= r.budget_seconds);
    CHECK_FALSE(format_report(r).empty());
  }
}

TEST_CASE("the fubini case reports its gap") {
  const CaseReport r = run_case("fubini-counterexample");
  CHECK(r.actual == "FAILS");
  REQUIRE(r.actual_gap.has_value());
  CHECK(std::abs(*r.actual_gap - 1.5707963267948966) <= 0.02);
}

TEST_CASE("overrides replace configuration fields") {
  CaseOverrides o;
  o.tol = Tolerance{1e-3, 0.0};
  o.seed = 9;
  o.max_refinements = 5;
  const IntegratorConfig cfg = o.apply(IntegratorConfig{});
  CHECK(cfg.tol.abs == 1e-3);
  CHECK(cfg.seed == 9);
  CHECK(cfg.max_refinements == 5);
  CHECK(cfg.max_depth == kDefaultMaxDepth);
}

TEST_CASE("a wrong expectation is a failure") {
  CaseOverrides o;
  o.max_refinements = 1;
  const CaseReport r = run_case("poly-x2", o);
  CHECK_FALSE(r.pass);
}

TEST_CASE("expectation text") {
  CHECK(Expected::near(1.0, 0.1).describe().find("1") != std::string::npos);
  CHECK(Expected::with_status(Status::Diverged).describe().find("DIVERGED") != std::string::npos);
  CHECK(Expected::with_verdict("FAILS", 0.5, 0.01).describe().find("FAILS") != std::string::npos);
  CHECK(to_string(CaseKind::Series) == "SERIES");
  CHECK(to_string(Provenance::Derived) == "DERIVED");
}

}
