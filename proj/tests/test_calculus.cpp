#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gaugequad/calculus.hpp"

using namespace gaugequad;

namespace {

IntegratorConfig with_tol(double abs) {
  IntegratorConfig cfg;
  cfg.tol = {abs, 0.0};
  return cfg;
}

}  // namespace

TEST_SUITE("calculus") {

TEST_CASE("numeric derivative of smooth functions") {
  const Derivative d = numeric_derivative([](double x) { return std::sin(x); }, 0.3, 1e-2);
  CHECK(std::abs(d.value - std::cos(0.3)) < 1e-9);
  CHECK(d.error < 1e-6);
  CHECK(std::abs(d.value - std::cos(0.3)) <= d.error + 1e-12);
}

TEST_CASE("a kink shows up as a large derivative error") {
  const Derivative d = numeric_derivative([](double x) { return std::abs(x); }, 0.0, 1e-2);
  CHECK(d.error > 0.5);
}

TEST_CASE("non-finite stencil values throw") {
  CHECK_THROWS_AS(numeric_derivative([](double x) { return std::log(x); }, 0.01, 0.1),
                  EvaluationError);
}

TEST_CASE("ftc with an explicit derivative") {
  const IntegratorConfig cfg = with_tol(1e-8);
  const FtcReport r = ftc_verify([](double x) { return x * x * x; },
                                 Evaluator([](double x) { return 3 * x * x; }),
                                 ClosedInterval(0.0, 2.0), 9, cfg);
  CHECK(r.outcome == FtcOutcome::Pass);
  REQUIRE(r.points.size() == 9);
  CHECK(r.points.back().x == doctest::Approx(2.0));
  CHECK(r.points.back().difference == doctest::Approx(8.0));
  CHECK(r.max_residual <= 1e-8);
}

TEST_CASE("ftc with a wrong derivative fails") {
  const IntegratorConfig cfg = with_tol(1e-6);
  const FtcReport r = ftc_verify([](double x) { return x * x; },
                                 Evaluator([](double x) { return 3 * x; }),
                                 ClosedInterval(0.0, 1.0), 4, cfg);
  CHECK(r.outcome == FtcOutcome::Fail);
  CHECK(r.max_residual == doctest::Approx(0.5));
}

TEST_CASE("ftc with a numeric derivative across a kink") {
  const IntegratorConfig cfg = with_tol(1e-6);
  const FtcReport r = ftc_verify([](double x) { return std::abs(x); }, std::nullopt,
                                 ClosedInterval(-1.0, 1.0), 9, cfg, {0.0});
  CHECK(r.outcome == FtcOutcome::Pass);
  CHECK(r.max_residual <= 1e-3);
}

TEST_CASE("ftc rejects an empty grid") {
  CHECK_THROWS(ftc_verify([](double x) { return x; }, std::nullopt, ClosedInterval(0.0, 1.0), 0,
                          IntegratorConfig{}));
}

TEST_CASE("default windows") {
  const ClosedInterval x(0.0, 4.0);
  const std::vector<Window> w = default_windows(x, 7);
  REQUIRE(w.size() == 13);
  CHECK(w[0].s == ExtReal(0.0));
  CHECK(w[0].t == ExtReal(4.0));
  CHECK(w[1].t == ExtReal(2.0));
  CHECK(w[2].s == ExtReal(2.0));
  CHECK(w[3].t == ExtReal(1.0));
  CHECK(w[4].s == ExtReal(1.0));
  for (const Window& win : w) {
    CHECK(ExtReal(0.0) <= win.s);
    CHECK(win.t <= ExtReal(4.0));
    CHECK(win.t.value() - win.s.value() >= 4e-3);
  }
  const std::vector<Window> again = default_windows(x, 7);
  CHECK(again.back().s == w.back().s);
  const std::vector<Window> other = default_windows(x, 8);
  CHECK_FALSE(other.back().s == w.back().s);
  CHECK(default_windows(x, 7, 0).size() == 5);
  CHECK_THROWS(default_windows(ClosedInterval(0.0, ExtReal::pos_inf()), 1));
  CHECK_THROWS(Window(1.0, 1.0));
}

TEST_CASE("inner configuration") {
  IntegratorConfig cfg = with_tol(1e-4);
  const IntegratorConfig in = inner_config(cfg);
  CHECK(in.stability_runs == 1);
  CHECK(in.tol.abs == doctest::Approx(1e-5));
}

TEST_CASE("differentiation under the integral, smooth case") {
  const IntegratorConfig cfg = with_tol(1e-6);
  const Rectangle rect{ClosedInterval(0.0, 1.0), ClosedInterval(0.0, 1.0)};
  const InterchangeReport r = diff_under_integral(
      [](double x, double y) { return std::sin(x * y); },
      [](double x, double y) { return y * std::cos(x * y); }, rect,
      default_windows(rect.x, 1), {0.25, 0.5}, cfg);
  CHECK(r.kind == "dui");
  CHECK(r.overall == Verdict::HoldsOnSamples);
  CHECK(r.windows.size() == 13);
  CHECK(r.pointwise.size() == 2);
  for (const auto& w : r.windows) CHECK(w.gap <= 1e-5);
  for (const auto& e : r.endpoint_checks) CHECK(e.ok);
  for (const auto& p : r.pointwise) CHECK(p.gap <= 1e-5);
}

// The window identity holds for any integrable f1; a wrong partial derivative
// shows up in the endpoint and pointwise checks instead.
TEST_CASE("differentiation under the integral with a wrong partial derivative") {
  const IntegratorConfig cfg = with_tol(1e-6);
  const Rectangle rect{ClosedInterval(0.0, 1.0), ClosedInterval(0.0, 1.0)};
  const InterchangeReport r = diff_under_integral(
      [](double x, double y) { return x * x * y; },
      [](double x, double y) { return x * y; }, rect, default_windows(rect.x, 1, 0), {0.5},
      cfg);
  CHECK(r.overall == Verdict::HoldsOnSamples);
  REQUIRE_FALSE(r.endpoint_checks.empty());
  for (const auto& e : r.endpoint_checks) {
    if (e.y > 0.0) CHECK_FALSE(e.ok);
  }
  REQUIRE(r.pointwise.size() == 1);
  CHECK(r.pointwise[0].gap == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("iterated integrals of a smooth function") {
  const IntegratorConfig cfg = with_tol(1e-6);
  const Rectangle rect{ClosedInterval(0.0, 1.0), ClosedInterval(0.0, 2.0)};
  const InterchangeReport r = interchange_iterated(
      [](double x, double y) { return std::exp(x) * y; }, rect, default_windows(rect.x, 3, 2),
      {0.5}, cfg);
  CHECK(r.overall == Verdict::HoldsOnSamples);
  // Full square: (e - 1) * 2.
  CHECK(r.windows[0].lhs.value == doctest::Approx(2 * (std::numbers::e - 1)).epsilon(1e-6));
}

TEST_CASE("iterated integrals of the classical counterexample disagree") {
  const IntegratorConfig cfg = with_tol(1e-4);
  const Rectangle rect{ClosedInterval(0.0, 1.0), ClosedInterval(0.0, 1.0)};
  const InterchangeReport r = interchange_iterated(
      [](double x, double y) {
        const double s = x * x + y * y;
        return s == 0.0 ? 0.0 : (x * x - y * y) / (s * s);
      },
      rect, {Window(0.0, 1.0)}, {}, cfg);
  CHECK(r.overall == Verdict::Fails);
  CHECK(std::abs(r.windows[0].gap - std::numbers::pi / 2) <= 0.02);
}

TEST_CASE("sum and integral of a geometric series") {
  const IntegratorConfig cfg = with_tol(1e-8);
  const ClosedInterval t(0.0, 0.5);
  const InterchangeReport r = interchange_sum_integral(
      [](int n, double x) { return std::pow(x, n - 1); }, t, default_windows(t, 5, 2), {0.25},
      kDefaultSeriesTerms, cfg);
  CHECK(r.kind == "series");
  CHECK(r.overall == Verdict::HoldsOnSamples);
  CHECK(r.windows[0].lhs.value == doctest::Approx(std::log(2.0)).epsilon(1e-8));
  CHECK(r.windows[0].rhs.value == doctest::Approx(std::log(2.0)).epsilon(1e-8));
  CHECK_THROWS(interchange_sum_integral([](int, double) { return 0.0; }, t, {Window(0.0, 0.5)},
                                        {}, 1, cfg));
}

TEST_CASE("text tables") {
  const IntegratorConfig cfg = with_tol(1e-6);
  const FtcReport f = ftc_verify([](double x) { return x; }, Evaluator([](double) { return 1.0; }),
                                 ClosedInterval(0.0, 1.0), 2, cfg);
  const std::string ft = format_table(f);
  CHECK(ft.find("PASS") != std::string::npos);
  const Rectangle rect{ClosedInterval(0.0, 1.0), ClosedInterval(0.0, 1.0)};
  const InterchangeReport r = interchange_iterated([](double x, double y) { return x + y; }, rect,
                                                   {Window(0.0, 1.0)}, {}, cfg);
  CHECK(format_table(r).find("HOLDS_ON_SAMPLES") != std::string::npos);
}

TEST_CASE("verdict and outcome names") {
  CHECK(to_string(Verdict::HoldsOnSamples) == "HOLDS_ON_SAMPLES");
  CHECK(to_string(Verdict::Fails) == "FAILS");
  CHECK(to_string(Verdict::Inconclusive) == "INCONCLUSIVE");
  CHECK(to_string(FtcOutcome::Pass) == "PASS");
  CHECK(to_string(FtcOutcome::Fail) == "FAIL");
  CHECK(to_string(FtcOutcome::Inconclusive) == "INCONCLUSIVE");
}

}
