#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gaugequad/integrator.hpp"

using namespace gaugequad;

namespace {

const ExtReal kInf = ExtReal::pos_inf();
const ExtReal kNegInf = ExtReal::neg_inf();

IntegratorConfig with_tol(double abs) {
  IntegratorConfig cfg;
  cfg.tol = {abs, 0.0};
  return cfg;
}

void check_converged(const IntegralResult& r, double want, const IntegratorConfig& cfg) {
  CHECK(r.status == Status::Converged);
  CHECK(std::abs(r.value - want) <= cfg.tol.bound(want));
  CHECK(r.error_estimate <= cfg.tol.bound(r.value));
}

}  // namespace

TEST_SUITE("improper") {

TEST_CASE("closed forms of the Cauchy integrals") {
  // Reference values from an independent oscillatory quadrature at 30 digits.
  CHECK(cauchy_closed_form(CauchyBranch::Sin, 0) == doctest::Approx(0.6266570686577501).epsilon(1e-14));
  CHECK(cauchy_closed_form(CauchyBranch::Cos, 0) == doctest::Approx(0.6266570686577501).epsilon(1e-14));
  CHECK(cauchy_closed_form(CauchyBranch::Sin, 1) == doctest::Approx(0.4521383780945137).epsilon(1e-14));
  CHECK(cauchy_closed_form(CauchyBranch::Cos, 1) == doctest::Approx(0.7622132578560353).epsilon(1e-14));
  CHECK(cauchy_closed_form(CauchyBranch::Sin, 2) == doctest::Approx(-0.1887294815159151).epsilon(1e-14));
  CHECK(cauchy_closed_form(CauchyBranch::Cos, 2) == doctest::Approx(0.8658979998846182).epsilon(1e-14));
}

TEST_CASE("exponential tails") {
  const IntegratorConfig cfg = with_tol(1e-8);
  check_converged(hake_improper([](double x) { return std::exp(-x); }, ClosedInterval(0.0, kInf), cfg),
                  1.0, cfg);
  check_converged(hake_improper([](double x) { return std::exp(x); }, ClosedInterval(kNegInf, 0.0), cfg),
                  1.0, cfg);
  check_converged(hake_improper([](double x) { return std::exp(-x * x); },
                                ClosedInterval(kNegInf, kInf), cfg),
                  std::sqrt(std::numbers::pi), cfg);
}

TEST_CASE("algebraic decay on the whole line") {
  const IntegratorConfig cfg = with_tol(1e-6);
  check_converged(hake_improper([](double x) { return 1.0 / (1.0 + x * x); },
                                ClosedInterval(kNegInf, kInf), cfg),
                  std::numbers::pi, cfg);
}

TEST_CASE("singular finite end approached from the right") {
  IntegratorConfig cfg = with_tol(1e-4);
  cfg.singular_points = {0.0};
  const IntegralResult r = hake_improper([](double x) { return 1.0 / std::sqrt(x); },
                                         ClosedInterval(0.0, 1.0), cfg, ImproperEnd::Lower);
  CHECK(r.status == Status::Converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("compact interval without singularities matches the gauge integral") {
  const IntegratorConfig cfg = with_tol(1e-8);
  auto f = [](double x) { return std::cos(x); };
  const IntegralResult a = hake_improper(f, ClosedInterval(0.0, 1.0), cfg);
  const IntegralResult b = hk_integrate(f, ClosedInterval(0.0, 1.0), cfg);
  CHECK(a.status == Status::Converged);
  CHECK(std::abs(a.value - b.value) <= 10 * cfg.tol.bound(b.value));
  CHECK(a.value == doctest::Approx(std::sin(1.0)).epsilon(1e-8));
}

TEST_CASE("conditionally convergent oscillation") {
  const IntegratorConfig cfg = with_tol(1e-6);
  const IntegralResult r = hake_improper([](double x) { return std::cos(x * x) * std::cos(x); },
                                         ClosedInterval(0.0, kInf), cfg);
  CHECK(r.status == Status::Converged);
  CHECK(std::abs(r.value - 0.7622132578560353) <= 1e-4);
}

TEST_CASE("non-decaying oscillation diverges") {
  const IntegratorConfig cfg = with_tol(1e-4);
  const IntegralResult r = hake_improper([](double x) { return std::sin(x); },
                                         ClosedInterval(0.0, kInf), cfg);
  CHECK(r.status == Status::Diverged);
  const IntegralResult g = hake_improper([](double x) { return x * std::sin(x * x) * std::sin(x); },
                                         ClosedInterval(0.0, kInf), cfg);
  CHECK(g.status == Status::Diverged);
}

TEST_CASE("divergence is found at the default tolerance") {
  const IntegratorConfig cfg;
  const IntegralResult r = hake_improper([](double x) { return x * std::cos(x * x) * std::sin(x); },
                                         ClosedInterval(0.0, kInf), cfg);
  CHECK(r.status == Status::Diverged);
  CHECK(r.evaluations < cfg.max_evaluations);
}

TEST_CASE("growing integrand diverges") {
  const IntegratorConfig cfg = with_tol(1e-4);
  const IntegralResult r = hake_improper([](double) { return 1.0; }, ClosedInterval(0.0, kInf), cfg);
  CHECK(r.status == Status::Diverged);
}

TEST_CASE("cutoffs appear in the trace") {
  const IntegratorConfig cfg = with_tol(1e-6);
  const IntegralResult r = hake_improper([](double x) { return std::exp(-x); },
                                         ClosedInterval(0.0, kInf), cfg);
  bool any_cutoff = false;
  for (const auto& t : r.trace) any_cutoff = any_cutoff || t.cutoff.has_value();
  CHECK(any_cutoff);
}

}
