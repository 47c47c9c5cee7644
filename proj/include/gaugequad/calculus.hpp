#pragma once

// FTC verification and interchange checks: differentiation under the integral
// sign, iterated integrals, and sums against integrals.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gaugequad/extreal.hpp"
#include "gaugequad/integrator.hpp"
#include "gaugequad/partition.hpp"

namespace gaugequad {

using Evaluator2 = std::function<double(double, double)>;

struct Derivative {
  double value = 0.0;
  double error = 0.0;
};

// Central differences at h = scale, scale/2, scale/4 with Richardson
// extrapolation. The error also includes the disagreement between the
// extrapolated one-sided slopes, so a kink gives a large error.
// Throws EvaluationError if F is non-finite at a stencil point.
Derivative numeric_derivative(const Evaluator& F, double x, double scale);

enum class FtcOutcome { Pass, Fail, Inconclusive };
std::string to_string(FtcOutcome o);

struct FtcPoint {
  double x = 0.0;
  double integral = 0.0;    // integral of F' from a to x
  double difference = 0.0;  // F(x) - F(a)
  double residual = 0.0;
  double allowed = 0.0;
  Status status = Status::Converged;
};

struct FtcReport {
  std::vector<FtcPoint> points;
  double max_residual = 0.0;
  FtcOutcome outcome = FtcOutcome::Pass;
  std::string message;
};

// Checks that the integral of F' from a to x_j equals F(x_j) - F(a) at the
// grid x_j = a + j (b - a) / grid_size, j = 1..grid_size. Without Fprime the
// derivative is taken numerically; the stencil never crosses a kink.
FtcReport ftc_verify(const Evaluator& F, const std::optional<Evaluator>& Fprime,
                     const ClosedInterval& target, int grid_size, const IntegratorConfig& cfg,
                     const std::vector<double>& kinks = {});

struct Rectangle {
  ClosedInterval x;
  ClosedInterval y;
};

struct Window {
  ExtReal s;
  ExtReal t;
  Window(ExtReal s_, ExtReal t_);
};

enum class Verdict { HoldsOnSamples, Fails, Inconclusive };
std::string to_string(Verdict v);

enum class Preset { None, NearlyEverywhere, ContinuousF1 };
std::string to_string(Preset p);

struct WindowResult {
  Window window;
  IntegralResult lhs;
  IntegralResult rhs;
  bool rhs_skipped = false;
  double gap = 0.0;  // NaN when a side did not converge
  double allowed = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

struct PointResult {
  double x = 0.0;
  Derivative derivative;  // numeric derivative of the outer function
  bool derivative_ok = true;
  IntegralResult reference;  // the quantity the derivative should equal
  double gap = 0.0;
};

// Check of the integral of f1 in x over [s, t] against f(t, y) - f(s, y).
struct EndpointCheck {
  std::size_t window = 0;
  double y = 0.0;
  IntegralResult integral;
  double difference = 0.0;
  bool ok = false;
};

struct InterchangeReport {
  std::string kind;  // "dui", "iterated", "series"
  std::vector<WindowResult> windows;
  std::vector<PointResult> pointwise;
  std::vector<EndpointCheck> endpoint_checks;
  Verdict overall = Verdict::Inconclusive;
  std::string notes;
};

// Five dyadic windows (whole, halves, first two quarters) plus `random_count`
// seeded random windows. Requires a bounded interval.
std::vector<Window> default_windows(const ClosedInterval& x, std::uint64_t seed,
                                    int random_count = 8);

// Integral over a possibly unbounded interval: gauge integration when bounded,
// the exhaustion method otherwise.
IntegralResult integrate(const Evaluator& f, const ClosedInterval& target,
                         const IntegratorConfig& cfg);

// Configuration for integrals nested inside another integrand.
IntegratorConfig inner_config(const IntegratorConfig& cfg);

InterchangeReport diff_under_integral(const Evaluator2& f, const Evaluator2& f1,
                                      const Rectangle& rect, const std::vector<Window>& windows,
                                      const std::vector<double>& xs, const IntegratorConfig& cfg,
                                      Preset preset = Preset::None);

InterchangeReport interchange_iterated(const Evaluator2& g, const Rectangle& rect,
                                       const std::vector<Window>& windows,
                                       const std::vector<double>& xs,
                                       const IntegratorConfig& cfg);

using Term = std::function<double(int n, double x)>;

inline constexpr int kDefaultSeriesTerms = 64;

InterchangeReport interchange_sum_integral(const Term& g, const ClosedInterval& target,
                                           const std::vector<Window>& windows,
                                           const std::vector<double>& xs, int n_max,
                                           const IntegratorConfig& cfg);

// Aligned-column text rendering.
std::string format_table(const InterchangeReport& r);
std::string format_table(const FtcReport& r);

}  // namespace gaugequad
