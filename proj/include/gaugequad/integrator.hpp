#pragma once

// Henstock-Kurzweil integration by gauge refinement, and improper-limit
// evaluation through an increasing exhaustion of the interval.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gaugequad/extreal.hpp"
#include "gaugequad/gauge.hpp"
#include "gaugequad/partition.hpp"

namespace gaugequad {

enum class Status { Converged, Diverged, Inconclusive };

std::string to_string(Status s);

// Mixed absolute/relative tolerance: |delta| <= abs + rel * |value| passes.
struct Tolerance {
  double abs = 1e-8;
  double rel = 1e-8;

  double bound(double value) const;
  Tolerance scaled(double factor) const { return {abs * factor, rel * factor}; }
};

struct TraceEntry {
  int index;
  double value;
  double spread = 0.0;             // spread of the Riemann sums within a level
  std::optional<double> cutoff;    // exhaustion point, improper evaluation only
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  Status status = Status::Inconclusive;
  long long evaluations = 0;
  std::vector<TraceEntry> trace;
  std::string message;
};

struct IntegratorConfig {
  Tolerance tol;
  int max_refinements = 24;
  int stability_runs = 3;
  std::vector<double> singular_points;
  int max_depth = kDefaultMaxDepth;
  std::uint64_t seed = 0;
  // Sharpness of the singular-point windows at refinement level 0; each level
  // divides it by 4 while the uniform width halves. Infinity turns the
  // pinching off; the points then only mark where f may be undefined.
  double singular_sharpness = 1e-2;
  // Work cap across all refinement levels. Hitting it yields INCONCLUSIVE.
  long long max_evaluations = 40'000'000;
  // Intersected into every gauge of the schedule (e.g. an enumeration gauge).
  std::optional<Gauge> extra_gauge;
  // Sub-pieces per exhaustion step in improper evaluation.
  int exhaustion_pieces = 16;

  void check() const;
};

// Gauge used at refinement level k of hk_integrate for the given target.
Gauge schedule_gauge(const ClosedInterval& target, const IntegratorConfig& cfg, int level);

IntegralResult hk_integrate(const Evaluator& f, const ClosedInterval& target,
                            const IntegratorConfig& cfg);

struct SumSpread {
  double min;
  double max;
  double mean;
  std::vector<double> sums;
};

// Riemann sums of f over n independently built g-fine partitions of target.
SumSpread hk_sum_spread(const Evaluator& f, const Gauge& g, const ClosedInterval& target,
                        int n_partitions, const IntegratorConfig& cfg);

enum class ImproperEnd { Auto, Lower, Upper, Both };

// Integral over target as the limit of integrals over an exhaustion toward the
// improper end(s). Auto treats infinite ends, declared singular points and
// points where f is undefined as improper; with none of those, the upper end
// is approached.
IntegralResult hake_improper(const Evaluator& f, const ClosedInterval& target,
                             const IntegratorConfig& cfg,
                             ImproperEnd end = ImproperEnd::Auto);

enum class CauchyBranch { Sin, Cos };

// Closed form of the integral over [0, inf] of {sin,cos}(x^2) cos(s x).
double cauchy_closed_form(CauchyBranch branch, double s);

}  // namespace gaugequad
