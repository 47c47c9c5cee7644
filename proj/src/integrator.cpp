#include "gaugequad/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gaugequad/format.hpp"

namespace gaugequad {

namespace {

// Neumaier compensated summation.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xc2b2ae3d27d4eb4fULL);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double scale_of(const ClosedInterval& target) {
  if (target.is_bounded()) return length(target);
  double s = 1.0;
  if (target.lo().is_finite()) s = std::max(s, std::abs(target.lo().value()));
  if (target.hi().is_finite()) s = std::max(s, std::abs(target.hi().value()));
  return s;
}

double tail_base_of(const ClosedInterval& target) {
  double c = 1.0;
  if (target.lo().is_finite()) c = std::max(c, 2.0 * std::abs(target.lo().value()));
  if (target.hi().is_finite()) c = std::max(c, 2.0 * std::abs(target.hi().value()));
  return c;
}

struct RunOutcome {
  double sum;
  long long evaluations;
};

// One Riemann sum over a g-fine partition. Tags where f is undefined are
// avoided; at declared singular points an undefined value counts as 0.
RunOutcome riemann_run(const Evaluator& f, const Gauge& g, const ClosedInterval& target,
                       const std::vector<double>& singular, int max_depth, bool jitter,
                       std::uint64_t seed) {
  long long evals = 0;
  double last_z = std::numeric_limits<double>::quiet_NaN();
  double last_f = 0.0;
  PartitionOptions opts;
  opts.max_depth = max_depth;
  opts.jitter = jitter;
  opts.seed = seed;
  opts.tag_filter = [&](double z) {
    double fz = 0.0;
    ++evals;
    try {
      fz = f(z);
    } catch (const EvaluationError&) {
      throw;
    } catch (const std::exception& e) {
      throw EvaluationError(std::string(e.what()) + " (at x = " + format_double(z) + ")", z);
    }
    if (!std::isfinite(fz)) {
      if (!std::binary_search(singular.begin(), singular.end(), z)) return false;
      fz = 0.0;
    }
    last_z = z;
    last_f = fz;
    return true;
  };
  Accumulator acc;
  for_each_fine_cell(g, target, opts, [&](const TaggedCell& c) {
    if (!c.cell.is_bounded() || !c.tag.is_finite()) return;
    // Finite tags always pass through the filter immediately before the visit.
    acc.add(last_f * length(c.cell));
  });
  return {acc.value(), evals};
}

std::vector<double> sorted_points(std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Converged: return "CONVERGED";
    case Status::Diverged: return "DIVERGED";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

double Tolerance::bound(double value) const { return abs + rel * std::abs(value); }

void IntegratorConfig::check() const {
  if (!(tol.abs >= 0.0) || !(tol.rel >= 0.0) || !(tol.abs + tol.rel > 0.0)) {
    throw std::invalid_argument("tolerance must be nonnegative and not both zero");
  }
  if (max_refinements < 1) throw std::invalid_argument("max_refinements must be >= 1");
  if (stability_runs < 1) throw std::invalid_argument("stability_runs must be >= 1");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  if (!(singular_sharpness > 0.0)) {
    throw std::invalid_argument("singular_sharpness must be positive");
  }
  if (max_evaluations < 1) throw std::invalid_argument("max_evaluations must be >= 1");
  if (exhaustion_pieces < 1) throw std::invalid_argument("exhaustion_pieces must be >= 1");
  for (double p : singular_points) {
    if (!std::isfinite(p)) throw std::invalid_argument("singular points must be finite");
  }
}

Gauge schedule_gauge(const ClosedInterval& target, const IntegratorConfig& cfg, int level) {
  const double delta = std::ldexp(scale_of(target), -level);
  const double cutoff = std::ldexp(tail_base_of(target), level);
  Gauge g = uniform_gauge(delta, cutoff);
  if (!cfg.singular_points.empty()) {
    g = singularity_gauge(std::move(g), cfg.singular_points,
                          std::ldexp(cfg.singular_sharpness, -2 * level));
  }
  if (cfg.extra_gauge) g = intersect_gauges(std::move(g), *cfg.extra_gauge);
  return g;
}

IntegralResult hk_integrate(const Evaluator& f, const ClosedInterval& target,
                            const IntegratorConfig& cfg) {
  cfg.check();
  const std::vector<double> singular = sorted_points(cfg.singular_points);
  IntegralResult res;
  std::vector<double> means;
  std::vector<double> gaps;
  double initial_scale = 1.0;
  long long last_level_cost = 0;
  const double growth = target.is_bounded() ? 2.0 : 4.0;

  for (int k = 0; k <= cfg.max_refinements; ++k) {
    if (k > 0 && res.evaluations + static_cast<long long>(growth * last_level_cost) >
                     cfg.max_evaluations) {
      res.message = "evaluation budget exhausted before level " + std::to_string(k);
      break;
    }
    const Gauge g = schedule_gauge(target, cfg, k);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    Accumulator total;
    const long long before = res.evaluations;
    for (int r = 0; r < cfg.stability_runs; ++r) {
      const auto run = riemann_run(f, g, target, singular, cfg.max_depth, r > 0,
                                   mix_seed(cfg.seed, static_cast<std::uint64_t>(k),
                                            static_cast<std::uint64_t>(r)));
      res.evaluations += run.evaluations;
      lo = std::min(lo, run.sum);
      hi = std::max(hi, run.sum);
      total.add(run.sum);
    }
    last_level_cost = res.evaluations - before;
    const double mean = total.value() / cfg.stability_runs;
    const double spread = hi - lo;
    res.trace.push_back({k, mean, spread, std::nullopt});
    res.value = mean;
    means.push_back(mean);

    if (k == 0) {
      initial_scale = std::max(1.0, std::abs(mean));
      res.error_estimate = spread;
      continue;
    }
    const double gap = mean - means[means.size() - 2];
    gaps.push_back(gap);
    // Geometric tail of the remaining level-to-level changes.
    // The contraction ratio is the larger of the last ratio and the mean ratio
    // over up to four gaps, so one lucky level cannot shrink the estimate.
    double amplify = 1.0;
    const std::size_t span = std::min<std::size_t>(gaps.size() - 1, 4);
    if (span >= 1) {
      const double prev = std::abs(gaps[gaps.size() - 2]);
      const double first = std::abs(gaps[gaps.size() - 1 - span]);
      double ratio = prev > 0.0 ? std::abs(gap) / prev : 0.0;
      if (first > 0.0) ratio = std::max(ratio, std::pow(std::abs(gap) / first, 1.0 / span));
      ratio = std::min(ratio, 0.95);
      amplify = std::max(1.0, ratio / (1.0 - ratio));
    }
    res.error_estimate = std::max(spread, std::abs(gap) * amplify);

    if (!std::isfinite(mean) || std::abs(mean) > 1e12 * initial_scale) {
      res.status = Status::Diverged;
      res.message = "Riemann sums grow without bound";
      return res;
    }
    if (gaps.size() >= 5) {
      // Same-signed, non-decaying changes over 5 levels: the sums drift off.
      // Sign-changing changes are left alone; they are also what an
      // oscillation the gauge does not yet resolve looks like.
      bool drifting = std::abs(gap) > cfg.tol.bound(mean);
      for (std::size_t j = gaps.size() - 4; drifting && j < gaps.size(); ++j) {
        drifting = std::abs(gaps[j]) >= 0.9 * std::abs(gaps[j - 1]) &&
                   std::signbit(gaps[j]) == std::signbit(gaps[j - 1]);
      }
      if (drifting) {
        res.status = Status::Diverged;
        res.message = "Riemann sums drift without decay over 5 levels";
        return res;
      }
    }
    if (k >= 2 && res.error_estimate <= cfg.tol.bound(mean)) {
      res.status = Status::Converged;
      return res;
    }
  }
  if (res.message.empty()) res.message = "refinement levels exhausted";
  res.status = Status::Inconclusive;
  return res;
}

SumSpread hk_sum_spread(const Evaluator& f, const Gauge& g, const ClosedInterval& target,
                        int n_partitions, const IntegratorConfig& cfg) {
  if (n_partitions < 1) throw std::invalid_argument("n_partitions must be >= 1");
  const std::vector<double> singular = sorted_points(cfg.singular_points);
  SumSpread out{std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity(), 0.0, {}};
  Accumulator total;
  for (int r = 0; r < n_partitions; ++r) {
    const auto run = riemann_run(f, g, target, singular, cfg.max_depth, r > 0,
                                 mix_seed(cfg.seed, 0xabcdefULL, static_cast<std::uint64_t>(r)));
    out.sums.push_back(run.sum);
    out.min = std::min(out.min, run.sum);
    out.max = std::max(out.max, run.sum);
    total.add(run.sum);
  }
  out.mean = total.value() / n_partitions;
  return out;
}

double cauchy_closed_form(CauchyBranch branch, double s) {
  const double q = s * s / 4.0;
  const double c = 0.5 * std::sqrt(std::numbers::pi / 2.0);
  return branch == CauchyBranch::Sin ? c * (std::cos(q) - std::sin(q))
                                     : c * (std::cos(q) + std::sin(q));
}

}  // namespace gaugequad
