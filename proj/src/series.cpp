#include <cmath>
#include <limits>
#include <vector>

#include "gaugequad/calculus.hpp"
#include "gaugequad/format.hpp"

namespace gaugequad {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxDoublings = 14;

// Pointwise limit of the partial sums: N starts at n_max and doubles until
// the sums at N/4, N/2 and N agree. NaN if they never settle.
double pointwise_limit(const Term& g, double x, int n_max, const Tolerance& tol) {
  std::vector<double> marks;  // partial sums at n_max/4, n_max/2, n_max, 2 n_max, ...
  double sum = 0.0;
  long long n = 0;
  auto extend = [&](long long upto) {
    for (; n < upto; ++n) sum += g(static_cast<int>(n + 1), x);
    marks.push_back(sum);
  };
  extend(std::max(1, n_max / 4));
  extend(std::max(1, n_max / 2));
  long long N = n_max;
  for (int d = 0; d <= kMaxDoublings; ++d, N *= 2) {
    extend(N);
    if (!std::isfinite(sum)) return kNaN;
    const std::size_t k = marks.size();
    const double allowed = 0.1 * tol.bound(sum);
    if (std::fabs(sum - marks[k - 2]) <= allowed && std::fabs(sum - marks[k - 3]) <= allowed)
      return sum;
  }
  return kNaN;
}

}  // namespace

InterchangeReport interchange_sum_integral(const Term& g, const ClosedInterval& target,
                                           const std::vector<Window>& windows,
                                           const std::vector<double>& xs, int n_max,
                                           const IntegratorConfig& cfg) {
  cfg.check();
  if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
  const Evaluator limit = [&](double x) { return pointwise_limit(g, x, n_max, cfg.tol); };
  const IntegratorConfig term_cfg = [&] {
    IntegratorConfig c = cfg;
    c.tol = cfg.tol.scaled(1.0 / n_max);
    return c;
  }();

  // Partial sums of the termwise integrals at N/2 and N.
  auto termwise = [&](const ClosedInterval& span) {
    double half = 0.0, full = 0.0, err = 0.0;
    long long evals = 0;
    for (int n = 1; n <= n_max; ++n) {
      const IntegralResult r = integrate([&, n](double x) { return g(n, x); }, span, term_cfg);
      evals += r.evaluations;
      if (r.status != Status::Converged) {
        IntegralResult bad = r;
        bad.value = kNaN;
        bad.message = "integral of term " + std::to_string(n) + " " + to_string(r.status) +
                      (r.message.empty() ? "" : ": " + r.message);
        bad.evaluations = evals;
        return bad;
      }
      full += r.value;
      err += r.error_estimate;
      if (n == n_max / 2) half = full;
    }
    IntegralResult out;
    out.value = full;
    out.error_estimate = err;
    out.evaluations = evals;
    out.trace = {{n_max / 2, half, 0.0, std::nullopt}, {n_max, full, 0.0, std::nullopt}};
    if (std::fabs(full - half) <= cfg.tol.bound(full) + err) {
      out.status = Status::Converged;
    } else {
      out.status = Status::Inconclusive;
      out.message = "partial sums at N/2 and N differ by " + format_double(std::fabs(full - half));
    }
    return out;
  };

  InterchangeReport rep;
  rep.kind = "series";
  for (const Window& w : windows) {
    if (!target.contains(w.s) || !target.contains(w.t))
      throw IntervalError("window outside the target interval");
    const ClosedInterval st(w.s, w.t);
    WindowResult wr{w, {}, {}, false, kNaN, kNaN, Verdict::Inconclusive};
    try {
      wr.lhs = integrate(limit, st, cfg);
    } catch (const std::exception& e) {
      wr.lhs.status = Status::Inconclusive;
      wr.lhs.value = kNaN;
      wr.lhs.message = e.what();
    }
    if (wr.lhs.status != Status::Converged) {
      wr.rhs_skipped = true;
      wr.rhs.value = kNaN;
      wr.rhs.message = "skipped: left side did not converge";
    } else {
      try {
        wr.rhs = termwise(st);
      } catch (const std::exception& e) {
        wr.rhs.status = Status::Inconclusive;
        wr.rhs.value = kNaN;
        wr.rhs.message = e.what();
      }
      if (wr.rhs.status == Status::Converged) {
        wr.gap = std::fabs(wr.lhs.value - wr.rhs.value);
        wr.allowed = 10 * cfg.tol.bound(std::max(std::fabs(wr.lhs.value), std::fabs(wr.rhs.value))) +
                     wr.lhs.error_estimate + wr.rhs.error_estimate;
        wr.verdict = wr.gap <= wr.allowed ? Verdict::HoldsOnSamples : Verdict::Fails;
      }
    }
    rep.windows.push_back(std::move(wr));
  }

  const bool lo_finite = target.lo().is_finite();
  for (double x : xs) {
    PointResult p;
    p.x = x;
    const double s = limit(x);
    p.reference.value = s;
    p.reference.status = std::isfinite(s) ? Status::Converged : Status::Inconclusive;
    if (!std::isfinite(s)) p.reference.message = "partial sums did not settle";
    p.derivative_ok = false;
    p.derivative = {kNaN, kNaN};
    if (lo_finite && x > target.lo().value()) {
      const double alpha = target.lo().value();
      const Evaluator G = [&, alpha](double u) {
        double total = 0.0;
        for (int n = 1; n <= n_max; ++n) {
          const IntegralResult r =
              integrate([&, n](double v) { return g(n, v); }, ClosedInterval(alpha, u), term_cfg);
          if (r.status != Status::Converged)
            throw EvaluationError("term integral " + to_string(r.status), u);
          total += r.value;
        }
        return total;
      };
      double h = 1e-2 * std::max(1.0, std::fabs(x));
      h = std::min(h, (x - alpha) / 4);
      if (target.hi().is_finite() && x < target.hi().value())
        h = std::min(h, (target.hi().value() - x) / 4);
      try {
        p.derivative = numeric_derivative(G, x, h);
        p.derivative_ok = true;
      } catch (const std::exception&) {
      }
    }
    p.gap = p.derivative_ok && std::isfinite(s) ? std::fabs(p.derivative.value - s) : kNaN;
    rep.pointwise.push_back(std::move(p));
  }

  bool any_fail = false, any_inconclusive = rep.windows.empty();
  for (const auto& w : rep.windows) {
    any_fail |= w.verdict == Verdict::Fails;
    any_inconclusive |= w.verdict == Verdict::Inconclusive;
  }
  rep.overall = any_fail ? Verdict::Fails
                         : (any_inconclusive ? Verdict::Inconclusive : Verdict::HoldsOnSamples);
  rep.notes = "left side integrates the pointwise limit of the partial sums (N from " +
              std::to_string(n_max) + ", doubling until stable); right side sums " +
              std::to_string(n_max) + " termwise integrals with a half-level check";
  return rep;
}

}  // namespace gaugequad
