#include <algorithm>
#include <cmath>
#include <limits>

#include "gaugequad/calculus.hpp"
#include "gaugequad/format.hpp"

namespace gaugequad {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Thrown from inside an integrand when a nested integral fails.
class NestedFailure : public EvaluationError {
 public:
  NestedFailure(const std::string& what, double at, Status s)
      : EvaluationError(what, at), status(s) {}
  Status status;
};

// u -> integral of slice(u) over inner.
Evaluator nested(std::function<Evaluator(double)> slice, ClosedInterval inner,
                 IntegratorConfig icfg) {
  return [slice = std::move(slice), inner, icfg](double u) {
    const IntegralResult r = integrate(slice(u), inner, icfg);
    if (r.status != Status::Converged)
      throw NestedFailure("inner integral over " + inner.to_string() + " at " +
                              format_double(u) + " " + to_string(r.status),
                          u, r.status);
    return r.value;
  };
}

IntegralResult failed(Status s, std::string message) {
  IntegralResult r;
  r.value = kNaN;
  r.error_estimate = kNaN;
  r.status = s;
  r.message = std::move(message);
  return r;
}

template <class F>
IntegralResult guarded(F&& run) {
  try {
    return run();
  } catch (const NestedFailure& e) {
    return failed(e.status == Status::Diverged ? Status::Diverged : Status::Inconclusive,
                  e.what());
  } catch (const std::exception& e) {
    return failed(Status::Inconclusive, e.what());
  }
}

ClosedInterval span_of(const Window& w) { return ClosedInterval(w.s, w.t); }

template <class L, class R>
WindowResult run_window(const Window& w, L&& lhs, R&& rhs, const Tolerance& tol) {
  WindowResult out{w, guarded(lhs), {}, false, kNaN, kNaN, Verdict::Inconclusive};
  if (out.lhs.status != Status::Converged) {
    out.rhs_skipped = true;
    out.rhs = failed(Status::Inconclusive, "skipped: left side did not converge");
    return out;
  }
  out.rhs = guarded(rhs);
  if (out.rhs.status != Status::Converged) return out;
  out.gap = std::fabs(out.lhs.value - out.rhs.value);
  out.allowed = 10 * tol.bound(std::max(std::fabs(out.lhs.value), std::fabs(out.rhs.value))) +
                out.lhs.error_estimate + out.rhs.error_estimate;
  out.verdict = out.gap <= out.allowed ? Verdict::HoldsOnSamples : Verdict::Fails;
  return out;
}

Verdict overall_of(const std::vector<WindowResult>& ws) {
  bool inconclusive = ws.empty();
  for (const auto& w : ws) {
    if (w.verdict == Verdict::Fails) return Verdict::Fails;
    if (w.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::Inconclusive : Verdict::HoldsOnSamples;
}

// Step for numeric derivatives of integral-valued functions on `x`.
double derivative_scale(const ClosedInterval& x, double at) {
  double h = x.is_bounded() ? 1e-2 * length(x) : 1e-2 * std::max(1.0, std::fabs(at));
  for (const ExtReal& e : {x.lo(), x.hi()}) {
    if (!e.is_finite()) continue;
    const double d = std::fabs(at - e.value());
    if (d > 0) h = std::min(h, d / 4);
  }
  return h;
}

PointResult point(double x, const Evaluator& outer, double scale, IntegralResult reference) {
  PointResult p;
  p.x = x;
  p.reference = std::move(reference);
  try {
    p.derivative = numeric_derivative(outer, x, scale);
  } catch (const std::exception&) {
    p.derivative_ok = false;
    p.derivative = {kNaN, kNaN};
  }
  p.gap = p.derivative_ok && p.reference.status == Status::Converged
              ? std::fabs(p.derivative.value - p.reference.value)
              : kNaN;
  return p;
}

std::vector<double> sample_ys(const ClosedInterval& y) {
  if (y.is_bounded()) {
    const double a = y.lo().value(), w = length(y);
    return {a + w / 8, a + w / 2, a + 7 * w / 8};
  }
  if (y.lo().is_finite()) {
    const double a = y.lo().value();
    return {a + 0.5, a + 1, a + 4};
  }
  if (y.hi().is_finite()) {
    const double b = y.hi().value();
    return {b - 4, b - 1, b - 0.5};
  }
  return {-1, 0, 1};
}

std::string preset_notes(Preset preset, const Evaluator2& f, const Evaluator2& f1,
                         const Rectangle& rect, const std::vector<double>& kinks) {
  if (preset == Preset::None) return "preset NONE: no sufficient condition checked";
  auto grid = [](const ClosedInterval& i, int n) {
    std::vector<double> g;
    const double lo = i.lo().is_finite() ? i.lo().value()
                                         : (i.hi().is_finite() ? i.hi().value() - 8 : -8);
    const double hi = i.hi().is_finite() ? i.hi().value() : lo + 8;
    for (int k = 1; k < n; ++k) g.push_back(lo + (hi - lo) * k / n);
    return g;
  };
  const auto xs = grid(rect.x, 17);
  const auto ys = grid(rect.y, 17);
  int total = 0, good = 0;
  for (double x : xs) {
    if (std::find(kinks.begin(), kinks.end(), x) != kinks.end()) continue;
    for (double y : ys) {
      ++total;
      try {
        const double v = f1(x, y);
        if (!std::isfinite(v)) continue;
        if (preset == Preset::ContinuousF1) {
          ++good;
          continue;
        }
        const Derivative d = numeric_derivative([&](double u) { return f(u, y); }, x,
                                                derivative_scale(rect.x, x));
        if (std::fabs(d.value - v) <= 1e-4 * (1 + std::fabs(v)) + d.error) ++good;
      } catch (const std::exception&) {
      }
    }
  }
  const std::string counts = std::to_string(good) + "/" + std::to_string(total);
  if (preset == Preset::ContinuousF1)
    return "preset CONTINUOUS_F1: f1 finite at " + counts + " interior grid points";
  return "preset NEARLY_EVERYWHERE: f1 matches the numeric x-derivative of f at " + counts +
         " interior grid points off declared kinks";
}

}  // namespace

InterchangeReport diff_under_integral(const Evaluator2& f, const Evaluator2& f1,
                                      const Rectangle& rect, const std::vector<Window>& windows,
                                      const std::vector<double>& xs, const IntegratorConfig& cfg,
                                      Preset preset) {
  cfg.check();
  const IntegratorConfig icfg = inner_config(cfg);
  InterchangeReport rep;
  rep.kind = "dui";
  for (const Window& w : windows) {
    if (!rect.x.contains(w.s) || !rect.x.contains(w.t))
      throw IntervalError("window outside the x interval");
    const ClosedInterval st = span_of(w);
    const Evaluator h = nested([&](double x) { return [&, x](double y) { return f1(x, y); }; },
                               rect.y, icfg);
    const Evaluator k = nested([&](double y) { return [&, y](double x) { return f1(x, y); }; },
                               st, icfg);
    rep.windows.push_back(run_window(
        w, [&] { return integrate(h, st, cfg); }, [&] { return integrate(k, rect.y, cfg); },
        cfg.tol));

    if (!w.s.is_finite() || !w.t.is_finite()) continue;
    for (double y : sample_ys(rect.y)) {
      EndpointCheck c;
      c.window = rep.windows.size() - 1;
      c.y = y;
      c.integral = guarded([&] { return integrate([&](double x) { return f1(x, y); }, st, cfg); });
      try {
        c.difference = f(w.t.value(), y) - f(w.s.value(), y);
      } catch (const std::exception&) {
        c.difference = kNaN;
      }
      c.ok = c.integral.status == Status::Converged && std::isfinite(c.difference) &&
             std::fabs(c.integral.value - c.difference) <=
                 cfg.tol.bound(c.difference) + c.integral.error_estimate;
      rep.endpoint_checks.push_back(std::move(c));
    }
  }

  for (double x : xs) {
    const Evaluator F = [&](double u) {
      const IntegralResult r = integrate([&](double y) { return f(u, y); }, rect.y, icfg);
      if (r.status != Status::Converged)
        throw EvaluationError("F(" + format_double(u) + ") " + to_string(r.status), u);
      return r.value;
    };
    IntegralResult ref = guarded([&] { return integrate([&](double y) { return f1(x, y); }, rect.y, cfg); });
    rep.pointwise.push_back(point(x, F, derivative_scale(rect.x, x), std::move(ref)));
  }

  rep.overall = overall_of(rep.windows);
  std::size_t bad = 0;
  for (const auto& c : rep.endpoint_checks) bad += c.ok ? 0 : 1;
  rep.notes = preset_notes(preset, f, f1, rect, cfg.singular_points) + "; endpoint checks: " +
              std::to_string(rep.endpoint_checks.size() - bad) + "/" +
              std::to_string(rep.endpoint_checks.size()) + " agree with f(t,y) - f(s,y)";
  return rep;
}

InterchangeReport interchange_iterated(const Evaluator2& g, const Rectangle& rect,
                                       const std::vector<Window>& windows,
                                       const std::vector<double>& xs,
                                       const IntegratorConfig& cfg) {
  cfg.check();
  const IntegratorConfig icfg = inner_config(cfg);
  InterchangeReport rep;
  rep.kind = "iterated";
  for (const Window& w : windows) {
    if (!rect.x.contains(w.s) || !rect.x.contains(w.t))
      throw IntervalError("window outside the x interval");
    const ClosedInterval st = span_of(w);
    const Evaluator dy = nested([&](double x) { return [&, x](double y) { return g(x, y); }; },
                                rect.y, icfg);
    const Evaluator dx = nested([&](double y) { return [&, y](double x) { return g(x, y); }; },
                                st, icfg);
    rep.windows.push_back(run_window(
        w, [&] { return integrate(dy, st, cfg); }, [&] { return integrate(dx, rect.y, cfg); },
        cfg.tol));
  }

  for (double x : xs) {
    IntegralResult ref = guarded([&] { return integrate([&](double y) { return g(x, y); }, rect.y, cfg); });
    if (!rect.x.lo().is_finite() || !(x > rect.x.lo().value())) {
      PointResult p;
      p.x = x;
      p.derivative_ok = false;
      p.derivative = {kNaN, kNaN};
      p.reference = std::move(ref);
      p.gap = kNaN;
      rep.pointwise.push_back(std::move(p));
      continue;
    }
    const double alpha = rect.x.lo().value();
    const Evaluator G = [&, alpha](double u) {
      const Evaluator inner = nested(
          [&](double y) { return [&, y](double v) { return g(v, y); }; },
          ClosedInterval(alpha, u), inner_config(icfg));
      const IntegralResult r = integrate(inner, rect.y, icfg);
      if (r.status != Status::Converged)
        throw EvaluationError("G(" + format_double(u) + ") " + to_string(r.status), u);
      return r.value;
    };
    rep.pointwise.push_back(point(x, G, derivative_scale(rect.x, x), std::move(ref)));
  }

  rep.overall = overall_of(rep.windows);
  rep.notes = "inner integrals at a tenth of the outer tolerance";
  return rep;
}

}  // namespace gaugequad
