#include <algorithm>
#include <cmath>
#include <limits>

#include "gaugequad/format.hpp"
#include "gaugequad/integrator.hpp"

namespace gaugequad {

namespace {

// Smooth cutoff on [0,1]: 1 at t=0, 0 at t=1, derivative 140 t^3 (1-t)^3.
double taper(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double t4 = t * t * t * t;
  return 1.0 - t4 * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
}

bool undefined_at(const Evaluator& f, double x) {
  try {
    return !std::isfinite(f(x));
  } catch (const std::exception&) {
    return true;
  }
}

constexpr std::size_t kDecayWindow = 5;

// Per-step decay factor of the last kDecayWindow oscillation amplitudes, from a
// least-squares fit of their logarithms.
double decay_factor(const std::vector<double>& osc) {
  const std::size_t n = kDecayWindow;
  const std::size_t first = osc.size() - n;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i);
    const double y = std::log(std::max(osc[first + i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return std::exp(slope);
}

class Exhaustion {
 public:
  Exhaustion(const Evaluator& f, const IntegratorConfig& cfg) : f_(f), cfg_(cfg) {}

  // Integral from `anchor` toward `far` (either direction), far possibly infinite.
  IntegralResult run(double anchor, const ExtReal& far, int trace_offset);

 private:
  // Returns false (and fills `res`) when the inner integral fails.
  bool integrate_piece(const Evaluator& g, double a, double b, const Tolerance& tol,
                       double& out, double& err, IntegralResult& res);

  const Evaluator& f_;
  const IntegratorConfig& cfg_;
};

bool Exhaustion::integrate_piece(const Evaluator& g, double a, double b,
                                 const Tolerance& tol, double& out, double& err,
                                 IntegralResult& res) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  IntegratorConfig inner = cfg_;
  inner.tol = tol;
  inner.singular_points.clear();
  for (double p : cfg_.singular_points) {
    if (lo <= p && p <= hi) inner.singular_points.push_back(p);
  }
  inner.max_evaluations = std::max<long long>(1, cfg_.max_evaluations - res.evaluations);
  const IntegralResult r = hk_integrate(g, ClosedInterval(ExtReal(lo), ExtReal(hi)), inner);
  res.evaluations += r.evaluations;
  if (r.status != Status::Converged) {
    res.status = r.status == Status::Diverged ? Status::Diverged : Status::Inconclusive;
    res.message = "inner integral over [" + format_double(lo) + ", " + format_double(hi) +
                  "] " + to_string(r.status) + (r.message.empty() ? "" : ": " + r.message);
    return false;
  }
  out = r.value;
  err = r.error_estimate;
  return true;
}

IntegralResult Exhaustion::run(double anchor, const ExtReal& far, int trace_offset) {
  IntegralResult res;
  const int pieces = cfg_.exhaustion_pieces;
  const double dir = far > ExtReal(anchor) ? 1.0 : -1.0;
  const double sign = dir;  // orientation of integrals taken from anchor outward
  const bool infinite = !far.is_finite();
  const double reach = infinite ? std::max(1.0, std::abs(anchor)) : 0.0;
  auto cutoff = [&](int j) {
    if (infinite) return anchor + dir * reach * std::ldexp(1.0, j);
    const double b = far.value();
    return b - (b - anchor) * std::ldexp(1.0, -(j + 1));
  };
  const Tolerance piece_tol = cfg_.tol.scaled(1.0 / (2.0 * pieces));

  double acc = 0.0;      // integral from anchor to the current cutoff
  double quad_sq = 0.0;  // squared error estimates of the pieces behind acc
  {
    double v = 0.0;
    double e = 0.0;
    if (!integrate_piece(f_, anchor, cutoff(0), piece_tol, v, e, res)) return res;
    acc = sign * v;
    quad_sq = e * e;
  }
  const double initial_scale = std::max(1.0, std::abs(acc));

  std::vector<std::vector<double>> samples;  // cumulative integral samples per region
  std::vector<double> smoothed;
  std::vector<double> accelerated;
  std::vector<double> oscillation;           // max - min of the samples per region

  for (int j = 0; j <= cfg_.max_refinements; ++j) {
    const double near = cutoff(j);
    const double next = cutoff(j + 1);
    if (!(near != next) || !std::isfinite(next)) {
      res.message = "exhaustion points no longer representable";
      break;
    }
    std::vector<double> region{acc};
    for (int i = 0; i < pieces; ++i) {
      const double u = near + (next - near) * i / pieces;
      const double v = i + 1 == pieces ? next : near + (next - near) * (i + 1) / pieces;
      double val = 0.0;
      double e = 0.0;
      if (!integrate_piece(f_, u, v, piece_tol, val, e, res)) {
        res.message += " (exhaustion step " + std::to_string(j) + ", cutoff " +
                       format_double(next) + ")";
        return res;
      }
      region.push_back(region.back() + sign * val);
      quad_sq += e * e;
    }
    // Smoothed limit estimate: acc + integral of f times a taper from 1 to 0.
    const double width = next - near;
    Evaluator tapered = [&](double x) { return f_(x) * taper((x - near) / width); };
    double tap = 0.0;
    double tap_err = 0.0;
    if (!integrate_piece(tapered, near, next, cfg_.tol.scaled(0.25), tap, tap_err, res)) {
      res.message += " (smoothing window at cutoff " + format_double(near) + ")";
      return res;
    }
    const double s_j = acc + sign * tap;
    smoothed.push_back(s_j);
    acc = region.back();
    samples.push_back(std::move(region));

    double est = s_j;
    const std::size_t n = smoothed.size();
    if (n >= 3) {
      const double d1 = smoothed[n - 2] - smoothed[n - 3];
      const double d2 = smoothed[n - 1] - smoothed[n - 2];
      const double den = d2 - d1;
      if (std::abs(d2) < 0.9 * std::abs(d1) && std::abs(den) > 4.0 * cfg_.tol.bound(s_j)) {
        est = s_j - d2 * d2 / den;
      }
    }
    accelerated.push_back(est);

    {
      const auto& reg = samples.back();
      const auto [mn, mx] = std::minmax_element(reg.begin(), reg.end());
      oscillation.push_back(*mx - *mn);
    }
    res.trace.push_back({trace_offset + j, acc, 0.0, next});
    res.value = est;
    res.error_estimate =
        (accelerated.size() >= 2 ? std::abs(est - accelerated[accelerated.size() - 2]) : 0.0) +
        std::sqrt(quad_sq + tap_err * tap_err);

    if (!std::isfinite(acc) || std::abs(acc) > 1e12 * initial_scale) {
      res.status = Status::Diverged;
      res.message = "cutoff integrals grow without bound";
      return res;
    }
    const double tol_here = cfg_.tol.bound(est);
    if (oscillation.size() >= kDecayWindow) {
      const double factor = decay_factor(oscillation);
      if (factor >= 0.9 && oscillation.back() > tol_here) {
        res.status = Status::Diverged;
        res.message = "oscillation of cutoff integrals does not decay (factor " +
                      format_double(factor) + " per step)";
        return res;
      }
      const bool decaying = factor < 0.9 || oscillation.back() <= tol_here;
      if (decaying && res.error_estimate <= tol_here) {
        res.status = Status::Converged;
        return res;
      }
    }
    if (res.evaluations >= cfg_.max_evaluations) {
      res.message = "evaluation budget exhausted";
      break;
    }
  }
  if (res.message.empty()) res.message = "exhaustion levels exhausted";
  res.status = Status::Inconclusive;
  return res;
}

// Integral over the positively oriented interval between anchor and far.
IntegralResult toward(Exhaustion& ex, double anchor, const ExtReal& far, int trace_offset) {
  IntegralResult r = ex.run(anchor, far, trace_offset);
  if (far < ExtReal(anchor)) {
    r.value = -r.value;
    for (auto& t : r.trace) t.value = -t.value;
  }
  return r;
}

IntegralResult combine(IntegralResult left, IntegralResult right, const Tolerance& tol) {
  IntegralResult out;
  out.value = left.value + right.value;
  out.error_estimate = left.error_estimate + right.error_estimate;
  out.evaluations = left.evaluations + right.evaluations;
  out.trace = std::move(left.trace);
  out.trace.insert(out.trace.end(), right.trace.begin(), right.trace.end());
  if (left.status == Status::Diverged || right.status == Status::Diverged) {
    out.status = Status::Diverged;
  } else if (left.status == Status::Converged && right.status == Status::Converged &&
             out.error_estimate <= tol.bound(out.value)) {
    out.status = Status::Converged;
  } else {
    out.status = Status::Inconclusive;
  }
  std::string msg;
  if (!left.message.empty()) msg += "lower: " + left.message;
  if (!right.message.empty()) msg += std::string(msg.empty() ? "" : "; ") + "upper: " + right.message;
  out.message = msg;
  return out;
}

IntegralResult exhaust(const Evaluator& f, const ClosedInterval& target,
                       const IntegratorConfig& cfg, ImproperEnd end) {
  const ExtReal& lo = target.lo();
  const ExtReal& hi = target.hi();
  auto is_singular = [&](const ExtReal& x) {
    return x.is_finite() && std::find(cfg.singular_points.begin(), cfg.singular_points.end(),
                                      x.value()) != cfg.singular_points.end();
  };
  bool lower = false;
  bool upper = false;
  switch (end) {
    case ImproperEnd::Lower: lower = true; break;
    case ImproperEnd::Upper: upper = true; break;
    case ImproperEnd::Both: lower = upper = true; break;
    case ImproperEnd::Auto:
      lower = !lo.is_finite() || is_singular(lo) || undefined_at(f, lo.value());
      upper = !hi.is_finite() || is_singular(hi) || undefined_at(f, hi.value());
      if (!lower && !upper) upper = true;
      break;
  }
  if (!lower && !lo.is_finite()) lower = true;
  if (!upper && !hi.is_finite()) upper = true;

  if (lower && upper) {
    // Each side gets half the tolerance so that the sum stays within it.
    IntegratorConfig half = cfg;
    half.tol = cfg.tol.scaled(0.5);
    Exhaustion ex(f, half);
    double anchor = 0.0;
    if (!(lo < ExtReal(0.0) && ExtReal(0.0) < hi)) {
      if (target.is_bounded()) {
        anchor = lo.value() + (hi.value() - lo.value()) / 2.0;
      } else if (lo.is_finite()) {
        anchor = lo.value() + std::max(1.0, std::abs(lo.value()));
      } else {
        anchor = hi.value() - std::max(1.0, std::abs(hi.value()));
      }
    }
    IntegralResult left = toward(ex, anchor, lo, 0);
    IntegralResult right = toward(ex, anchor, hi, static_cast<int>(left.trace.size()));
    return combine(std::move(left), std::move(right), cfg.tol);
  }
  Exhaustion ex(f, cfg);
  if (upper) return toward(ex, lo.value(), hi, 0);
  return toward(ex, hi.value(), lo, 0);
}

constexpr Tolerance kScreenTol{1e-3, 1e-3};

}  // namespace

IntegralResult hake_improper(const Evaluator& f, const ClosedInterval& target,
                             const IntegratorConfig& cfg, ImproperEnd end) {
  cfg.check();
  if (cfg.tol.abs >= kScreenTol.abs && cfg.tol.rel >= kScreenTol.rel) {
    return exhaust(f, target, cfg, end);
  }
  // Non-decaying oscillation is visible at a loose tolerance, where pieces are cheap.
  IntegratorConfig screen = cfg;
  screen.tol = {std::max(cfg.tol.abs, kScreenTol.abs), std::max(cfg.tol.rel, kScreenTol.rel)};
  IntegralResult coarse = exhaust(f, target, screen, end);
  if (coarse.status == Status::Diverged) {
    coarse.message = "at tolerance " + format_double(screen.tol.abs) + ": " + coarse.message;
    return coarse;
  }
  IntegratorConfig fine = cfg;
  fine.max_evaluations = std::max<long long>(1, cfg.max_evaluations - coarse.evaluations);
  IntegralResult r = exhaust(f, target, fine, end);
  r.evaluations += coarse.evaluations;
  return r;
}

}  // namespace gaugequad
