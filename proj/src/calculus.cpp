#include "gaugequad/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "gaugequad/format.hpp"

namespace gaugequad {

namespace {

double eval_finite(const Evaluator& F, double x) {
  double v;
  try {
    v = F(x);
  } catch (const EvaluationError&) {
    throw;
  } catch (const std::exception& e) {
    throw EvaluationError(std::string(e.what()) + " at " + format_double(x), x);
  }
  if (!std::isfinite(v))
    throw EvaluationError("non-finite value at " + format_double(x), x);
  return v;
}

}  // namespace

Derivative numeric_derivative(const Evaluator& F, double x, double scale) {
  if (!(scale > 0) || !std::isfinite(scale) || !std::isfinite(x))
    throw std::invalid_argument("numeric_derivative needs finite x and positive scale");
  const double h[3] = {scale, scale / 2, scale / 4};
  const double f0 = eval_finite(F, x);
  double fp[3], fm[3];
  for (int i = 0; i < 3; ++i) {
    fp[i] = eval_finite(F, x + h[i]);
    fm[i] = eval_finite(F, x - h[i]);
  }
  double c[3], fw[3], bw[3];
  for (int i = 0; i < 3; ++i) {
    c[i] = (fp[i] - fm[i]) / (2 * h[i]);
    fw[i] = (fp[i] - f0) / h[i];
    bw[i] = (f0 - fm[i]) / h[i];
  }
  // Central: error series in h^2, h^4.
  const double c1a = (4 * c[1] - c[0]) / 3;
  const double c1b = (4 * c[2] - c[1]) / 3;
  const double c2 = (16 * c1b - c1a) / 15;
  // One-sided: error series in h, h^2.
  auto one_sided = [](const double* d) {
    const double a = 2 * d[1] - d[0];
    const double b = 2 * d[2] - d[1];
    return (4 * b - a) / 3;
  };
  const double kink = std::fabs(one_sided(fw) - one_sided(bw));
  const double rounding = 1e-15 * (std::fabs(f0) + 1) / h[2];
  return {c2, std::max({std::fabs(c2 - c1b), kink, rounding})};
}

std::string to_string(FtcOutcome o) {
  switch (o) {
    case FtcOutcome::Pass: return "PASS";
    case FtcOutcome::Fail: return "FAIL";
    case FtcOutcome::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

FtcReport ftc_verify(const Evaluator& F, const std::optional<Evaluator>& Fprime,
                     const ClosedInterval& target, int grid_size, const IntegratorConfig& cfg,
                     const std::vector<double>& kinks) {
  cfg.check();
  if (!target.is_bounded()) throw std::invalid_argument("ftc_verify needs a bounded interval");
  if (grid_size < 1) throw std::invalid_argument("grid_size must be positive");
  const double a = target.lo().value();
  const double b = target.hi().value();

  Evaluator deriv;
  if (Fprime) {
    deriv = *Fprime;
  } else {
    std::vector<double> stops(kinks);
    stops.push_back(a);
    stops.push_back(b);
    const double base = 1e-3 * (b - a);
    deriv = [&F, kinks, stops, base](double x) {
      if (std::find(kinks.begin(), kinks.end(), x) != kinks.end()) return std::nan("");
      double room = base;
      for (double k : stops)
        if (k != x) room = std::min(room, std::fabs(x - k) / 4);
      room = std::max(room, 1e-9 * std::max(1.0, std::fabs(x)));
      return numeric_derivative(F, x, room).value;
    };
  }


  // Integral of F' over [lo, hi] with kinks only ever on piece boundaries.
  auto integral = [&](double lo, double hi) {
    IntegralResult out;
    out.status = Status::Converged;
    try {
      std::vector<double> cuts{lo};
      for (double k : kinks)
        if (k > lo && k < hi) cuts.push_back(k);
      std::sort(cuts.begin(), cuts.end());
      cuts.push_back(hi);
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const IntegralResult r = hk_integrate(deriv, ClosedInterval(cuts[i], cuts[i + 1]), cfg);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.evaluations += r.evaluations;
        if (r.status != Status::Converged) {
          out.status = r.status;
          out.message = r.message;
          break;
        }
      }
    } catch (const std::exception& e) {
      out.status = Status::Inconclusive;
      out.message = e.what();
    }
    return out;
  };
  auto singular_in = [&](double lo, double hi) {
    return std::any_of(cfg.singular_points.begin(), cfg.singular_points.end(),
                       [&](double p) { return p >= lo && p <= hi; });
  };

  FtcReport rep;
  const double fa = eval_finite(F, a);
  std::optional<IntegralResult> whole;
  for (int j = 1; j <= grid_size; ++j) {
    const double xj = j == grid_size ? b : a + (b - a) * j / grid_size;
    FtcPoint p;
    p.x = xj;
    IntegralResult piece;
    if (xj < b && singular_in(a, xj) && !singular_in(xj, b)) {
      // Singular points stay inside the whole interval; the remainder is regular.
      if (!whole) whole = integral(a, b);
      piece = *whole;
      if (piece.status == Status::Converged) {
        const IntegralResult rest = integral(xj, b);
        piece.value -= rest.value;
        piece.error_estimate += rest.error_estimate;
        piece.status = rest.status;
        piece.message = rest.message;
      }
    } else if (xj == b && whole) {
      piece = *whole;
    } else {
      piece = integral(a, xj);
      if (xj == b) whole = piece;
    }
    p.status = piece.status;
    if (piece.status != Status::Converged) {
      rep.outcome = FtcOutcome::Inconclusive;
      rep.message = "integral up to x = " + format_double(xj) + " " + to_string(piece.status) +
                    (piece.message.empty() ? "" : ": " + piece.message);
      p.integral = p.residual = std::nan("");
      p.difference = eval_finite(F, xj) - fa;
      rep.points.push_back(p);
      rep.max_residual = std::nan("");
      return rep;
    }
    p.integral = piece.value;
    p.difference = eval_finite(F, xj) - fa;
    p.residual = std::fabs(p.integral - p.difference);
    p.allowed = cfg.tol.bound(p.difference);
    rep.max_residual = std::max(rep.max_residual, p.residual);
    if (p.residual > p.allowed) rep.outcome = FtcOutcome::Fail;
    rep.points.push_back(p);
  }
  rep.message = rep.outcome == FtcOutcome::Pass ? "all grid points within tolerance"
                                                : "residual exceeds tolerance";
  return rep;
}

Window::Window(ExtReal s_, ExtReal t_) : s(s_), t(t_) {
  if (!(s < t)) throw IntervalError("window needs s < t");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::HoldsOnSamples: return "HOLDS_ON_SAMPLES";
    case Verdict::Fails: return "FAILS";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::string to_string(Preset p) {
  switch (p) {
    case Preset::None: return "NONE";
    case Preset::NearlyEverywhere: return "NEARLY_EVERYWHERE";
    case Preset::ContinuousF1: return "CONTINUOUS_F1";
  }
  return "NONE";
}

std::vector<Window> default_windows(const ClosedInterval& x, std::uint64_t seed,
                                    int random_count) {
  if (!x.is_bounded())
    throw std::invalid_argument("default windows need a bounded interval; give windows");
  const double a = x.lo().value();
  const double b = x.hi().value();
  const double w = b - a;
  std::vector<Window> out{
      {a, b}, {a, a + w / 2}, {a + w / 2, b}, {a, a + w / 4}, {a + w / 4, a + w / 2}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(a, b);
  while (static_cast<int>(out.size()) < 5 + random_count) {
    double s = u(rng), t = u(rng);
    if (s > t) std::swap(s, t);
    if (t - s < 1e-3 * w) continue;
    out.emplace_back(s, t);
  }
  return out;
}

IntegralResult integrate(const Evaluator& f, const ClosedInterval& target,
                         const IntegratorConfig& cfg) {
  if (target.is_bounded()) return hk_integrate(f, target, cfg);
  return hake_improper(f, target, cfg);
}

IntegratorConfig inner_config(const IntegratorConfig& cfg) {
  IntegratorConfig c = cfg;
  c.stability_runs = 1;
  c.tol = cfg.tol.scaled(0.1);
  return c;
}

}  // namespace gaugequad
