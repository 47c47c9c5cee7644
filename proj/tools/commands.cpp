#include "commands.hpp"

#include <charconv>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "gaugequad/bind.hpp"
#include "gaugequad/corpus.hpp"
#include "gaugequad/format.hpp"
#include "gaugequad/gauge.hpp"
#include "gaugequad/json_io.hpp"

namespace gaugequad::cli {

using nlohmann::json;

namespace {

class UsageError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double parse_number(const std::string& s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw UsageError("not a finite number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

ClosedInterval interval(const Span& s) {
  return ClosedInterval(ExtReal::parse(unmark(s.lo)), ExtReal::parse(unmark(s.hi)));
}

Window window(const std::string& text) {
  const auto parts = split(unmark(text), ',');
  if (parts.size() != 2) throw UsageError("window must be 's,t': '" + text + "'");
  return Window(ExtReal::parse(parts[0]), ExtReal::parse(parts[1]));
}

std::vector<Window> windows_for(const std::vector<std::string>& texts, const ClosedInterval& x,
                                std::uint64_t seed) {
  if (texts.empty()) return default_windows(x, seed);
  std::vector<Window> out;
  for (const auto& t : texts) out.push_back(window(t));
  return out;
}

// NAME:p1,p2,...
std::pair<std::string, std::vector<double>> gauge_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  std::pair<std::string, std::vector<double>> out{spec.substr(0, colon), {}};
  if (colon != std::string::npos)
    for (const auto& p : split(spec.substr(colon + 1), ',')) out.second.push_back(parse_number(p));
  return out;
}

Gauge enumeration_from(const std::vector<double>& params) {
  if (params.empty() || params.size() > 2)
    throw UsageError("enumeration gauge takes EPS[,COUNT]");
  const std::size_t count =
      params.size() == 2 ? static_cast<std::size_t>(params[1]) : kDefaultEnumerationPrefix;
  const auto points = rationals_in_unit_interval(count);
  return enumeration_gauge(points, params[0], everything_gauge(), count);
}

Gauge uniform_from(const std::vector<double>& params) {
  if (params.empty() || params.size() > 2) throw UsageError("uniform gauge takes DELTA[,CUTOFF]");
  return uniform_gauge(params[0], params.size() == 2 ? params[1] : 1.0);
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

int code_for(Status s) {
  switch (s) {
    case Status::Converged: return kOk;
    case Status::Diverged: return kNegative;
    case Status::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

int code_for(Verdict v) {
  switch (v) {
    case Verdict::HoldsOnSamples: return kOk;
    case Verdict::Fails: return kNegative;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

std::string trace_table(const IntegralResult& r) {
  std::ostringstream out;
  out << "trace:\n";
  for (const auto& e : r.trace) {
    out << "  " << e.index << "  " << format_double(e.value) << "  spread "
        << format_double(e.spread);
    if (e.cutoff) out << "  cutoff " << format_double(*e.cutoff);
    out << '\n';
  }
  return out.str();
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const expr::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const expr::UnboundVariable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const expr::NotDifferentiable& e) {
    std::cerr << "error: " << e.what() << " (" << e.node() << "); supply the derivative\n";
    return kUsage;
  } catch (const IntervalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInconclusive;
  }
}

void distinct(const std::string& a, const std::string& b) {
  if (a == b) throw UsageError("variable names must differ");
}

}  // namespace

std::string unmark(std::string s) {
  if (!s.empty() && s[0] == kNegativeMark) s.erase(0, 1);
  return s;
}

IntegratorConfig Globals::config() const {
  IntegratorConfig c;
  c.tol = tol ? Tolerance{*tol, *tol} : Tolerance{abs_tol, rel_tol};
  c.max_refinements = max_refinements;
  c.max_depth = max_depth;
  c.seed = seed;
  c.singular_points = singular;
  c.singular_sharpness = sharpness;
  if (!gauge.empty() && gauge != "schedule") {
    const auto [name, params] = gauge_spec(gauge);
    if (name == "enumeration") c.extra_gauge = enumeration_from(params);
    else if (name == "uniform") c.extra_gauge = uniform_from(params);
    else throw UsageError("unknown gauge '" + name + "' (schedule, uniform, enumeration)");
  }
  c.check();
  return c;
}

int cmd_integrate(const Globals& g, const std::string& text, const std::string& var,
                  const Span& span, bool improper, const std::string& end) {
  return guarded([&] {
    const expr::Expr e = expr::parse(text);
    const Evaluator f = bind1(e, var);
    const ClosedInterval iv = interval(span);
    const IntegratorConfig cfg = g.config();
    ImproperEnd which = ImproperEnd::Auto;
    if (end == "lower") which = ImproperEnd::Lower;
    else if (end == "upper") which = ImproperEnd::Upper;
    else if (end == "both") which = ImproperEnd::Both;
    else if (end != "auto") throw UsageError("--end must be auto, lower, upper or both");
    const bool exhaustion = improper || !iv.is_bounded();
    const IntegralResult r =
        exhaustion ? hake_improper(f, iv, cfg, which) : hk_integrate(f, iv, cfg);
    if (g.json) {
      print_json({{"command", improper ? "improper" : "integrate"},
                  {"expression", expr::to_text(e)},
                  {"variable", var},
                  {"interval", to_json(iv)},
                  {"engine", exhaustion ? "exhaustion" : "gauge"},
                  {"result", to_json(r, g.trace)}});
    } else {
      std::cout << "value:          " << format_double(r.value) << '\n'
                << "error estimate: " << format_double(r.error_estimate) << '\n'
                << "status:         " << to_string(r.status) << '\n'
                << "evaluations:    " << r.evaluations << '\n'
                << "engine:         " << (exhaustion ? "exhaustion" : "gauge") << '\n';
      if (!r.message.empty()) std::cout << "message:        " << r.message << '\n';
      if (g.trace) std::cout << trace_table(r);
    }
    return code_for(r.status);
  });
}

int cmd_ftc(const Globals& g, const std::string& text, const std::string& var, const Span& span,
            const std::string& fprime, int grid, const std::vector<double>& kinks) {
  return guarded([&] {
    const expr::Expr F = expr::parse(text);
    std::optional<expr::Expr> dF;
    if (!fprime.empty()) {
      dF = expr::parse(fprime);
    } else {
      try {
        dF = expr::differentiate(F, var);
      } catch (const expr::NotDifferentiable&) {
        // Fall back to numeric differentiation away from the kinks.
      }
    }
    const ClosedInterval iv = interval(span);
    const IntegratorConfig cfg = g.config();
    const FtcReport r = ftc_verify(bind1(F, var),
                                   dF ? std::optional<Evaluator>(bind1(*dF, var)) : std::nullopt,
                                   iv, grid, cfg, kinks);
    if (g.json) {
      print_json({{"command", "ftc"},
                  {"expression", expr::to_text(F)},
                  {"derivative", dF ? json(expr::to_text(*dF)) : json("numeric")},
                  {"variable", var},
                  {"interval", to_json(iv)},
                  {"report", to_json(r)}});
    } else {
      std::cout << "F'(" << var << ") = " << (dF ? expr::to_text(*dF) : "numeric") << "\n\n"
                << format_table(r);
    }
    switch (r.outcome) {
      case FtcOutcome::Pass: return kOk;
      case FtcOutcome::Fail: return kNegative;
      default: return kInconclusive;
    }
  });
}

namespace {

int emit_interchange(const Globals& g, const std::string& command, json head,
                     const InterchangeReport& r) {
  if (g.json) {
    head["command"] = command;
    head["report"] = to_json(r, g.trace);
    print_json(head);
  } else {
    for (auto it = head.begin(); it != head.end(); ++it) {
      std::cout << it.key() << ": "
                << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
                << '\n';
    }
    std::cout << '\n' << format_table(r);
  }
  return code_for(r.overall);
}

}  // namespace

int cmd_dui(const Globals& g, const std::string& text, const std::string& x,
            const std::string& y, const Span& xs, const Span& ys, const std::string& f1,
            const std::vector<std::string>& windows, const std::vector<double>& at,
            const std::string& preset) {
  return guarded([&] {
    distinct(x, y);
    const expr::Expr f = expr::parse(text);
    const expr::Expr d = f1.empty() ? expr::differentiate(f, x) : expr::parse(f1);
    const Rectangle rect{interval(xs), interval(ys)};
    const IntegratorConfig cfg = g.config();
    Preset p = Preset::None;
    if (preset == "nearly-everywhere") p = Preset::NearlyEverywhere;
    else if (preset == "continuous-f1") p = Preset::ContinuousF1;
    else if (preset != "none") throw UsageError("--preset must be none, nearly-everywhere or continuous-f1");
    const InterchangeReport r =
        diff_under_integral(bind2(f, x, y), bind2(d, x, y), rect,
                            windows_for(windows, rect.x, cfg.seed), at, cfg, p);
    return emit_interchange(g, "dui",
                            {{"f", expr::to_text(f)},
                             {"f1", expr::to_text(d)},
                             {"x", x},
                             {"y", y},
                             {"x_interval", to_json(rect.x)},
                             {"y_interval", to_json(rect.y)}},
                            r);
  });
}

int cmd_interchange(const Globals& g, const std::string& text, const std::string& x,
                    const std::string& y, const Span& xs, const Span& ys,
                    const std::vector<std::string>& windows, const std::vector<double>& at) {
  return guarded([&] {
    distinct(x, y);
    const expr::Expr e = expr::parse(text);
    const Rectangle rect{interval(xs), interval(ys)};
    const IntegratorConfig cfg = g.config();
    const InterchangeReport r = interchange_iterated(
        bind2(e, x, y), rect, windows_for(windows, rect.x, cfg.seed), at, cfg);
    return emit_interchange(g, "interchange",
                            {{"g", expr::to_text(e)},
                             {"x", x},
                             {"y", y},
                             {"x_interval", to_json(rect.x)},
                             {"y_interval", to_json(rect.y)}},
                            r);
  });
}

int cmd_series(const Globals& g, const std::string& text, const std::string& n,
               const std::string& x, const Span& span, int n_max,
               const std::vector<std::string>& windows, const std::vector<double>& at) {
  return guarded([&] {
    distinct(n, x);
    const expr::Expr e = expr::parse(text);
    const Evaluator2 term2 = bind2(e, n, x);
    const Term term = [term2](int k, double v) { return term2(static_cast<double>(k), v); };
    const ClosedInterval iv = interval(span);
    const IntegratorConfig cfg = g.config();
    const InterchangeReport r =
        interchange_sum_integral(term, iv, windows_for(windows, iv, cfg.seed), at, n_max, cfg);
    return emit_interchange(g, "series",
                            {{"term", expr::to_text(e)},
                             {"index", n},
                             {"x", x},
                             {"interval", to_json(iv)},
                             {"n_max", n_max}},
                            r);
  });
}

int cmd_partition(const Globals& g, const Span& span) {
  return guarded([&] {
    const ClosedInterval iv = interval(span);
    const auto [name, params] = gauge_spec(g.gauge.empty() ? "uniform:0.25" : g.gauge);
    Gauge gauge = everything_gauge();
    if (name == "uniform") {
      gauge = uniform_from(params);
    } else if (name == "enumeration") {
      gauge = enumeration_from(params);
    } else if (name == "singular") {
      if (params.size() != 2) throw UsageError("singular gauge takes DELTA,SHARPNESS");
      gauge = singularity_gauge(uniform_gauge(params[0], 1.0), g.singular, params[1]);
    } else {
      throw UsageError("unknown gauge '" + name + "' (uniform, singular, enumeration)");
    }
    PartitionOptions opts;
    opts.max_depth = g.max_depth;
    opts.seed = g.seed;
    opts.jitter = g.seed != 0;
    const TaggedPartition p = cousin_fine_partition(gauge, iv, opts);
    const auto violations = validate(p);
    const bool fine = is_fine(p, gauge);
    if (g.json) {
      json j = to_json(p, gauge);
      j["command"] = "partition";
      print_json(j);
    } else {
      std::cout << "gauge: " << gauge.description() << "\ncells: " << p.size() << '\n';
      for (const auto& c : p.pairs())
        std::cout << "  tag " << c.tag.to_string() << "  " << c.cell.to_string() << '\n';
      std::cout << "violations: " << violations.size() << "\nfine: " << (fine ? "yes" : "no")
                << '\n';
      for (const auto& v : violations) std::cout << "  " << v.message << '\n';
    }
    return violations.empty() && fine ? kOk : kNegative;
  });
}

int cmd_corpus_list(const Globals& g) {
  const auto& cases = list_cases();
  if (g.json) {
    json arr = json::array();
    for (const auto& c : cases) {
      json inputs = json::object();
      for (const auto& [k, v] : c.inputs) inputs[k] = v;
      arr.push_back({{"name", c.name},
                     {"kind", to_string(c.kind)},
                     {"description", c.description},
                     {"inputs", inputs},
                     {"expected", c.expected.describe()},
                     {"provenance", to_string(c.provenance)},
                     {"note", c.note}});
    }
    print_json({{"command", "corpus list"}, {"cases", arr}});
    return kOk;
  }
  std::size_t width = 0;
  for (const auto& c : cases) width = std::max(width, c.name.size());
  for (const auto& c : cases) {
    std::cout << c.name << std::string(width - c.name.size() + 2, ' ') << to_string(c.kind)
              << std::string(10 - to_string(c.kind).size(), ' ') << c.expected.describe()
              << "  [" << to_string(c.provenance) << "]\n";
  }
  return kOk;
}

int cmd_corpus_run(const Globals& g, const std::vector<std::string>& names, bool all,
                   bool tol_given, bool seed_given) {
  return guarded([&] {
    std::vector<std::string> todo = names;
    if (all)
      for (const auto& c : list_cases()) todo.push_back(c.name);
    if (todo.empty()) throw UsageError("name a case or pass --all");
    for (const auto& n : todo) find_case(n);
    CaseOverrides ov;
    if (tol_given) ov.tol = g.config().tol;
    if (seed_given) ov.seed = g.seed;
    int code = kOk;
    json reports = json::array();
    for (const auto& n : todo) {
      const CaseReport r = run_case(n, ov);
      if (!r.pass) code = kNegative;
      if (g.json) {
        reports.push_back(to_json(r, g.trace, g.timing));
      } else {
        std::cout << format_report(r);
        if (g.timing) std::cout << "runtime:    " << format_double(r.runtime_seconds) << " s\n";
        if (r.outcome.interchange) std::cout << '\n' << format_table(*r.outcome.interchange);
        if (r.outcome.ftc) std::cout << '\n' << format_table(*r.outcome.ftc);
        if (g.trace && r.outcome.integral) std::cout << trace_table(*r.outcome.integral);
        std::cout << '\n';
      }
    }
    if (g.json) print_json({{"command", "corpus run"}, {"reports", reports}});
    return code;
  });
}

}  // namespace gaugequad::cli
