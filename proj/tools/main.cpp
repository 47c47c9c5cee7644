#include <CLI11.hpp>

#include "commands.hpp"

namespace {

constexpr const char* kGrammar = R"(Expressions (one shell argument each):
  numbers, pi, e, variables; + - * / ^ (^ is right associative, -x^2 = -(x^2));
  sin cos tan exp ln sqrt abs applied with parentheses;
  comparisons < <= > >= == != yield 1 or 0;
  piecewise(cond -> expr, ..., else -> expr).
  No implicit multiplication; ** is not accepted.
Endpoints: finite numbers, inf, +inf, -inf.
Exit codes: 0 CONVERGED / PASS / HOLDS_ON_SAMPLES, 2 DIVERGED / FAIL / FAILS,
  3 INCONCLUSIVE, 1 usage or parse error.)";

}  // namespace

int main(int argc, char** argv) {
  using namespace gaugequad::cli;
  // CLI11 would read "-inf" as a cluster of short flags.
  std::vector<std::string> args(argv, argv + argc);
  for (auto& a : args)
    if (a.rfind("-inf", 0) == 0) a.insert(0, 1, kNegativeMark);
  std::vector<char*> av;
  for (auto& a : args) av.push_back(a.data());
  argc = static_cast<int>(av.size());
  argv = av.data();

  CLI::App app{"Gauge (Henstock-Kurzweil) integration and interchange checks", "gaugequad"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  auto* tol = app.add_option("--tol", g.tol, "absolute and relative tolerance");
  auto* abs_tol = app.add_option("--abs-tol", g.abs_tol, "absolute tolerance")->excludes(tol);
  auto* rel_tol = app.add_option("--rel-tol", g.rel_tol, "relative tolerance")->excludes(tol);
  app.add_option("--max-refinements", g.max_refinements, "refinement levels");
  app.add_option("--max-depth", g.max_depth, "partition bisection depth limit");
  auto* seed = app.add_option("--seed", g.seed, "seed for jittered partitions and windows")
                   ->envname("GAUGEQUAD_SEED");
  app.add_option("--gauge", g.gauge,
                 "NAME:params; integration: uniform:D[,C] | enumeration:EPS[,COUNT]; "
                 "partition: uniform:D[,C] | singular:D,S | enumeration:EPS[,COUNT]");
  app.add_option("--singular", g.singular, "declared singular points")->delimiter(',');
  app.add_option("--sharpness", g.sharpness, "singular-point window sharpness");
  app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--trace", g.trace, "include refinement traces");
  app.add_flag("--timing", g.timing, "report corpus runtimes");

  std::string text, var = "x", x = "x", y = "y", n = "n", end = "auto", aux;
  Span span, xs, ys;
  int grid = 9, n_max = gaugequad::kDefaultSeriesTerms;
  std::vector<double> kinks, at;
  std::vector<std::string> windows, names;
  std::string preset = "none";
  bool all = false;

  auto integration = [&](CLI::App* c) {
    c->add_option("expr", text, "integrand")->required();
    c->add_option("var", var, "variable")->required();
    c->add_option("lo", span.lo, "lower endpoint")->required();
    c->add_option("hi", span.hi, "upper endpoint")->required();
  };
  auto rect = [&](CLI::App* c, const char* what) {
    c->add_option("f", text, what)->required();
    c->add_option("xvar", x, "outer variable")->required();
    c->add_option("yvar", y, "inner variable")->required();
    c->add_option("alpha", xs.lo)->required();
    c->add_option("beta", xs.hi)->required();
    c->add_option("a", ys.lo)->required();
    c->add_option("b", ys.hi)->required();
    c->add_option("--window", windows, "window s,t (repeatable); default: 5 dyadic + 8 random");
    c->add_option("--at", at, "sample points for the pointwise check")->delimiter(',');
  };

  auto* integ = app.add_subcommand("integrate", "integrate EXPR VAR LO HI");
  integration(integ);
  auto* improper = app.add_subcommand("improper", "integral as a limit of an exhaustion");
  integration(improper);
  improper->add_option("--end", end, "improper end: auto, lower, upper, both");

  auto* ftc = app.add_subcommand("ftc", "check integral of F' against F(x) - F(a)");
  integration(ftc);
  ftc->add_option("--fprime", aux, "derivative (default: symbolic, else numeric)");
  ftc->add_option("--grid", grid, "grid points")->check(CLI::PositiveNumber);
  ftc->add_option("--kinks", kinks, "points where F is not differentiable")->delimiter(',');

  auto* dui = app.add_subcommand("dui", "differentiation under the integral sign");
  rect(dui, "f(x, y)");
  dui->add_option("--f1", aux, "x-derivative of f (default: symbolic)");
  dui->add_option("--preset", preset, "none, nearly-everywhere, continuous-f1");

  auto* inter = app.add_subcommand("interchange", "compare the two iterated integrals");
  rect(inter, "g(x, y)");

  auto* series = app.add_subcommand("series", "compare integral of a sum with sum of integrals");
  series->add_option("term", text, "g_n(x)")->required();
  series->add_option("nvar", n, "index variable")->required();
  series->add_option("xvar", x, "integration variable")->required();
  series->add_option("lo", span.lo)->required();
  series->add_option("hi", span.hi)->required();
  series->add_option("--n-max", n_max, "partial-sum length")->check(CLI::Range(2, 1 << 20));
  series->add_option("--window", windows, "window s,t (repeatable)");
  series->add_option("--at", at, "sample points")->delimiter(',');

  auto* part = app.add_subcommand("partition", "build a gauge-fine tagged partition");
  part->add_option("lo", span.lo)->required();
  part->add_option("hi", span.hi)->required();

  auto* corpus = app.add_subcommand("corpus", "named reference cases");
  corpus->require_subcommand(1);
  auto* list = corpus->add_subcommand("list", "list cases");
  auto* run = corpus->add_subcommand("run", "run cases");
  run->add_option("names", names, "case names");
  run->add_flag("--all", all, "run every case");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  if (integ->parsed()) return cmd_integrate(g, text, var, span, false, "auto");
  if (improper->parsed()) return cmd_integrate(g, text, var, span, true, end);
  if (ftc->parsed()) return cmd_ftc(g, text, var, span, aux, grid, kinks);
  if (dui->parsed()) return cmd_dui(g, text, x, y, xs, ys, aux, windows, at, preset);
  if (inter->parsed()) return cmd_interchange(g, text, x, y, xs, ys, windows, at);
  if (series->parsed()) return cmd_series(g, text, n, x, span, n_max, windows, at);
  if (part->parsed()) return cmd_partition(g, span);
  if (list->parsed()) return cmd_corpus_list(g);
  if (run->parsed()) return cmd_corpus_run(g, names, all, tol->count() + abs_tol->count() + rel_tol->count() > 0,
                                       seed->count() > 0);
  return kUsage;
}
