#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "gaugequad/bind.hpp"
#include "gaugequad/corpus.hpp"
#include "gaugequad/gauge.hpp"

namespace gaugequad {

namespace {

constexpr double kPi = std::numbers::pi;
const ExtReal kInf = ExtReal::pos_inf();

constexpr const char* kPathological =
    "piecewise(x != 0 -> 2*x*sin(1/x^3) - 3*cos(1/x^3)/x^2, else -> 0)";
constexpr const char* kPathologicalF = "piecewise(x != 0 -> x^2*sin(1/x^3), else -> 0)";

Evaluator fx(const std::string& text) { return bind1(expr::parse(text), "x"); }

NamedCase integral_case(std::string name, CaseKind kind, std::string text, ClosedInterval iv,
                        Expected expected, Provenance prov, std::string note,
                        IntegratorConfig cfg = {}) {
  NamedCase c;
  c.name = std::move(name);
  c.kind = kind;
  c.description = (kind == CaseKind::Improper ? "exhaustion integral of " : "integral of ") +
                  text + " over " + iv.to_string();
  c.inputs = {{"f(x)", text}, {"interval", iv.to_string()}};
  c.expected = expected;
  c.provenance = prov;
  c.note = std::move(note);
  c.cfg = cfg;
  c.integrand = fx(text);
  c.interval = iv;
  c.run = [f = c.integrand, iv, kind](const IntegratorConfig& k) {
    CaseOutcome o;
    o.integral = kind == CaseKind::Improper ? hake_improper(f, iv, k) : hk_integrate(f, iv, k);
    return o;
  };
  return c;
}

NamedCase ftc_case(std::string name, std::string F, std::optional<std::string> Fprime,
                   ClosedInterval iv, std::vector<double> kinks, Provenance prov,
                   std::string note, IntegratorConfig cfg = {}) {
  NamedCase c;
  c.name = std::move(name);
  c.kind = CaseKind::Ftc;
  c.description = "FTC check for F(x) = " + F + " on " + iv.to_string() + ", 9-point grid";
  c.inputs = {{"F(x)", F}, {"interval", iv.to_string()}};
  const expr::Expr Fe = expr::parse(F);
  const expr::Expr dF = Fprime ? expr::parse(*Fprime) : expr::differentiate(Fe, "x");
  c.inputs.emplace_back(Fprime ? "F'(x)" : "F'(x) (symbolic)", expr::to_text(dF));
  c.expected = Expected::with_verdict("PASS");
  c.provenance = prov;
  c.note = std::move(note);
  c.cfg = cfg;
  c.run = [Fv = bind1(Fe, "x"), dv = bind1(dF, "x"), iv, kinks](const IntegratorConfig& k) {
    CaseOutcome o;
    o.ftc = ftc_verify(Fv, dv, iv, 9, k, kinks);
    return o;
  };
  return c;
}

Evaluator enumerated_indicator(std::shared_ptr<const EnumerationIndex> idx) {
  return [idx](double x) { return idx->find(x) >= 0 ? 1.0 : 0.0; };
}

NamedCase dirichlet_case() {
  auto points = std::make_shared<const std::vector<double>>(
      rationals_in_unit_interval(kDefaultEnumerationPrefix));
  auto idx = std::make_shared<const EnumerationIndex>(*points, kDefaultEnumerationPrefix);
  IntegratorConfig cfg;
  cfg.tol = {1e-6, 0};
  cfg.extra_gauge = enumeration_gauge(*points, 1e-6, everything_gauge());
  NamedCase c;
  c.name = "dirichlet-gauge";
  c.kind = CaseKind::Integrate;
  c.description =
      "indicator of the first 1e5 enumerated rationals of [0,1] under an enumeration gauge";
  c.inputs = {{"f(x)", "1 if x is among the first 100000 rationals p/q, else 0"},
              {"interval", "[0, 1]"},
              {"gauge", "enumeration, epsilon 1e-6"}};
  c.expected = Expected::near(0.0, 1e-6);
  c.provenance = Provenance::Derived;
  c.note = "enumerated windows have total length at most epsilon";
  c.cfg = cfg;
  c.integrand = enumerated_indicator(idx);
  c.interval = ClosedInterval(0, 1);
  c.run = [f = c.integrand](const IntegratorConfig& k) {
    CaseOutcome o;
    o.integral = hk_integrate(f, ClosedInterval(0, 1), k);
    return o;
  };
  return c;
}

NamedCase interchange_case(std::string name, CaseKind kind, std::string f,
                           std::optional<std::string> f1, Rectangle rect,
                           std::optional<std::vector<Window>> windows, std::vector<double> xs,
                           Expected expected, Provenance prov, std::string note,
                           IntegratorConfig cfg = {}) {
  NamedCase c;
  c.name = std::move(name);
  c.kind = kind;
  c.description = (kind == CaseKind::Dui ? "differentiation under the integral of "
                                         : "iterated integrals of ") +
                  f + " on x in " + rect.x.to_string() + ", y in " + rect.y.to_string();
  c.inputs = {{kind == CaseKind::Dui ? "f(x,y)" : "g(x,y)", f},
              {"x interval", rect.x.to_string()},
              {"y interval", rect.y.to_string()}};
  const expr::Expr fe = expr::parse(f);
  std::optional<expr::Expr> f1e;
  if (kind == CaseKind::Dui) {
    f1e = f1 ? expr::parse(*f1) : expr::differentiate(fe, "x");
    c.inputs.emplace_back("f1(x,y)", expr::to_text(*f1e));
  }
  c.expected = expected;
  c.provenance = prov;
  c.note = std::move(note);
  c.cfg = cfg;
  c.run = [fv = bind2(fe, "x", "y"),
           f1v = f1e ? bind2(*f1e, "x", "y") : Evaluator2{}, rect, windows, xs,
           kind](const IntegratorConfig& k) {
    const auto ws = windows ? *windows : default_windows(rect.x, k.seed);
    CaseOutcome o;
    o.interchange = kind == CaseKind::Dui ? diff_under_integral(fv, f1v, rect, ws, xs, k)
                                          : interchange_iterated(fv, rect, ws, xs, k);
    return o;
  };
  return c;
}

NamedCase series_case(std::string name, std::string description, Term g, Expected expected,
                      Provenance prov, std::string note, IntegratorConfig cfg = {}) {
  NamedCase c;
  c.name = std::move(name);
  c.kind = CaseKind::Series;
  c.description = description + " on [0, 1], n_max 64";
  c.inputs = {{"g_n(x)", description}, {"interval", "[0, 1]"}, {"n_max", "64"}};
  c.expected = expected;
  c.provenance = prov;
  c.note = std::move(note);
  c.cfg = cfg;
  c.run = [g = std::move(g)](const IntegratorConfig& k) {
    CaseOutcome o;
    o.interchange = interchange_sum_integral(g, ClosedInterval(0, 1), {Window(0, 1)}, {0.5},
                                             kDefaultSeriesTerms, k);
    return o;
  };
  return c;
}

std::vector<NamedCase> build() {
  std::vector<NamedCase> cases;
  const ClosedInterval unit(0, 1);

  cases.push_back(integral_case("poly-x", CaseKind::Integrate, "x", unit,
                                Expected::near(0.5, 1e-6), Provenance::Trivial, "x^2/2"));
  cases.push_back(integral_case("poly-x2", CaseKind::Integrate, "x^2", unit,
                                Expected::near(1.0 / 3, 1e-6), Provenance::Trivial, "x^3/3"));

  IntegratorConfig path;
  path.tol = {1e-3, 0};
  path.singular_points = {0};
  cases.push_back(integral_case("pathological-derivative", CaseKind::Integrate, kPathological,
                                unit, Expected::near(std::sin(1.0), 1e-3), Provenance::Paper,
                                "derivative of x^2 sin(1/x^3); value g(1) - g(0) = sin 1",
                                path));
  cases.back().budget_seconds = 10;

  cases.push_back(dirichlet_case());

  IntegratorConfig isqrt;
  isqrt.tol = {1e-3, 0};
  isqrt.singular_points = {0.0};
  // A mild algebraic singularity: the uniform widths alone suffice, pinching
  // only multiplies the cells next to 0.
  isqrt.singular_sharpness = std::numeric_limits<double>::infinity();
  cases.push_back(integral_case("inv-sqrt", CaseKind::Improper, "1/sqrt(x)", unit,
                                Expected::near(2.0, 1e-3), Provenance::Derived,
                                "antiderivative 2 sqrt(x)", isqrt));

  cases.push_back(integral_case("sinc-improper", CaseKind::Improper, "sin(x)/x",
                                ClosedInterval(0, kInf), Expected::near(kPi / 2, 1e-6),
                                Provenance::Derived, "Dirichlet integral pi/2"));

  IntegratorConfig cauchy;
  cauchy.tol = {1e-6, 1e-6};
  for (auto [branch, fn] : {std::pair{CauchyBranch::Sin, "sin"}, std::pair{CauchyBranch::Cos, "cos"}}) {
    for (int s : {0, 1, 2}) {
      const std::string text = std::string(fn) + "(x^2)*cos(" + std::to_string(s) + "*x)";
      cases.push_back(integral_case(
          "cauchy-convergent-" + std::string(fn) + "-s" + std::to_string(s), CaseKind::Improper,
          text, ClosedInterval(0, kInf), Expected::near(cauchy_closed_form(branch, s), 1e-4),
          Provenance::Paper, "closed form (1/2) sqrt(pi/2) [cos(s^2/4) -+ sin(s^2/4)]",
          cauchy));
      cases.back().budget_seconds = 30;
    }
  }

  IntegratorConfig div;
  div.tol = {1e-4, 1e-4};
  cases.push_back(integral_case("cauchy-divergent-sin", CaseKind::Improper,
                                "x*sin(x^2)*sin(x)", ClosedInterval(0, kInf),
                                Expected::with_status(Status::Diverged), Provenance::Paper,
                                "termwise derivative of the convergent family at s = 1", div));
  cases.push_back(integral_case("cauchy-divergent-cos", CaseKind::Improper,
                                "x*cos(x^2)*sin(x)", ClosedInterval(0, kInf),
                                Expected::with_status(Status::Diverged), Provenance::Paper,
                                "termwise derivative of the convergent family at s = 1", div));

  cases.push_back(ftc_case("ftc-square", "x^2", std::nullopt, unit, {}, Provenance::Trivial,
                           "F' = 2x"));
  cases.push_back(ftc_case("ftc-sin", "sin(x)", std::nullopt, unit, {}, Provenance::Trivial,
                           "F' = cos x"));
  cases.push_back(ftc_case("ftc-abs", "abs(x)", "piecewise(x > 0 -> 1, x < 0 -> -1, else -> 0)",
                           ClosedInterval(-1, 1), {0.0}, Provenance::Derived,
                           "integral of sign from -1 to x is |x| - 1"));
  cases.push_back(ftc_case("ftc-pathological", kPathologicalF, std::string(kPathological), unit,
                           {}, Provenance::Paper,
                           "g(x) = x^2 sin(1/x^3), derivative supplied analytically", path));

  cases.push_back(interchange_case("dui-smooth", CaseKind::Dui, "x^2*y", std::nullopt,
                                   {unit, unit}, std::nullopt, {0.25, 0.5, 0.75},
                                   Expected::with_verdict("HOLDS_ON_SAMPLES"),
                                   Provenance::Derived, "F(x) = x^2/2, F'(x) = x"));
  IntegratorConfig dui_cauchy;
  dui_cauchy.tol = {1e-4, 1e-4};
  cases.push_back(interchange_case(
      "dui-cauchy", CaseKind::Dui, "cos(y^2)*cos(x*y)", std::nullopt,
      {ClosedInterval(0, 2), ClosedInterval(0, kInf)}, std::vector<Window>{Window(0.5, 1.5)},
      {1.0}, Expected::with_verdict("INCONCLUSIVE"), Provenance::Paper,
      "inner integrals of the x-derivative diverge", dui_cauchy));
  cases.back().budget_seconds = 30;

  IntegratorConfig fubini;
  fubini.tol = {1e-4, 0};
  cases.push_back(interchange_case(
      "fubini-counterexample", CaseKind::Iterated,
      "piecewise(x^2 + y^2 == 0 -> 0, else -> (x^2 - y^2)/(x^2 + y^2)^2)", std::nullopt,
      {unit, unit}, std::vector<Window>{Window(0, 1)}, {},
      Expected::with_verdict("FAILS", kPi / 2, 0.02), Provenance::Derived,
      "iterated integrals +pi/4 and -pi/4", fubini));
  cases.push_back(interchange_case("iterated-smooth", CaseKind::Iterated, "x*y", std::nullopt,
                                   {unit, unit}, std::nullopt, {0.5},
                                   Expected::with_verdict("HOLDS_ON_SAMPLES"),
                                   Provenance::Derived, "product of one-dimensional integrals"));

  cases.push_back(series_case(
      "series-exponential", "x^n / n!",
      [](int n, double x) { return std::exp(n * std::log(x) - std::lgamma(n + 1.0)); },
      Expected::near(std::numbers::e - 2, 1e-6), Provenance::Derived,
      "sum of 1/(n+1)! = integral of e^x - 1 = e - 2"));
  IntegratorConfig tele;
  tele.tol = {1e-4, 0};
  cases.push_back(series_case(
      "series-telescoping-failure", "f_n - f_(n-1), f_n(x) = n x exp(-n x^2)",
      [](int n, double x) {
        auto f = [x](int k) { return k * x * std::exp(-k * x * x); };
        return f(n) - f(n - 1);
      },
      Expected::with_verdict("FAILS", 0.5, 0.01), Provenance::Derived,
      "pointwise sum 0, termwise sum (1 - e^-N)/2", tele));
  cases.push_back(series_case(
      "series-finite-support", "x, x^2, then 0",
      [](int n, double x) { return n == 1 ? x : (n == 2 ? x * x : 0.0); },
      Expected::with_verdict("HOLDS_ON_SAMPLES"), Provenance::Trivial,
      "finite sums commute with integrals"));
  return cases;
}

}  // namespace

const std::vector<NamedCase>& list_cases() {
  static const std::vector<NamedCase> cases = build();
  return cases;
}

}  // namespace gaugequad
