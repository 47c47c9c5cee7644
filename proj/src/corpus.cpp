#include "gaugequad/corpus.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "gaugequad/format.hpp"

namespace gaugequad {

std::string to_string(CaseKind k) {
  switch (k) {
    case CaseKind::Integrate: return "INTEGRATE";
    case CaseKind::Improper: return "IMPROPER";
    case CaseKind::Ftc: return "FTC";
    case CaseKind::Dui: return "DUI";
    case CaseKind::Iterated: return "ITERATED";
    case CaseKind::Series: return "SERIES";
  }
  return "INTEGRATE";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Paper: return "PAPER";
    case Provenance::Derived: return "DERIVED";
    case Provenance::Trivial: return "TRIVIAL";
  }
  return "TRIVIAL";
}

Expected Expected::near(double v, double tol) {
  Expected e;
  e.kind = Kind::Value;
  e.value = v;
  e.tolerance = tol;
  return e;
}

Expected Expected::with_status(Status s) {
  Expected e;
  e.kind = Kind::Status;
  e.status = s;
  return e;
}

Expected Expected::with_verdict(std::string v) {
  Expected e;
  e.kind = Kind::Verdict;
  e.verdict = std::move(v);
  return e;
}

Expected Expected::with_verdict(std::string v, double gap, double gap_tol) {
  Expected e = with_verdict(std::move(v));
  e.gap = gap;
  e.gap_tolerance = gap_tol;
  return e;
}

std::string Expected::describe() const {
  switch (kind) {
    case Kind::Value: return format_double(value) + " +- " + format_double(tolerance);
    case Kind::Status: return to_string(status);
    case Kind::Verdict:
      return gap ? verdict + " with gap " + format_double(*gap) + " +- " +
                       format_double(gap_tolerance)
                 : verdict;
  }
  return "";
}

IntegratorConfig CaseOverrides::apply(IntegratorConfig cfg) const {
  if (tol) cfg.tol = *tol;
  if (seed) cfg.seed = *seed;
  if (max_refinements) cfg.max_refinements = *max_refinements;
  if (max_depth) cfg.max_depth = *max_depth;
  if (singular_sharpness) cfg.singular_sharpness = *singular_sharpness;
  return cfg;
}

const NamedCase& find_case(const std::string& name) {
  for (const auto& c : list_cases())
    if (c.name == name) return c;
  throw UnknownCase(name);
}

namespace {

void judge(CaseReport& r) {
  const Expected& e = r.expected;
  const CaseOutcome& o = r.outcome;
  if (o.integral) {
    const IntegralResult& res = *o.integral;
    r.actual_value = res.value;
    if (e.kind == Expected::Kind::Status) {
      r.actual = to_string(res.status);
      r.pass = res.status == e.status;
    } else {
      r.actual = format_double(res.value) + " (" + to_string(res.status) + ")";
      r.pass = res.status == Status::Converged && std::fabs(res.value - e.value) <= e.tolerance;
    }
    r.message = res.message;
    return;
  }
  if (o.ftc) {
    r.actual = to_string(o.ftc->outcome);
    r.actual_value = o.ftc->max_residual;
    r.pass = r.actual == e.verdict;
    r.message = o.ftc->message;
    return;
  }
  const InterchangeReport& rep = *o.interchange;
  r.actual = to_string(rep.overall);
  if (!rep.windows.empty()) {
    const WindowResult& w = rep.windows.front();
    if (std::isfinite(w.gap)) r.actual_gap = w.gap;
    if (e.kind == Expected::Kind::Value) {
      r.actual_value = w.lhs.value;
      const bool lhs_ok = w.lhs.status == Status::Converged &&
                          std::fabs(w.lhs.value - e.value) <= e.tolerance;
      const bool rhs_ok = w.rhs.status == Status::Converged &&
                          std::fabs(w.rhs.value - e.value) <= e.tolerance;
      r.actual = format_double(w.lhs.value) + " / " + format_double(w.rhs.value) + " (" +
                 to_string(rep.overall) + ")";
      r.pass = lhs_ok && rhs_ok;
      return;
    }
  }
  r.pass = r.actual == e.verdict;
  if (e.gap) {
    r.pass = r.pass && r.actual_gap && std::fabs(*r.actual_gap - *e.gap) <= e.gap_tolerance;
  }
}

}  // namespace

CaseReport run_case(const std::string& name, const CaseOverrides& overrides) {
  const NamedCase& c = find_case(name);
  CaseReport r;
  r.name = c.name;
  r.kind = c.kind;
  r.provenance = c.provenance;
  r.note = c.note;
  r.expected = c.expected;
  r.budget_seconds = c.budget_seconds;
  const IntegratorConfig cfg = overrides.apply(c.cfg);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.outcome = c.run(cfg);
    judge(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.actual = "ERROR";
    r.message = e.what();
  }
  r.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string format_report(const CaseReport& r) {
  std::ostringstream out;
  out << "case:       " << r.name << '\n'
      << "kind:       " << to_string(r.kind) << '\n'
      << "provenance: " << to_string(r.provenance) << (r.note.empty() ? "" : " (" + r.note + ")")
      << '\n'
      << "expected:   " << r.expected.describe() << '\n'
      << "actual:     " << r.actual << '\n';
  if (r.actual_gap) out << "gap:        " << format_double(*r.actual_gap) << '\n';
  if (!r.message.empty()) out << "message:    " << r.message << '\n';
  out << "result:     " << (r.pass ? "pass" : "fail") << '\n';
  return out.str();
}

}  // namespace gaugequad
