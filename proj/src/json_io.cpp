#include "gaugequad/json_io.hpp"

#include <cmath>

#include "gaugequad/gauge.hpp"

namespace gaugequad {

using nlohmann::json;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string violation_kind(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Empty: return "empty";
    case Violation::Kind::TagOutsideCell: return "tag_outside_cell";
    case Violation::Kind::OutsideTarget: return "outside_target";
    case Violation::Kind::Overlap: return "overlap";
    case Violation::Kind::Gap: return "gap";
    case Violation::Kind::Coverage: return "coverage";
  }
  return "coverage";
}

}  // namespace

json to_json(const ExtReal& x) {
  if (x.is_finite()) return x.value();
  return x.is_neg_inf() ? "-inf" : "+inf";
}

json to_json(const ClosedInterval& i) { return json::array({to_json(i.lo()), to_json(i.hi())}); }

json to_json(const TaggedPartition& p, const Gauge& g) {
  json cells = json::array();
  for (const auto& c : p.pairs())
    cells.push_back({{"tag", to_json(c.tag)}, {"lo", to_json(c.cell.lo())},
                     {"hi", to_json(c.cell.hi())}});
  json violations = json::array();
  for (const auto& v : validate(p))
    violations.push_back({{"kind", violation_kind(v.kind)}, {"index", v.index},
                          {"message", v.message}});
  return {{"target", to_json(p.target())}, {"gauge", g.description()},
          {"cells", cells},   {"violations", violations},
          {"fine", is_fine(p, g)}};
}

json to_json(const IntegralResult& r, bool trace) {
  json j{{"value", num(r.value)},
         {"error_estimate", num(r.error_estimate)},
         {"status", to_string(r.status)},
         {"evaluations", r.evaluations},
         {"message", r.message}};
  if (trace) {
    json t = json::array();
    for (const auto& e : r.trace) {
      json row{{"index", e.index}, {"value", num(e.value)}, {"spread", num(e.spread)}};
      if (e.cutoff) row["cutoff"] = num(*e.cutoff);
      t.push_back(row);
    }
    j["trace"] = t;
  }
  return j;
}

json to_json(const FtcReport& r) {
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back({{"x", num(p.x)}, {"integral", num(p.integral)},
                   {"difference", num(p.difference)}, {"residual", num(p.residual)},
                   {"allowed", num(p.allowed)}, {"status", to_string(p.status)}});
  return {{"points", pts}, {"max_residual", num(r.max_residual)},
          {"outcome", to_string(r.outcome)}, {"message", r.message}};
}

json to_json(const InterchangeReport& r, bool trace) {
  json windows = json::array();
  for (const auto& w : r.windows) {
    windows.push_back({{"s", to_json(w.window.s)},
                       {"t", to_json(w.window.t)},
                       {"lhs", to_json(w.lhs, trace)},
                       {"rhs", to_json(w.rhs, trace)},
                       {"rhs_skipped", w.rhs_skipped},
                       {"gap", num(w.gap)},
                       {"allowed", num(w.allowed)},
                       {"verdict", to_string(w.verdict)}});
  }
  json pointwise = json::array();
  for (const auto& p : r.pointwise) {
    pointwise.push_back({{"x", num(p.x)},
                         {"derivative", num(p.derivative.value)},
                         {"derivative_error", num(p.derivative.error)},
                         {"reference", to_json(p.reference, false)},
                         {"gap", num(p.gap)}});
  }
  json checks = json::array();
  for (const auto& c : r.endpoint_checks) {
    checks.push_back({{"window", c.window},
                      {"y", num(c.y)},
                      {"integral", to_json(c.integral, false)},
                      {"difference", num(c.difference)},
                      {"ok", c.ok}});
  }
  return {{"kind", r.kind},
          {"windows", windows},
          {"pointwise", pointwise},
          {"endpoint_checks", checks},
          {"overall", to_string(r.overall)},
          {"notes", r.notes}};
}

json to_json(const CaseReport& r, bool trace, bool timing) {
  json expected{{"kind", r.expected.kind == Expected::Kind::Value    ? "value"
                         : r.expected.kind == Expected::Kind::Status ? "status"
                                                                     : "verdict"}};
  switch (r.expected.kind) {
    case Expected::Kind::Value:
      expected["value"] = num(r.expected.value);
      expected["tolerance"] = num(r.expected.tolerance);
      break;
    case Expected::Kind::Status: expected["status"] = to_string(r.expected.status); break;
    case Expected::Kind::Verdict:
      expected["verdict"] = r.expected.verdict;
      if (r.expected.gap) {
        expected["gap"] = num(*r.expected.gap);
        expected["gap_tolerance"] = num(r.expected.gap_tolerance);
      }
      break;
  }
  json j{{"case", r.name},
         {"kind", to_string(r.kind)},
         {"provenance", to_string(r.provenance)},
         {"note", r.note},
         {"expected", expected},
         {"actual", r.actual},
         {"pass", r.pass},
         {"message", r.message}};
  if (r.actual_value) j["actual_value"] = num(*r.actual_value);
  if (r.actual_gap) j["gap"] = num(*r.actual_gap);
  if (r.outcome.integral) j["result"] = to_json(*r.outcome.integral, trace);
  if (r.outcome.ftc) j["report"] = to_json(*r.outcome.ftc);
  if (r.outcome.interchange) j["report"] = to_json(*r.outcome.interchange, trace);
  if (timing) {
    j["runtime_seconds"] = r.runtime_seconds;
    j["budget_seconds"] = r.budget_seconds;
  }
  return j;
}

}  // namespace gaugequad
