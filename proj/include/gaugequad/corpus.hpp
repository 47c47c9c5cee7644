#pragma once

// Registry of named cases with reference values or expected outcomes.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gaugequad/calculus.hpp"
#include "gaugequad/integrator.hpp"

namespace gaugequad {

enum class CaseKind { Integrate, Improper, Ftc, Dui, Iterated, Series };
std::string to_string(CaseKind k);

enum class Provenance { Paper, Derived, Trivial };
std::string to_string(Provenance p);

struct Expected {
  enum class Kind { Value, Status, Verdict };
  Kind kind = Kind::Value;
  double value = 0.0;
  double tolerance = 0.0;
  Status status = Status::Converged;
  std::string verdict;  // FtcOutcome or Verdict spelling
  // Optional size of the full-window gap, for verdict expectations.
  std::optional<double> gap;
  double gap_tolerance = 0.0;

  static Expected near(double v, double tol);
  static Expected with_status(Status s);
  static Expected with_verdict(std::string v);
  static Expected with_verdict(std::string v, double gap, double gap_tol);
  std::string describe() const;
};

struct CaseOutcome {
  std::optional<IntegralResult> integral;
  std::optional<FtcReport> ftc;
  std::optional<InterchangeReport> interchange;
};

struct NamedCase {
  std::string name;
  CaseKind kind;
  std::string description;
  std::vector<std::pair<std::string, std::string>> inputs;  // (label, text)
  Expected expected;
  Provenance provenance;
  std::string note;
  double budget_seconds = 60.0;
  IntegratorConfig cfg;
  // Integrand and interval for INTEGRATE / IMPROPER cases.
  Evaluator integrand;
  std::optional<ClosedInterval> interval;
  std::function<CaseOutcome(const IntegratorConfig&)> run;
};

class UnknownCase : public std::invalid_argument {
 public:
  explicit UnknownCase(const std::string& name)
      : std::invalid_argument("unknown case '" + name + "'") {}
};

const std::vector<NamedCase>& list_cases();
const NamedCase& find_case(const std::string& name);

struct CaseOverrides {
  std::optional<Tolerance> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_refinements;
  std::optional<int> max_depth;
  std::optional<double> singular_sharpness;

  IntegratorConfig apply(IntegratorConfig cfg) const;
};

struct CaseReport {
  std::string name;
  CaseKind kind = CaseKind::Integrate;
  Provenance provenance = Provenance::Trivial;
  std::string note;
  Expected expected;
  CaseOutcome outcome;
  std::string actual;  // value, status or verdict, as text
  std::optional<double> actual_value;
  std::optional<double> actual_gap;
  bool pass = false;
  std::string message;
  double runtime_seconds = 0.0;
  double budget_seconds = 0.0;
};

CaseReport run_case(const std::string& name, const CaseOverrides& overrides = {});

std::string format_report(const CaseReport& r);

}  // namespace gaugequad
