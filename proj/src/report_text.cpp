#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gaugequad/calculus.hpp"
#include "gaugequad/format.hpp"

namespace gaugequad {

namespace {

using Row = std::vector<std::string>;

std::string num(double v) { return std::isnan(v) ? "-" : format_double(v); }

void render(std::ostringstream& out, const Row& header, const std::vector<Row>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const Row& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  auto line = [&](const Row& r) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) s += "  ";
      s += r[c];
      if (c + 1 < r.size()) s.append(width[c] - r[c].size(), ' ');
    }
    out << s << '\n';
  };
  line(header);
  Row rule;
  for (std::size_t w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const Row& r : rows) line(r);
}

}  // namespace

std::string format_table(const InterchangeReport& r) {
  std::ostringstream out;
  std::vector<Row> rows;
  for (const auto& w : r.windows) {
    rows.push_back({"[" + w.window.s.to_string() + ", " + w.window.t.to_string() + "]",
                    num(w.lhs.value), to_string(w.lhs.status),
                    w.rhs_skipped ? "skipped" : num(w.rhs.value),
                    w.rhs_skipped ? "-" : to_string(w.rhs.status), num(w.gap), num(w.allowed),
                    to_string(w.verdict)});
  }
  render(out, {"window", "lhs", "lhs status", "rhs", "rhs status", "gap", "allowed", "verdict"},
         rows);
  if (!r.pointwise.empty()) {
    out << '\n';
    rows.clear();
    for (const auto& p : r.pointwise) {
      rows.push_back({num(p.x), num(p.derivative.value), num(p.derivative.error),
                      num(p.reference.value), to_string(p.reference.status), num(p.gap)});
    }
    render(out, {"x", "derivative", "deriv err", "reference", "ref status", "gap"}, rows);
  }
  if (!r.endpoint_checks.empty()) {
    std::size_t ok = 0;
    for (const auto& c : r.endpoint_checks) ok += c.ok ? 1 : 0;
    out << "\nendpoint checks passed: " << ok << "/" << r.endpoint_checks.size() << '\n';
  }
  out << "\noverall: " << to_string(r.overall) << '\n';
  if (!r.notes.empty()) out << "notes: " << r.notes << '\n';
  return out.str();
}

std::string format_table(const FtcReport& r) {
  std::ostringstream out;
  std::vector<Row> rows;
  for (const auto& p : r.points) {
    rows.push_back({num(p.x), num(p.integral), num(p.difference), num(p.residual),
                    num(p.allowed), to_string(p.status)});
  }
  render(out, {"x", "integral of F'", "F(x) - F(a)", "residual", "allowed", "status"}, rows);
  out << "\nmax residual: " << num(r.max_residual) << "\noutcome: " << to_string(r.outcome)
      << '\n';
  if (!r.message.empty()) out << "message: " << r.message << '\n';
  return out.str();
}

}  // namespace gaugequad
