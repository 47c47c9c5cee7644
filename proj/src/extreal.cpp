#include "gaugequad/extreal.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "gaugequad/format.hpp"

namespace gaugequad {

ExtReal::ExtReal(double v) : kind_(Kind::Finite), v_(v) {
  if (!std::isfinite(v)) {
    throw IntervalError("ExtReal: finite value required, got " + format_double(v));
  }
}

double ExtReal::value() const {
  if (!is_finite()) throw IntervalError("ExtReal: value() of " + to_string());
  return v_;
}

std::string ExtReal::to_string() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    case Kind::Finite: break;
  }
  return format_double(v_);
}

ExtReal ExtReal::parse(const std::string& text) {
  if (text == "inf" || text == "+inf") return pos_inf();
  if (text == "-inf") return neg_inf();
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || first == last) {
    throw IntervalError("cannot parse extended real '" + text + "'");
  }
  return ExtReal(v);
}

std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
  auto rank = [](ExtReal::Kind k) {
    return k == ExtReal::Kind::NegInf ? 0 : k == ExtReal::Kind::Finite ? 1 : 2;
  };
  if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
  if (!a.is_finite()) return std::strong_ordering::equal;
  if (a.v_ < b.v_) return std::strong_ordering::less;
  if (a.v_ > b.v_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ClosedInterval::ClosedInterval(ExtReal lo, ExtReal hi) : lo_(lo), hi_(hi) {
  if (!(lo_ < hi_)) {
    throw IntervalError("degenerate closed interval [" + lo_.to_string() + ", " +
                        hi_.to_string() + "]");
  }
}

std::string ClosedInterval::to_string() const {
  return "[" + lo_.to_string() + ", " + hi_.to_string() + "]";
}

OpenInterval::OpenInterval(ExtReal lo, ExtReal hi, bool includes_neg_inf,
                           bool includes_pos_inf)
    : lo_(lo), hi_(hi), inc_neg_(includes_neg_inf), inc_pos_(includes_pos_inf) {
  if (!(lo_ < hi_)) {
    throw IntervalError("empty open interval (" + lo_.to_string() + ", " +
                        hi_.to_string() + ")");
  }
  if (inc_neg_ && !lo_.is_neg_inf()) {
    throw IntervalError("open interval may include -inf only when lo = -inf");
  }
  if (inc_pos_ && !hi_.is_pos_inf()) {
    throw IntervalError("open interval may include +inf only when hi = +inf");
  }
}

OpenInterval OpenInterval::around(double x, double radius) {
  return OpenInterval(ExtReal(x - radius), ExtReal(x + radius));
}

OpenInterval OpenInterval::everything() {
  return OpenInterval(ExtReal::neg_inf(), ExtReal::pos_inf(), true, true);
}

std::string OpenInterval::to_string() const {
  return std::string(inc_neg_ ? "[" : "(") + lo_.to_string() + ", " + hi_.to_string() +
         (inc_pos_ ? "]" : ")");
}

double length(const ClosedInterval& i) {
  if (!i.is_bounded()) return 0.0;
  return i.hi().value() - i.lo().value();
}

bool open_contains(const OpenInterval& o, const ExtReal& x) {
  if (x.is_neg_inf()) return o.includes_neg_inf();
  if (x.is_pos_inf()) return o.includes_pos_inf();
  return o.lo() < x && x < o.hi();
}

bool closed_subset_of_open(const ClosedInterval& c, const OpenInterval& o) {
  // Both sets are convex, so checking the endpoints suffices.
  return open_contains(o, c.lo()) && open_contains(o, c.hi());
}

OpenInterval intersect(const OpenInterval& a, const OpenInterval& b) {
  const ExtReal lo = std::max(a.lo(), b.lo());
  const ExtReal hi = std::min(a.hi(), b.hi());
  const bool inc_neg = a.includes_neg_inf() && b.includes_neg_inf();
  const bool inc_pos = a.includes_pos_inf() && b.includes_pos_inf();
  return OpenInterval(lo, hi, inc_neg, inc_pos);
}

}  // namespace gaugequad
