#pragma once

// Points and intervals of the two-point compactified real line [-inf, inf].

#include <compare>
#include <stdexcept>
#include <string>

namespace gaugequad {

class IntervalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A finite real or one of the two symbolic infinities. Infinities are
// symbols, never IEEE infinities, and NaN is never stored.
class ExtReal {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  constexpr ExtReal() = default;
  ExtReal(double v);  // NOLINT: implicit from finite doubles is intended

  static constexpr ExtReal neg_inf() { return ExtReal(Kind::NegInf); }
  static constexpr ExtReal pos_inf() { return ExtReal(Kind::PosInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }

  // Throws if not finite.
  double value() const;

  std::string to_string() const;
  // Accepts decimal reals and "inf", "+inf", "-inf".
  static ExtReal parse(const std::string& text);

  friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b);
  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  constexpr explicit ExtReal(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  double v_ = 0.0;
};

// Nondegenerate closed interval [lo, hi], lo < hi.
class ClosedInterval {
 public:
  ClosedInterval(ExtReal lo, ExtReal hi);

  const ExtReal& lo() const { return lo_; }
  const ExtReal& hi() const { return hi_; }
  bool is_bounded() const { return lo_.is_finite() && hi_.is_finite(); }
  bool contains(const ExtReal& x) const { return lo_ <= x && x <= hi_; }

  std::string to_string() const;
  friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;

 private:
  ExtReal lo_;
  ExtReal hi_;
};

// Open interval of the compactified line: (a,b), [-inf,b), (a,inf] or
// [-inf,inf]. The include flags say whether the infinite endpoint itself
// is a member.
class OpenInterval {
 public:
  OpenInterval(ExtReal lo, ExtReal hi, bool includes_neg_inf = false,
               bool includes_pos_inf = false);

  // (x - r, x + r) for finite x.
  static OpenInterval around(double x, double radius);
  static OpenInterval everything();

  const ExtReal& lo() const { return lo_; }
  const ExtReal& hi() const { return hi_; }
  bool includes_neg_inf() const { return inc_neg_; }
  bool includes_pos_inf() const { return inc_pos_; }

  std::string to_string() const;
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;

 private:
  ExtReal lo_;
  ExtReal hi_;
  bool inc_neg_;
  bool inc_pos_;
};

// hi - lo for bounded intervals, exactly 0 when either end is infinite.
double length(const ClosedInterval& i);

bool open_contains(const OpenInterval& o, const ExtReal& x);

bool closed_subset_of_open(const ClosedInterval& c, const OpenInterval& o);

// Intersection of two open intervals sharing at least one point `x`.
OpenInterval intersect(const OpenInterval& a, const OpenInterval& b);

}  // namespace gaugequad
