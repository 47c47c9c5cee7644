#pragma once

// Gauges: maps from each point of [-inf, inf] to an open interval containing
// it. A gauge controls how fine a tagged partition must be near each tag.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gaugequad/extreal.hpp"

namespace gaugequad {

class TaggedPartition;

class Gauge {
 public:
  using Map = std::function<OpenInterval(const ExtReal&)>;

  // `marks` are points that a fine partition can only cover by tagging them
  // (windows pinch toward them); partitioners split there first.
  Gauge(Map assign, std::string description, std::vector<double> marks = {});

  OpenInterval assign(const ExtReal& x) const { return assign_(x); }
  OpenInterval operator()(const ExtReal& x) const { return assign_(x); }
  const std::string& description() const { return description_; }
  // Sorted, without duplicates.
  const std::vector<double>& marks() const { return marks_; }

 private:
  Map assign_;
  std::string description_;
  std::vector<double> marks_;
};

// x -> [-inf, inf] for every x.
Gauge everything_gauge();

// Finite x -> (x - delta/2, x + delta/2); -inf -> [-inf, -tail_cutoff);
// +inf -> (tail_cutoff, inf].
Gauge uniform_gauge(double delta, double tail_cutoff);

// Smallest admissible half-width of a window centred at x. Windows never
// shrink below this so that x - r < x < x + r survives rounding.
double min_half_width(double x);

// Narrows `base` near the listed points: the window at x is intersected with
// a window of half-width sharpness * d(x)^2, d(x) the distance to the nearest
// listed point. At a listed point itself the base window is kept.
Gauge singularity_gauge(Gauge base, std::vector<double> points, double sharpness);

inline constexpr std::size_t kDefaultEnumerationPrefix = 100000;

// Countable-set gauge. The k-th enumerated point (first occurrence wins) gets
// a window of half-width epsilon * 2^(-k-2), so the enumerated windows have
// total length at most epsilon. Only the first `prefix` points are used.
Gauge enumeration_gauge(std::span<const double> points, double epsilon, Gauge base,
                        std::size_t prefix = kDefaultEnumerationPrefix);

// Nominal half-width epsilon * 2^(-k-2) of the k-th enumeration window before
// flooring to the nearest representable window.
double enumeration_radius(double epsilon, std::size_t k);

Gauge intersect_gauges(Gauge g1, Gauge g2);

bool is_fine(const TaggedPartition& p, const Gauge& g);

// Distinct rationals p/q in [0, 1] ordered by denominator then numerator:
// 0, 1, 1/2, 1/3, 2/3, 1/4, 3/4, ...  Returns the first `count` values.
std::vector<double> rationals_in_unit_interval(std::size_t count);

// Lookup table for an enumeration: index of the first occurrence of each value.
class EnumerationIndex {
 public:
  EnumerationIndex(std::span<const double> points, std::size_t prefix);
  // -1 when x is not among the enumerated points.
  long long find(double x) const;
  std::size_t size() const { return size_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  std::size_t size_ = 0;
};

}  // namespace gaugequad
