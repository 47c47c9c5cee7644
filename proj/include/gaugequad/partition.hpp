#pragma once

// Tagged partitions of an interval of the compactified line, validation, and
// a constructive Cousin-lemma partitioner that builds gauge-fine partitions.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaugequad/extreal.hpp"
#include "gaugequad/gauge.hpp"

namespace gaugequad {

// Scalar integrand of one real variable. A NaN return marks a point where the
// function is undefined.
using Evaluator = std::function<double(double)>;

struct TaggedCell {
  ExtReal tag;
  ClosedInterval cell;
};

class TaggedPartition {
 public:
  TaggedPartition(std::vector<TaggedCell> pairs, ClosedInterval target)
      : pairs_(std::move(pairs)), target_(target) {}

  const std::vector<TaggedCell>& pairs() const { return pairs_; }
  const ClosedInterval& target() const { return target_; }
  std::size_t size() const { return pairs_.size(); }

 private:
  std::vector<TaggedCell> pairs_;
  ClosedInterval target_;
};

struct Violation {
  enum class Kind { Empty, TagOutsideCell, OutsideTarget, Overlap, Gap, Coverage };
  Kind kind;
  std::size_t index;  // position in the pair list (after sorting by cell start)
  std::string message;
};

// Every violated partition invariant; an empty list means the partition is valid.
// Repeated tags are allowed.
std::vector<Violation> validate(const TaggedPartition& p);

class DepthExceeded : public std::runtime_error {
 public:
  DepthExceeded(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double at)
      : std::runtime_error(what), at_(at) {}
  double at() const { return at_; }

 private:
  double at_;
};

inline constexpr int kDefaultMaxDepth = 60;

struct PartitionOptions {
  int max_depth = kDefaultMaxDepth;
  // When set, bisection points are drawn from the middle quarter of each cell
  // instead of the exact midpoint, seeded per cell so the result does not
  // depend on traversal order.
  bool jitter = false;
  std::uint64_t seed = 0;
  // Optional admissibility test for finite candidate tags. Rejected candidates
  // are skipped; a cell with no admissible fine tag is split further.
  std::function<bool(double)> tag_filter;
};

// Streams the cells of a gauge-fine partition of `target` from left to right.
// Candidate tags for a compact cell [u,v] are tried in the order midpoint, u, v.
// Unbounded cells are carved first and tagged with the matching infinity.
void for_each_fine_cell(const Gauge& g, const ClosedInterval& target,
                        const PartitionOptions& opts,
                        const std::function<void(const TaggedCell&)>& visit);

TaggedPartition cousin_fine_partition(const Gauge& g, const ClosedInterval& target,
                                      int max_depth = kDefaultMaxDepth);

TaggedPartition cousin_fine_partition(const Gauge& g, const ClosedInterval& target,
                                      const PartitionOptions& opts);

// Sum of f(tag) * |cell|. Unbounded cells contribute 0 and f is never
// evaluated at an infinite tag.
double riemann_sum(const Evaluator& f, const TaggedPartition& p);

}  // namespace gaugequad
