#include "gaugequad/partition.hpp"

#include <algorithm>
#include <cstring>
#include <cmath>
#include <numeric>

#include "gaugequad/format.hpp"

namespace gaugequad {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0,1) from the cell endpoints and the seed, independent of the
// order in which cells are visited.
double cell_uniform(std::uint64_t seed, double u, double v) {
  std::uint64_t bu = 0;
  std::uint64_t bv = 0;
  static_assert(sizeof(double) == sizeof(std::uint64_t));
  std::memcpy(&bu, &u, sizeof u);
  std::memcpy(&bv, &v, sizeof v);
  const std::uint64_t h = splitmix64(seed ^ splitmix64(bu ^ splitmix64(bv)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double nudge_inward(double edge, bool from_above) {
  const double margin = std::max(std::abs(edge), 1.0) * 1e-3;
  return from_above ? edge - margin : edge + margin;
}

class Walker {
 public:
  Walker(const Gauge& g, const PartitionOptions& opts,
         const std::function<void(const TaggedCell&)>& visit)
      : g_(g), opts_(opts), visit_(visit) {}

  void compact(double u, double v, int depth) {
    const ClosedInterval cell{ExtReal(u), ExtReal(v)};
    const double mid = u + (v - u) / 2.0;
    const bool mid_ok = u < mid && mid < v;
    if (mid_ok && try_tag(cell, mid)) return;
    if (try_tag(cell, u)) return;
    if (try_tag(cell, v)) return;
    if (depth >= opts_.max_depth) {
      throw DepthExceeded("partition depth " + std::to_string(opts_.max_depth) +
                              " exceeded on cell " + cell.to_string(),
                          u, v);
    }
    double split = mid;
    if (opts_.jitter) {
      const double theta = 0.375 + 0.25 * cell_uniform(opts_.seed, u, v);
      const double s = u + (v - u) * theta;
      if (u < s && s < v) split = s;
    }
    if (!(u < split && split < v)) {
      throw DepthExceeded("cell " + cell.to_string() + " cannot be split further", u, v);
    }
    compact(u, split, depth + 1);
    compact(split, v, depth + 1);
  }

  void emit(const ExtReal& tag, const ClosedInterval& cell) { visit_(TaggedCell{tag, cell}); }

 private:
  bool try_tag(const ClosedInterval& cell, double z) {
    if (!closed_subset_of_open(cell, g_.assign(ExtReal(z)))) return false;
    if (opts_.tag_filter && !opts_.tag_filter(z)) return false;
    visit_(TaggedCell{ExtReal(z), cell});
    return true;
  }

  const Gauge& g_;
  const PartitionOptions& opts_;
  const std::function<void(const TaggedCell&)>& visit_;
};

}  // namespace

std::vector<Violation> validate(const TaggedPartition& p) {
  std::vector<Violation> out;
  const auto& pairs = p.pairs();
  if (pairs.empty()) {
    out.push_back({Violation::Kind::Empty, 0, "partition has no cells"});
    return out;
  }
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pairs[a].cell.lo() < pairs[b].cell.lo();
  });
  const auto& target = p.target();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& c = pairs[order[i]];
    if (!c.cell.contains(c.tag)) {
      out.push_back({Violation::Kind::TagOutsideCell, i,
                     "tag " + c.tag.to_string() + " outside cell " + c.cell.to_string()});
    }
    if (c.cell.lo() < target.lo() || c.cell.hi() > target.hi()) {
      out.push_back({Violation::Kind::OutsideTarget, i,
                     "cell " + c.cell.to_string() + " leaves target " + target.to_string()});
    }
    if (i == 0) continue;
    const auto& prev = pairs[order[i - 1]];
    if (c.cell.lo() < prev.cell.hi()) {
      out.push_back({Violation::Kind::Overlap, i,
                     "cells " + prev.cell.to_string() + " and " + c.cell.to_string() +
                         " overlap"});
    } else if (c.cell.lo() > prev.cell.hi()) {
      out.push_back({Violation::Kind::Gap, i,
                     "gap between " + prev.cell.to_string() + " and " + c.cell.to_string()});
    }
  }
  const auto& first = pairs[order.front()].cell;
  ExtReal reach = first.hi();
  for (std::size_t i : order) reach = std::max(reach, pairs[i].cell.hi());
  if (first.lo() != target.lo() || reach != target.hi()) {
    out.push_back({Violation::Kind::Coverage, 0,
                   "cells span [" + first.lo().to_string() + ", " + reach.to_string() +
                       "], target is " + target.to_string()});
  }
  return out;
}

void for_each_fine_cell(const Gauge& g, const ClosedInterval& target,
                        const PartitionOptions& opts,
                        const std::function<void(const TaggedCell&)>& visit) {
  if (opts.max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  Walker walker(g, opts, visit);

  ExtReal lo = target.lo();
  ExtReal hi = target.hi();
  std::vector<TaggedCell> tail;  // right-hand tail, emitted last

  if (lo.is_neg_inf()) {
    const OpenInterval w = g.assign(lo);
    if (closed_subset_of_open(target, w)) {
      walker.emit(lo, target);
      return;
    }
    // w contains -inf, so w.lo = -inf and w.hi > -inf.
    double a = w.hi().is_finite() ? nudge_inward(w.hi().value(), true) : 0.0;
    if (hi.is_finite()) a = std::min(a, hi.value() - std::max(std::abs(hi.value()), 1.0));
    if (hi.is_pos_inf()) {
      const OpenInterval wr = g.assign(hi);
      if (!closed_subset_of_open(ClosedInterval(ExtReal(a), hi), wr)) {
        double b = wr.lo().is_finite() ? nudge_inward(wr.lo().value(), false) : 0.0;
        if (b <= a) {
          // Tails overlap: meet at a common point of both windows.
          const double m = a + (b - a) / 2.0;
          walker.emit(lo, ClosedInterval(lo, ExtReal(m)));
          walker.emit(hi, ClosedInterval(ExtReal(m), hi));
          return;
        }
        tail.push_back(TaggedCell{hi, ClosedInterval(ExtReal(b), hi)});
        hi = ExtReal(b);
      } else {
        walker.emit(lo, ClosedInterval(lo, ExtReal(a)));
        walker.emit(hi, ClosedInterval(ExtReal(a), hi));
        return;
      }
    }
    walker.emit(lo, ClosedInterval(lo, ExtReal(a)));
    lo = ExtReal(a);
  } else if (hi.is_pos_inf()) {
    const OpenInterval wr = g.assign(hi);
    if (closed_subset_of_open(target, wr)) {
      walker.emit(hi, target);
      return;
    }
    double b = wr.lo().is_finite() ? nudge_inward(wr.lo().value(), false) : 0.0;
    b = std::max(b, lo.value() + std::max(std::abs(lo.value()), 1.0));
    tail.push_back(TaggedCell{hi, ClosedInterval(ExtReal(b), hi)});
    hi = ExtReal(b);
  }

  // Marked points become cell endpoints, so they are available as tags.
  double from = lo.value();
  const double to = hi.value();
  const auto& marks = g.marks();
  for (auto it = std::upper_bound(marks.begin(), marks.end(), from);
       it != marks.end() && *it < to; ++it) {
    walker.compact(from, *it, 0);
    from = *it;
  }
  walker.compact(from, to, 0);
  for (const auto& c : tail) walker.emit(c.tag, c.cell);
}

TaggedPartition cousin_fine_partition(const Gauge& g, const ClosedInterval& target,
                                      int max_depth) {
  PartitionOptions opts;
  opts.max_depth = max_depth;
  return cousin_fine_partition(g, target, opts);
}

TaggedPartition cousin_fine_partition(const Gauge& g, const ClosedInterval& target,
                                      const PartitionOptions& opts) {
  std::vector<TaggedCell> cells;
  for_each_fine_cell(g, target, opts, [&](const TaggedCell& c) { cells.push_back(c); });
  return TaggedPartition(std::move(cells), target);
}

double riemann_sum(const Evaluator& f, const TaggedPartition& p) {
  double sum = 0.0;
  for (const auto& c : p.pairs()) {
    if (!c.cell.is_bounded() || !c.tag.is_finite()) continue;
    const double z = c.tag.value();
    double fz = 0.0;
    try {
      fz = f(z);
    } catch (const std::exception& e) {
      throw EvaluationError(std::string(e.what()) + " at tag " + format_double(z), z);
    }
    if (!std::isfinite(fz)) {
      throw EvaluationError("integrand undefined at tag " + format_double(z), z);
    }
    sum += fz * length(c.cell);
  }
  return sum;
}

}  // namespace gaugequad
