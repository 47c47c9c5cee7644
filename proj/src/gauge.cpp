#include "gaugequad/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "gaugequad/format.hpp"
#include "gaugequad/partition.hpp"

namespace gaugequad {

namespace {

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

Gauge::Gauge(Map assign, std::string description, std::vector<double> marks)
    : assign_(std::move(assign)),
      description_(std::move(description)),
      marks_(merged(std::move(marks), {})) {}

Gauge everything_gauge() {
  return Gauge([](const ExtReal&) { return OpenInterval::everything(); }, "everything");
}

Gauge uniform_gauge(double delta, double tail_cutoff) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("uniform_gauge: delta must be positive");
  }
  if (!(tail_cutoff > 0.0) || !std::isfinite(tail_cutoff)) {
    throw std::invalid_argument("uniform_gauge: tail_cutoff must be positive");
  }
  const double half = delta / 2.0;
  return Gauge(
      [half, tail_cutoff](const ExtReal& x) {
        if (x.is_neg_inf()) {
          return OpenInterval(ExtReal::neg_inf(), ExtReal(-tail_cutoff), true, false);
        }
        if (x.is_pos_inf()) {
          return OpenInterval(ExtReal(tail_cutoff), ExtReal::pos_inf(), false, true);
        }
        const double v = x.value();
        return OpenInterval::around(v, std::max(half, min_half_width(v)));
      },
      "uniform(delta=" + format_double(delta) + ", cutoff=" + format_double(tail_cutoff) +
          ")");
}

double min_half_width(double x) {
  return 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(x), 1.0);
}

Gauge singularity_gauge(Gauge base, std::vector<double> points, double sharpness) {
  if (!(sharpness > 0.0)) {
    throw std::invalid_argument("singularity_gauge: sharpness must be positive");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::string desc = base.description() + " & singular(sharpness=" +
                     format_double(sharpness) + ", points=" +
                     std::to_string(points.size()) + ")";
  std::vector<double> marks = merged(base.marks(), points);
  return Gauge(
      [base = std::move(base), points = std::move(points), sharpness](const ExtReal& x) {
        const OpenInterval w = base.assign(x);
        if (!x.is_finite() || points.empty()) return w;
        const double v = x.value();
        auto it = std::lower_bound(points.begin(), points.end(), v);
        double d = std::numeric_limits<double>::infinity();
        if (it != points.end()) d = *it - v;
        if (it != points.begin()) d = std::min(d, v - *std::prev(it));
        if (d == 0.0) return w;
        const double r = std::max(sharpness * d * d, min_half_width(v));
        if (!std::isfinite(r)) return w;
        return intersect(w, OpenInterval::around(v, r));
      },
      std::move(desc), std::move(marks));
}

double enumeration_radius(double epsilon, std::size_t k) {
  return std::ldexp(epsilon, -static_cast<int>(std::min<std::size_t>(k, 2000)) - 2);
}

struct EnumerationIndex::Impl {
  std::unordered_map<double, std::size_t> first;
};

EnumerationIndex::EnumerationIndex(std::span<const double> points, std::size_t prefix) {
  auto impl = std::make_shared<Impl>();
  const std::size_t n = std::min(prefix, points.size());
  impl->first.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    // +0.0 and -0.0 hash alike, so no normalisation is needed.
    impl->first.emplace(points[k], k);
  }
  size_ = n;
  impl_ = std::move(impl);
}

long long EnumerationIndex::find(double x) const {
  auto it = impl_->first.find(x);
  return it == impl_->first.end() ? -1 : static_cast<long long>(it->second);
}

Gauge enumeration_gauge(std::span<const double> points, double epsilon, Gauge base,
                        std::size_t prefix) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("enumeration_gauge: epsilon must be positive");
  }
  EnumerationIndex index(points, prefix);
  std::string desc = base.description() + " & enumeration(eps=" + format_double(epsilon) +
                     ", n=" + std::to_string(index.size()) + ")";
  std::vector<double> marks = base.marks();
  return Gauge(
      [base = std::move(base), index = std::move(index), epsilon](const ExtReal& x) {
        const OpenInterval w = base.assign(x);
        if (!x.is_finite()) return w;
        const double v = x.value();
        const long long k = index.find(v);
        if (k < 0) return w;
        const double r = enumeration_radius(epsilon, static_cast<std::size_t>(k));
        const double lo = v - r;
        const double hi = v + r;
        if (lo < v && v < hi) return intersect(w, OpenInterval(ExtReal(lo), ExtReal(hi)));
        // Too narrow to represent: the tightest double window, which holds no
        // nondegenerate cell.
        const double inf = std::numeric_limits<double>::infinity();
        return intersect(w, OpenInterval(ExtReal(std::nextafter(v, -inf)),
                                         ExtReal(std::nextafter(v, inf))));
      },
      std::move(desc), std::move(marks));
}

Gauge intersect_gauges(Gauge g1, Gauge g2) {
  std::string desc = "(" + g1.description() + ") & (" + g2.description() + ")";
  std::vector<double> marks = merged(g1.marks(), g2.marks());
  return Gauge(
      [g1 = std::move(g1), g2 = std::move(g2)](const ExtReal& x) {
        return intersect(g1.assign(x), g2.assign(x));
      },
      std::move(desc), std::move(marks));
}

bool is_fine(const TaggedPartition& p, const Gauge& g) {
  return std::all_of(p.pairs().begin(), p.pairs().end(), [&](const TaggedCell& c) {
    return closed_subset_of_open(c.cell, g.assign(c.tag));
  });
}

std::vector<double> rationals_in_unit_interval(std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  if (count > 0) out.push_back(0.0);
  if (count > 1) out.push_back(1.0);
  for (long long q = 2; out.size() < count; ++q) {
    for (long long p = 1; p < q && out.size() < count; ++p) {
      if (std::gcd(p, q) == 1) out.push_back(static_cast<double>(p) / static_cast<double>(q));
    }
  }
  return out;
}

}  // namespace gaugequad
