#include "interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace oic {

IntervalSet::IntervalSet(std::vector<std::pair<double, double>> ivs) : iv_(std::move(ivs)) {
  std::sort(iv_.begin(), iv_.end());
  std::vector<std::pair<double, double>> out;
  for (const auto& [a, b] : iv_) {
    if (!(b > a)) continue;  // drop empty pieces
    if (!out.empty() && a <= out.back().second) {
      if (a < out.back().second) throw std::invalid_argument("IntervalSet: overlapping intervals");
      out.back().second = b;  // adjacent pieces fuse
    } else {
      out.emplace_back(a, b);
    }
  }
  iv_ = std::move(out);
}

double IntervalSet::measure() const {
  double m = 0.0;
  for (const auto& [a, b] : iv_) m += b - a;
  return m;
}

double IntervalSet::measure_below(double s) const {
  double m = 0.0;
  for (const auto& [a, b] : iv_) {
    if (a >= s) break;
    m += std::min(b, s) - a;
  }
  return m;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<std::pair<double, double>> all = iv_;
  all.insert(all.end(), other.iv_.begin(), other.iv_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::complement_within(double a, double b) const {
  std::vector<std::pair<double, double>> out;
  double pos = a;
  for (const auto& [lo, hi] : iv_) {
    if (hi <= pos) continue;
    if (lo >= b) break;
    if (lo > pos) out.emplace_back(pos, std::min(lo, b));
    pos = std::max(pos, hi);
    if (pos >= b) break;
  }
  if (pos < b) out.emplace_back(pos, b);
  return IntervalSet(std::move(out));
}

double IntervalSet::advance_free(double start, double target) const {
  double pos = start;
  double remaining = target;
  for (const auto& [lo, hi] : iv_) {
    if (hi <= pos) continue;
    const double gap = std::max(0.0, lo - pos);
    if (gap >= remaining) return pos + remaining;
    remaining -= gap;
    pos = std::max(pos, hi);
  }
  return pos + remaining;
}

}  // namespace oic
