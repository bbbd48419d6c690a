#pragma once

#include <utility>
#include <vector>

namespace oic {

// Finite union of disjoint half-open intervals [a,b), kept sorted. The
// half-open convention resolves every boundary point exactly once.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<std::pair<double, double>> ivs);

  const std::vector<std::pair<double, double>>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }

  double measure() const;
  // Lebesgue measure of the part at or below s.
  double measure_below(double s) const;

  IntervalSet unite(const IntervalSet& other) const;

  // [a,b) minus this set.
  IntervalSet complement_within(double a, double b) const;

  // Walks upward from `start`, skipping this set, until `target` free measure
  // has been accumulated; returns the stopping point.
  double advance_free(double start, double target) const;

 private:
  std::vector<std::pair<double, double>> iv_;
};

}  // namespace oic
