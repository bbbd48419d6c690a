#pragma once

#include <string>
#include <vector>

#include "channel.hpp"
#include "distribution.hpp"
#include "feasibility.hpp"
#include "interval_set.hpp"

namespace oic {

// Clip-and-shift map: identity below v, constant v on (v, v+z], shifted down
// by z above. Generates the comonotonic components of the decomposition.
double phi_map(double s, double v, double z);

// Per-antenna thresholds kappa_k (kappa_1 = 0) together with the disjoint
// interval sets P_k of length h_k assigned to each antenna.
struct PartitionPlan {
  std::vector<double> kappa;      // size n
  std::vector<IntervalSet> sets;  // size n

  std::string to_json() const;
  static PartitionPlan from_json(const std::string& text);
};

// Builds the plan for an equal-cost feasible S: kappa_n down to kappa_2 solve
// the stop-loss difference equations, the sets follow by skipping
// already-assigned measure.
PartitionPlan solve_partition(const BoundedDist& S, const ChannelSpec& spec);

// x_k = measure of P_k at or below s, scaled by 1/h_k.
std::vector<double> decompose_partition(const PartitionPlan& plan, const ChannelSpec& spec,
                                        double s);

// Same output through the iterative residual recursion.
std::vector<double> decompose_iterative(const PartitionPlan& plan, const ChannelSpec& spec,
                                        double s);

// Stop-loss transform of the residual R_level (level = n is S itself),
// evaluated through the two-branch recursion induced by the plan thresholds.
double plan_residual_slt(const BoundedDist& S, const ChannelSpec& spec, const PartitionPlan& plan,
                         std::size_t level, double t);

// Bounded-cost signaling: allocate a+ = min{beta 1, alpha}, merge antennas
// with equal allocation, and plan on the merged channel.
struct BcPlan {
  Allocation alloc;
  bool all_zero = false;
  std::vector<std::vector<std::size_t>> groups;  // merged index -> spec indices
  std::vector<double> merged_h;
  PartitionPlan plan;  // over merged antennas, empty when all_zero
};

BcPlan solve_partition_bc(const BoundedDist& S, const ChannelSpec& spec);

// Signals for every antenna of `spec` (groups expanded by repetition).
std::vector<double> decompose_bc(const BcPlan& bc, const ChannelSpec& spec, double s);

}  // namespace oic
