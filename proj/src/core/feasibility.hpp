#pragma once

#include <cstddef>
#include <vector>

#include "channel.hpp"
#include "distribution.hpp"

namespace oic {

// Certificate for the stop-loss mean conditions. slack[k-1] is
// (1 - H_[k]) abar_k - pi_S(H_[k]) for k = 1..n-1; the mean condition is
// reported through mean_residual = E[S] - h'alpha.
struct FeasibilityReport {
  bool feasible = false;
  double mean_residual = 0.0;
  std::vector<double> slack;
};

// Equal-cost test: mean must match the budget and every prefix stop-loss
// inequality must hold.
FeasibilityReport check_ec(const BoundedDist& S, const ChannelSpec& spec);

// Bounded-cost test: mean at most the budget, same stop-loss inequalities.
FeasibilityReport check_bc(const BoundedDist& S, const ChannelSpec& spec);

// The intensity split min{beta 1, alpha} matching h' a = E[S].
struct Allocation {
  std::vector<double> a;
  double beta = 0.0;
};

// Requires check_bc(S, spec) feasible. beta is exact on the piecewise-linear
// map beta -> h' min{beta 1, alpha}.
Allocation bc_allocation(const BoundedDist& S, const ChannelSpec& spec);

// Stop-loss transform of the maximally convex law: piecewise linear through
// (H_[k], (1 - H_[k]) abar_k).
double max_slt(const ChannelSpec& spec, double t);

// True iff pi_S <= max_slt on a uniform grid of `grid` cells plus all
// breakpoints. Requires E[S] to match the budget.
bool convex_order_dominates(const BoundedDist& S, const ChannelSpec& spec, int grid);

// Diagnostic: slack of pi_S(H_J) <= sum_{k not in J} h_k alpha_k over all
// 2^n index sets J, keyed by bitmask. The prefix test above is equivalent;
// this exists for inspection only.
std::vector<std::pair<unsigned, double>> subset_slacks(const BoundedDist& S,
                                                       const ChannelSpec& spec);

}  // namespace oic
