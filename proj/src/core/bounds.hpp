#pragma once

#include <vector>

#include "channel.hpp"
#include "maxent.hpp"

namespace oic {

// Per-sigma record of every bound, in nats.
struct BoundsReport {
  double sigma = 0.0;
  double lower_epi = 0.0;
  double upper_maxvar = 0.0;
  double upper_duality = 0.0;
  double best_lower = 0.0;
  double best_upper = 0.0;
  double gap = 0.0;
};

struct SweepConfig {
  double sigma_min = 1e-4;
  double sigma_max = 10.0;
  int points = 40;  // log-spaced
};

// 1/2 log(1 + e^{2 gamma} / (2 pi e sigma^2)).
double lower_epi(const MaxEntSolution& me, double sigma);

// Largest variance of a feasible equivalent input (closed forms).
double max_variance(const ChannelSpec& spec, Kind kind);
double upper_maxvar(const ChannelSpec& spec, Kind kind, double sigma);

// Free parameters of the duality bound. neg_lambda0_form selects the
// equal-cost variant valid for lambda_0 <= 0.
struct DualityParams {
  double delta = 1.0;
  std::vector<double> lambdas;
  bool neg_lambda0_form = false;
};

// Exact evaluation of the duality upper bound; any admissible parameter
// choice yields a valid bound.
double duality_bound_value(const ChannelSpec& spec, double sigma, Kind kind,
                           const DualityParams& params);

// Best bound found over seeded candidates plus a direct-search refinement.
// Validity never depends on optimizer quality.
double upper_duality(const ChannelSpec& spec, double sigma, Kind kind, const MaxEntSolution& me);

// V_max / 2, the low-noise limit of sigma^2 C.
double low_snr_slope(const ChannelSpec& spec, Kind kind);

// The constant c with capacity = log(1/sigma) + c + o(1).
double high_snr_offset(const MaxEntSolution& me);

BoundsReport bounds_at(const ChannelSpec& spec, Kind kind, const MaxEntSolution& me, double sigma);

// Evaluates the grid concurrently; results are ordered by sigma regardless
// of completion order.
std::vector<BoundsReport> sweep_bounds(const ChannelSpec& spec, Kind kind,
                                       const SweepConfig& config);

std::vector<double> log_spaced(double lo, double hi, int points);

}  // namespace oic
