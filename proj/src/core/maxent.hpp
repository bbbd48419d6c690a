#pragma once

#include <vector>

#include "channel.hpp"
#include "distribution.hpp"
#include "math_util.hpp"

namespace oic {

// Dual optimum of the entropy maximization under the stop-loss mean
// constraints, plus the induced density.
struct MaxEntSolution {
  double nu0 = 0.0;
  std::vector<double> lambdas;  // lambda_0 .. lambda_{n-1}
  double gamma = 0.0;           // optimal dual value = maximum differential entropy
  PiecewiseExpDist density;
};

struct MaxEntOptions {
  int max_iter = 10000;
  double grad_tol = 1e-9;
};

// The dual objective of Theorems 3/4:
//   sum_i lambda_i (1-H_[i]) abar_i - 1 - nu0
//   + e^{nu0} sum_k h_k exp[-lambda_0 H_[k-1] + sum_i lambda_i (H_[i]-H_[k-1])]
//             zeta[-(sum_{i<k} lambda_i) h_k].
// Sign constraints: lambda_i >= 0 for i >= 1 (EC) or i >= 0 (BC).
double dual_objective(double nu0, const std::vector<double>& lambdas, const ChannelSpec& spec,
                      Kind kind);

// Minimizes the dual with nu0 eliminated analytically (it is the
// normalizer), leaving a smooth convex problem in lambda solved by projected
// gradient with backtracking.
MaxEntSolution solve_gamma(const ChannelSpec& spec, Kind kind, const MaxEntOptions& opt = {});

}  // namespace oic
