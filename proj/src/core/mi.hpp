#pragma once

#include "distribution.hpp"

namespace oic {

struct MIResult {
  double value = 0.0;            // nats
  double estimated_error = 0.0;  // quadrature refinement residual
};

// f_Y(y) for Y = S + Z, Z ~ N(0, sigma^2): exact Gaussian mixture for
// discrete S, exact Gaussian-exponential convolution per segment otherwise.
double output_density(const BoundedDist& S, double sigma, double y);

// I(S; S+Z) = h(Y) - 1/2 log(2 pi e sigma^2), h(Y) by grid-doubling Simpson
// quadrature over a range holding all but < 1e-10 of the output mass.
MIResult mutual_info(const BoundedDist& S, double sigma);

}  // namespace oic
