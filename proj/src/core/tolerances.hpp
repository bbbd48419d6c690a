#pragma once

namespace oic {

// Central numeric tolerances. Modules compare against these instead of
// scattering ad-hoc epsilons.
struct Tolerances {
  double equality = 1e-9;  // constraint equality / feasibility slack
  double root = 1e-12;     // bisection and scalar root finding
  double merge = 1e-12;    // antenna ratios considered identical
  double mass = 1e-12;     // probability-mass bookkeeping
  double quad = 1e-8;      // quadrature refinement target
};

inline constexpr Tolerances tol{};

}  // namespace oic
