#pragma once

#include <cstdint>
#include <vector>

namespace oic {

// zeta(x) = (e^x - 1)/x with zeta(0) = 1; smooth and strictly convex.
double zeta(double x);
double log_zeta(double x);

// exp_moment_j(x) = integral of t^j * e^{x t} over t in [0,1].
// exp_moment0 == zeta. Stable for all x, series near zero.
double exp_moment0(double x);
double exp_moment1(double x);
double exp_moment2(double x);

// Standard normal helpers.
double gauss_pdf(double x);
double gauss_Q(double x);      // upper tail P{N(0,1) > x}
double log_gauss_Q(double x);  // accurate far into the tail
double erfcx_scaled(double x); // e^{x^2} erfc(x), x >= 0
double log_Q_diff(double a, double b);  // log(Q(a) - Q(b)) for a < b

double logsumexp(const std::vector<double>& v);

// Maps 64 random bits to a double in (0,1]; used for inverse-CDF sampling so
// sampling is reproducible across standard libraries.
double canonical_open(std::uint64_t bits);

}  // namespace oic
