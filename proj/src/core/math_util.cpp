#include "math_util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oic {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Series for exp_moment_j; converges fast for |x| <= 0.25.
double moment_series(double x, int j) {
  double term = 1.0 / (j + 1);  // k = 0
  double sum = term;
  double xpow = 1.0;
  double fact = 1.0;
  for (int k = 1; k <= 18; ++k) {
    xpow *= x;
    fact *= k;
    term = xpow / (fact * (k + j + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double zeta(double x) {
  if (std::abs(x) < 1e-12) return 1.0 + 0.5 * x;
  return std::expm1(x) / x;
}

double log_zeta(double x) {
  if (x > 34.0) return x - std::log(x) + std::log1p(-std::exp(-x));
  if (x < -34.0) return -std::log(-x) + std::log1p(-std::exp(x));
  return std::log(zeta(x));
}

double exp_moment0(double x) { return zeta(x); }

double exp_moment1(double x) {
  if (std::abs(x) < 0.25) return moment_series(x, 1);
  return (std::exp(x) * (x - 1.0) + 1.0) / (x * x);
}

double exp_moment2(double x) {
  if (std::abs(x) < 0.25) return moment_series(x, 2);
  return (std::exp(x) * (x * x - 2.0 * x + 2.0) - 2.0) / (x * x * x);
}

double gauss_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double gauss_Q(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double erfcx_scaled(double x) {
  if (x < 20.0) return std::exp(x * x) * std::erfc(x);
  // Asymptotic expansion, relative error < 1e-12 for x >= 20.
  const double ix2 = 1.0 / (2.0 * x * x);
  double s = 1.0, term = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= -(2 * k - 1) * ix2;
    s += term;
  }
  return s / (x * 1.7724538509055159);  // sqrt(pi)
}

double log_gauss_Q(double x) {
  if (x < 0.0) return std::log1p(-gauss_Q(-x));
  return std::log(0.5 * erfcx_scaled(x / kSqrt2)) - 0.5 * x * x;
}

double log_Q_diff(double a, double b) {
  if (a >= b) return -std::numeric_limits<double>::infinity();
  if (a >= 0.0) {
    const double la = log_gauss_Q(a), lb = log_gauss_Q(b);
    return la + std::log1p(-std::exp(lb - la));
  }
  if (b <= 0.0) return log_Q_diff(-b, -a);
  // Straddles zero: both tails are moderate, evaluate directly.
  return std::log(1.0 - gauss_Q(-a) - gauss_Q(b));
}

double logsumexp(const std::vector<double>& v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

double canonical_open(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

}  // namespace oic
