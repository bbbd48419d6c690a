#pragma once

#include <random>
#include <variant>
#include <vector>

#include "channel.hpp"

namespace oic {

// Finite law on [0,1]: strictly increasing support, positive masses summing
// to one.
class DiscreteDist {
 public:
  DiscreteDist(std::vector<double> support, std::vector<double> masses);

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& masses() const { return masses_; }

  double cdf(double x) const;
  double quantile(double p) const;
  double slt(double t) const;
  double mean() const;
  double variance() const;

 private:
  std::vector<double> support_, masses_, cum_;
};

// Density exp(nu0 - lambda_0 s - sum_{i>=1} lambda_i (s - b_i)_+) on [0,1],
// where 0 = b_0 < b_1 < ... < b_m = 1. Log-linear on each segment, so every
// integral (normalization, CDF, moments, stop-loss) has a closed form built
// from exponential antiderivatives with a series fallback near zero rate.
class PiecewiseExpDist {
 public:
  // Normalizes automatically (nu0 chosen so the density integrates to one).
  PiecewiseExpDist(std::vector<double> interior_breaks, std::vector<double> lambdas);
  // Validates a caller-supplied nu0: rejected if it is off by more than 1e-3
  // in log-mass, renormalized exactly otherwise.
  PiecewiseExpDist(std::vector<double> interior_breaks, std::vector<double> lambdas, double nu0);

  double nu0() const { return nu0_; }
  const std::vector<double>& lambdas() const { return lambdas_; }
  const std::vector<double>& breakpoints() const { return breaks_; }

  double density(double s) const;
  double log_density(double s) const;
  double cdf(double x) const;
  double quantile(double p) const;
  double slt(double t) const;
  double mean() const;
  double variance() const;

 private:
  void build();

  std::vector<double> breaks_;   // size m+1 including 0 and 1
  std::vector<double> lambdas_;  // size m
  double nu0_ = 0.0;
  // per segment caches
  std::vector<double> rate_;     // sum of lambdas active on the segment
  std::vector<double> logamp_;   // log density at the segment's left endpoint
  std::vector<double> cum_;      // cumulative mass up to each breakpoint
};

// Value-semantic wrapper dispatching to the concrete forms. Everything is
// immutable; sample() takes an explicit engine.
class BoundedDist {
 public:
  BoundedDist(DiscreteDist d) : v_(std::move(d)) {}
  BoundedDist(PiecewiseExpDist d) : v_(std::move(d)) {}

  bool is_discrete() const { return std::holds_alternative<DiscreteDist>(v_); }
  const DiscreteDist& discrete() const { return std::get<DiscreteDist>(v_); }
  const PiecewiseExpDist& pwexp() const { return std::get<PiecewiseExpDist>(v_); }

  double cdf(double x) const;
  double quantile(double p) const;
  double slt(double t) const;
  double mean() const;
  double variance() const;
  double sample(std::mt19937_64& rng) const;

  // Law of 1 - S; stays inside the family.
  BoundedDist reflected() const;

 private:
  std::variant<DiscreteDist, PiecewiseExpDist> v_;
};

BoundedDist point_mass(double c);

// The convex-order maximum among laws feasible to the equal-cost channel:
// atoms at the cumulative gain sums, masses from consecutive ratio
// differences.
DiscreteDist maximally_convex(const ChannelSpec& spec);

}  // namespace oic
