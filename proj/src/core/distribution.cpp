#include "distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "math_util.hpp"
#include "tolerances.hpp"

namespace oic {

namespace {

void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0) || !(x <= 1.0)) throw std::domain_error(std::string(what) + " must lie in [0,1]");
}

}  // namespace

DiscreteDist::DiscreteDist(std::vector<double> support, std::vector<double> masses)
    : support_(std::move(support)), masses_(std::move(masses)) {
  if (support_.empty() || support_.size() != masses_.size())
    throw std::invalid_argument("support/masses: must be non-empty and equally sized");
  double sum = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!(support_[i] >= 0.0) || !(support_[i] <= 1.0))
      throw std::invalid_argument("support: points must lie in [0,1]");
    if (i > 0 && !(support_[i] > support_[i - 1]))
      throw std::invalid_argument("support: must be strictly increasing");
    if (!(masses_[i] > 0.0)) throw std::invalid_argument("masses: must be positive");
    sum += masses_[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("masses: must sum to 1");
  cum_.resize(masses_.size());
  double c = 0.0;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    masses_[i] /= sum;
    c += masses_[i];
    cum_[i] = c;
  }
  cum_.back() = 1.0;
}

double DiscreteDist::cdf(double x) const {
  auto it = std::upper_bound(support_.begin(), support_.end(), x);
  if (it == support_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

double DiscreteDist::quantile(double p) const {
  if (!(p > 0.0) || !(p <= 1.0)) throw std::domain_error("quantile: p must lie in (0,1]");
  auto it = std::lower_bound(cum_.begin(), cum_.end(), p);
  if (it == cum_.end()) return support_.back();
  return support_[static_cast<std::size_t>(it - cum_.begin())];
}

double DiscreteDist::slt(double t) const {
  check_unit_interval(t, "slt: t");
  double s = 0.0;
  for (std::size_t i = support_.size(); i-- > 0;) {
    if (support_[i] <= t) break;
    s += masses_[i] * (support_[i] - t);
  }
  return s;
}

double DiscreteDist::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) m += masses_[i] * support_[i];
  return m;
}

double DiscreteDist::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const double d = support_[i] - m;
    v += masses_[i] * d * d;
  }
  return v;
}

PiecewiseExpDist::PiecewiseExpDist(std::vector<double> interior_breaks, std::vector<double> lambdas)
    : lambdas_(std::move(lambdas)) {
  breaks_.reserve(interior_breaks.size() + 2);
  breaks_.push_back(0.0);
  for (double b : interior_breaks) breaks_.push_back(b);
  breaks_.push_back(1.0);
  nu0_ = 0.0;
  build();
}

PiecewiseExpDist::PiecewiseExpDist(std::vector<double> interior_breaks, std::vector<double> lambdas,
                                   double nu0)
    : PiecewiseExpDist(std::move(interior_breaks), std::move(lambdas)) {
  // build() already replaced nu0_ by the exact normalizer; reject inputs that
  // were badly off instead of silently reshaping them.
  if (std::abs(nu0 - nu0_) > 1e-3)
    throw std::invalid_argument("nu0: density is not normalized (off by more than 1e-3 in log mass)");
}

void PiecewiseExpDist::build() {
  const std::size_t m = breaks_.size() - 1;
  if (m == 0) throw std::invalid_argument("breakpoints: need at least one segment");
  if (lambdas_.size() != m)
    throw std::invalid_argument("lambdas: need one coefficient per segment");
  for (std::size_t k = 1; k < breaks_.size(); ++k) {
    if (!(breaks_[k] > breaks_[k - 1]))
      throw std::invalid_argument("breakpoints: must be strictly increasing inside [0,1]");
  }
  if (!(breaks_.front() == 0.0) || !(breaks_.back() == 1.0))
    throw std::invalid_argument("breakpoints: must start at 0 and end at 1");

  rate_.assign(m, 0.0);
  logamp_.assign(m, 0.0);
  double rate = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    rate += lambdas_[k];
    rate_[k] = rate;
    double L = 0.0;
    for (std::size_t i = 0; i <= k; ++i) L -= lambdas_[i] * (breaks_[k] - breaks_[i]);
    logamp_[k] = L;  // nu0 added after normalization
  }

  // Normalize: nu0 = -log integral of exp(-lambda_0 s - ...).
  std::vector<double> seg(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double w = breaks_[k + 1] - breaks_[k];
    seg[k] = logamp_[k] + std::log(w) + log_zeta(-rate_[k] * w);
  }
  nu0_ = -logsumexp(seg);
  cum_.assign(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    logamp_[k] += nu0_;
    cum_[k + 1] = cum_[k] + std::exp(seg[k] + nu0_);
  }
  cum_[m] = 1.0;
}

double PiecewiseExpDist::log_density(double s) const {
  check_unit_interval(s, "density: s");
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
  std::size_t k = (it == breaks_.begin()) ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  if (k >= rate_.size()) k = rate_.size() - 1;
  return logamp_[k] - rate_[k] * (s - breaks_[k]);
}

double PiecewiseExpDist::density(double s) const { return std::exp(log_density(s)); }

double PiecewiseExpDist::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t k = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  if (k >= rate_.size()) k = rate_.size() - 1;
  const double d = x - breaks_[k];
  return cum_[k] + std::exp(logamp_[k]) * d * zeta(-rate_[k] * d);
}

double PiecewiseExpDist::quantile(double p) const {
  if (!(p > 0.0) || !(p <= 1.0)) throw std::domain_error("quantile: p must lie in (0,1]");
  if (p == 1.0) return 1.0;
  auto it = std::upper_bound(cum_.begin(), cum_.end(), p);
  std::size_t k = (it == cum_.begin()) ? 0 : static_cast<std::size_t>(it - cum_.begin()) - 1;
  if (k >= rate_.size()) k = rate_.size() - 1;
  const double q = p - cum_[k];
  const double amp = std::exp(logamp_[k]);
  const double lam = rate_[k];
  const double w = breaks_[k + 1] - breaks_[k];
  double d;
  if (std::abs(lam) * w > 1e-10) {
    d = -std::log1p(-q * lam / amp) / lam;
  } else {
    d = q / amp;
  }
  d = std::clamp(d, 0.0, w);
  return breaks_[k] + d;
}

double PiecewiseExpDist::slt(double t) const {
  check_unit_interval(t, "slt: t");
  const std::size_t m = rate_.size();
  double acc = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double lo = breaks_[k], hi = breaks_[k + 1];
    if (hi <= t) continue;
    const double u = std::max(lo, t);
    const double w = hi - u;
    const double la = logamp_[k] - rate_[k] * (u - lo);
    const double x = -rate_[k] * w;
    acc += std::exp(la) * ((u - t) * w * exp_moment0(x) + w * w * exp_moment1(x));
  }
  return acc;
}

double PiecewiseExpDist::mean() const { return slt(0.0); }

double PiecewiseExpDist::variance() const {
  const std::size_t m = rate_.size();
  double m2 = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double b = breaks_[k];
    const double w = breaks_[k + 1] - b;
    const double x = -rate_[k] * w;
    m2 += std::exp(logamp_[k]) *
          (b * b * w * exp_moment0(x) + 2.0 * b * w * w * exp_moment1(x) + w * w * w * exp_moment2(x));
  }
  const double mu = mean();
  return m2 - mu * mu;
}

double BoundedDist::cdf(double x) const {
  return std::visit([&](const auto& d) { return d.cdf(x); }, v_);
}
double BoundedDist::quantile(double p) const {
  return std::visit([&](const auto& d) { return d.quantile(p); }, v_);
}
double BoundedDist::slt(double t) const {
  return std::visit([&](const auto& d) { return d.slt(t); }, v_);
}
double BoundedDist::mean() const {
  return std::visit([&](const auto& d) { return d.mean(); }, v_);
}
double BoundedDist::variance() const {
  return std::visit([&](const auto& d) { return d.variance(); }, v_);
}

double BoundedDist::sample(std::mt19937_64& rng) const {
  return quantile(canonical_open(rng()));
}

BoundedDist BoundedDist::reflected() const {
  if (is_discrete()) {
    const auto& d = discrete();
    std::vector<double> sup(d.support().rbegin(), d.support().rend());
    std::vector<double> mas(d.masses().rbegin(), d.masses().rend());
    for (double& x : sup) x = 1.0 - x;
    return BoundedDist(DiscreteDist(std::move(sup), std::move(mas)));
  }
  // exp(nu - l0 s - sum li (s-b_i)_+) reflected about 1/2 stays in the
  // family: kinks move to 1 - b_i and the base slope becomes -(l0 + sum li).
  const auto& d = pwexp();
  const auto& b = d.breakpoints();
  const auto& l = d.lambdas();
  const std::size_t m = l.size();
  std::vector<double> ib(m >= 1 ? m - 1 : 0), nl(m);
  double total = 0.0;
  for (double li : l) total += li;
  nl[0] = -total;
  for (std::size_t i = 1; i < m; ++i) {
    ib[i - 1] = 1.0 - b[m - i];  // reflected interior breakpoints, ascending
    nl[i] = l[m - i];
  }
  return BoundedDist(PiecewiseExpDist(std::move(ib), std::move(nl)));
}

BoundedDist point_mass(double c) {
  check_unit_interval(c, "point_mass: c");
  return BoundedDist(DiscreteDist({c}, {1.0}));
}

DiscreteDist maximally_convex(const ChannelSpec& spec) {
  if (!spec.is_canonical()) throw std::invalid_argument("maximally_convex: spec must be canonical");
  const std::size_t n = spec.n();
  const auto& a = spec.alpha();
  std::vector<double> sup, mas;
  auto push = [&](double x, double m) {
    if (m > 1e-15) {
      sup.push_back(x);
      mas.push_back(m);
    }
  };
  push(0.0, 1.0 - a[0]);
  for (std::size_t k = 1; k < n; ++k) push(spec.Hcum()[k], a[k - 1] - a[k]);
  push(1.0, a[n - 1]);
  return DiscreteDist(std::move(sup), std::move(mas));
}

}  // namespace oic
