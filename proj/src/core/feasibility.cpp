#include "feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "tolerances.hpp"

namespace oic {

namespace {

FeasibilityReport stop_loss_report(const BoundedDist& S, const ChannelSpec& spec) {
  FeasibilityReport rep;
  rep.mean_residual = S.mean() - spec.mean_budget();
  const std::size_t n = spec.n();
  rep.slack.resize(n >= 1 ? n - 1 : 0);
  for (std::size_t k = 1; k < n; ++k) {
    const double Hk = spec.Hcum()[k];
    rep.slack[k - 1] = (1.0 - Hk) * spec.alpha_bar()[k] - S.slt(Hk);
  }
  return rep;
}

bool slacks_ok(const FeasibilityReport& rep) {
  for (double s : rep.slack) {
    if (s < -tol.equality) return false;
  }
  return true;
}

}  // namespace

FeasibilityReport check_ec(const BoundedDist& S, const ChannelSpec& spec) {
  if (!spec.is_canonical()) throw std::invalid_argument("check_ec: spec must be canonical");
  FeasibilityReport rep = stop_loss_report(S, spec);
  rep.feasible = std::abs(rep.mean_residual) <= tol.equality && slacks_ok(rep);
  return rep;
}

FeasibilityReport check_bc(const BoundedDist& S, const ChannelSpec& spec) {
  if (!spec.is_canonical()) throw std::invalid_argument("check_bc: spec must be canonical");
  FeasibilityReport rep = stop_loss_report(S, spec);
  rep.feasible = rep.mean_residual <= tol.equality && slacks_ok(rep);
  return rep;
}

Allocation bc_allocation(const BoundedDist& S, const ChannelSpec& spec) {
  if (!check_bc(S, spec).feasible) throw InfeasibleError("bc_allocation: S is not feasible");
  const std::size_t n = spec.n();
  const auto& alpha = spec.alpha();
  const auto& H = spec.Hcum();
  const auto& abar = spec.alpha_bar();
  const double target = S.mean();

  // h' min{beta 1, alpha} = beta H_[k] + (1 - H_[k]) abar_k on the segment
  // alpha_{k+1} <= beta <= alpha_k; walk segments from below.
  double beta = alpha[0];
  for (std::size_t k = n; k >= 1; --k) {
    const double lo = (k == n) ? 0.0 : alpha[k];
    const double hi = alpha[k - 1];
    const double m_hi = hi * H[k] + (1.0 - H[k]) * abar[k];
    if (target <= m_hi + 1e-15 || k == 1) {
      beta = (target - (1.0 - H[k]) * abar[k]) / H[k];
      beta = std::clamp(beta, lo, hi);
      break;
    }
  }
  Allocation out;
  out.beta = beta;
  out.a.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.a[k] = std::min(beta, alpha[k]);
  return out;
}

double max_slt(const ChannelSpec& spec, double t) {
  if (!(t >= 0.0) || !(t <= 1.0)) throw std::domain_error("max_slt: t must lie in [0,1]");
  const auto& H = spec.Hcum();
  const auto& abar = spec.alpha_bar();
  auto it = std::upper_bound(H.begin(), H.end(), t);
  std::size_t k = (it == H.begin()) ? 0 : static_cast<std::size_t>(it - H.begin()) - 1;
  if (k >= spec.n()) k = spec.n() - 1;
  const double y0 = (1.0 - H[k]) * abar[k];
  const double y1 = (1.0 - H[k + 1]) * abar[k + 1];
  const double w = H[k + 1] - H[k];
  return y0 + (t - H[k]) * (y1 - y0) / w;
}

bool convex_order_dominates(const BoundedDist& S, const ChannelSpec& spec, int grid) {
  if (!spec.is_canonical())
    throw std::invalid_argument("convex_order_dominates: spec must be canonical");
  if (grid < 1) throw std::invalid_argument("convex_order_dominates: grid must be positive");
  if (std::abs(S.mean() - spec.mean_budget()) > tol.equality)
    throw std::domain_error("convex_order_dominates: E[S] must match h'alpha");
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(grid) + spec.n() + 2);
  for (int j = 0; j <= grid; ++j) ts.push_back(static_cast<double>(j) / grid);
  for (std::size_t k = 0; k <= spec.n(); ++k) ts.push_back(spec.Hcum()[k]);
  for (double t : ts) {
    if (S.slt(t) > max_slt(spec, t) + tol.equality) return false;
  }
  return true;
}

std::vector<std::pair<unsigned, double>> subset_slacks(const BoundedDist& S,
                                                       const ChannelSpec& spec) {
  const std::size_t n = spec.n();
  if (n > 20) throw std::invalid_argument("subset_slacks: too many antennas for 2^n enumeration");
  std::vector<std::pair<unsigned, double>> out;
  out.reserve(1u << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double HJ = 0.0, rhs = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) {
        HJ += spec.h()[k];
      } else {
        rhs += spec.h()[k] * spec.alpha()[k];
      }
    }
    out.emplace_back(mask, rhs - S.slt(std::min(HJ, 1.0)));
  }
  return out;
}

}  // namespace oic
