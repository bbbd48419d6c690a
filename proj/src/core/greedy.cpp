#include "greedy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "tolerances.hpp"

namespace oic {

namespace {

// pi_S extended by zero beyond the support.
double slt_ext(const BoundedDist& S, double t) {
  if (t >= 1.0) return 0.0;
  return S.slt(std::max(t, 0.0));
}

// pi_{R_level}(t) for thresholds kappa[level+1..n] already fixed, via
// pi_{R_{i-1}}(t) = pi_{R_i}(t) - h_i alpha_i   if t <= kappa_i
//                 = pi_{R_i}(t + h_i)           otherwise.
double residual_slt_impl(const BoundedDist& S, const ChannelSpec& spec,
                         const std::vector<double>& kappa, std::size_t level, double t) {
  const std::size_t n = spec.n();
  double cur = t;
  double deduct = 0.0;
  for (std::size_t j = level + 1; j <= n; ++j) {
    if (cur <= kappa[j - 1]) {
      deduct += spec.h()[j - 1] * spec.alpha()[j - 1];
    } else {
      cur += spec.h()[j - 1];
    }
  }
  return slt_ext(S, cur) - deduct;
}

// Smallest root of the continuous nonincreasing G on [0, hi]: coarse scan for
// the first sign change, then bisection.
template <typename F>
double smallest_root(F&& G, double domain_end) {
  if (domain_end <= 0.0) return 0.0;
  double glo = G(0.0);
  if (glo <= 0.0) return 0.0;
  const int cells = 256;
  double lo = 0.0;
  double hi = domain_end;
  bool bracketed = false;
  for (int c = 1; c <= cells; ++c) {
    const double x = domain_end * c / cells;
    if (G(x) <= 0.0) {
      hi = x;
      bracketed = true;
      break;
    }
    lo = x;
  }
  if (!bracketed) {
    if (glo > tol.equality && G(domain_end) > tol.equality)
      throw InfeasibleError("partition: threshold equation has no root (input infeasible?)");
    return domain_end;
  }
  while (hi - lo > tol.root) {
    const double mid = 0.5 * (lo + hi);
    if (G(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double root = 0.5 * (lo + hi);
  // Snap to the domain ends: roots that differ from them by rounding dust
  // otherwise leave sliver intervals in the partition.
  if (root < 1e-9) root = 0.0;
  if (domain_end - root < 1e-9) root = domain_end;
  return root;
}

std::vector<double> solve_kappas(const BoundedDist& S, const ChannelSpec& spec) {
  const std::size_t n = spec.n();
  const auto& h = spec.h();
  const auto& alpha = spec.alpha();
  const auto& H = spec.Hcum();
  std::vector<double> kappa(n, 0.0);
  for (std::size_t i = n; i >= 2; --i) {
    double hi_dom = H[i - 1];
    if (i < n) hi_dom = std::min(hi_dom, kappa[i]);
    auto G = [&](double k) {
      return residual_slt_impl(S, spec, kappa, i, k) -
             residual_slt_impl(S, spec, kappa, i, k + h[i - 1]) - h[i - 1] * alpha[i - 1];
    };
    kappa[i - 1] = smallest_root(G, hi_dom);
  }
  kappa[0] = 0.0;
  return kappa;
}

}  // namespace

double phi_map(double s, double v, double z) {
  if (!(s >= 0.0) || !(s <= 1.0)) throw std::domain_error("phi: s must lie in [0,1]");
  if (!(v >= 0.0) || !(v <= 1.0)) throw std::domain_error("phi: v must lie in [0,1]");
  if (!(z >= 0.0) || !(z <= 1.0 - v + 1e-12)) throw std::domain_error("phi: need 0 <= z <= 1-v");
  if (s <= v) return s;
  if (s <= v + z) return v;
  return s - z;
}

std::string PartitionPlan::to_json() const {
  nlohmann::json j;
  j["kappa"] = kappa;
  nlohmann::json sets_json = nlohmann::json::array();
  for (const auto& set : sets) {
    nlohmann::json s = nlohmann::json::array();
    for (const auto& [a, b] : set.intervals()) s.push_back({a, b});
    sets_json.push_back(std::move(s));
  }
  j["sets"] = std::move(sets_json);
  return j.dump();
}

PartitionPlan PartitionPlan::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  PartitionPlan plan;
  plan.kappa = j.at("kappa").get<std::vector<double>>();
  for (const auto& s : j.at("sets")) {
    std::vector<std::pair<double, double>> ivs;
    for (const auto& ab : s) ivs.emplace_back(ab.at(0).get<double>(), ab.at(1).get<double>());
    plan.sets.emplace_back(std::move(ivs));
  }
  if (plan.sets.size() != plan.kappa.size())
    throw std::invalid_argument("plan: kappa/sets size mismatch");
  return plan;
}

PartitionPlan solve_partition(const BoundedDist& S, const ChannelSpec& spec) {
  if (!check_ec(S, spec).feasible)
    throw InfeasibleError("solve_partition: S is not feasible for the equal-cost channel");
  const std::size_t n = spec.n();
  PartitionPlan plan;
  plan.kappa = solve_kappas(S, spec);
  plan.sets.resize(n);
  IntervalSet blocked;
  for (std::size_t j = n; j >= 1; --j) {
    double eta = blocked.advance_free(plan.kappa[j - 1], spec.h()[j - 1]);
    if (eta > 1.0 + 1e-6) throw std::logic_error("solve_partition: set escapes [0,1)");
    if (std::abs(eta - 1.0) < 1e-12) eta = 1.0;
    plan.sets[j - 1] = blocked.complement_within(plan.kappa[j - 1], eta);
    blocked = blocked.unite(plan.sets[j - 1]);
  }
  return plan;
}

std::vector<double> decompose_partition(const PartitionPlan& plan, const ChannelSpec& spec,
                                        double s) {
  if (!(s >= 0.0) || !(s <= 1.0)) throw std::domain_error("decompose: s must lie in [0,1]");
  const std::size_t n = spec.n();
  std::vector<double> x(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (s <= plan.kappa[k]) continue;
    x[k] = std::clamp(plan.sets[k].measure_below(s) / spec.h()[k], 0.0, 1.0);
  }
  return x;
}

std::vector<double> decompose_iterative(const PartitionPlan& plan, const ChannelSpec& spec,
                                        double s) {
  if (!(s >= 0.0) || !(s <= 1.0)) throw std::domain_error("decompose: s must lie in [0,1]");
  const std::size_t n = spec.n();
  std::vector<double> x(n, 0.0);
  double r = s;
  for (std::size_t k = n; k >= 1; --k) {
    const double next = phi_map(r, plan.kappa[k - 1], spec.h()[k - 1]);
    x[k - 1] = std::clamp((r - next) / spec.h()[k - 1], 0.0, 1.0);
    r = next;
  }
  return x;
}

double plan_residual_slt(const BoundedDist& S, const ChannelSpec& spec, const PartitionPlan& plan,
                         std::size_t level, double t) {
  if (level > spec.n()) throw std::domain_error("plan_residual_slt: level out of range");
  return residual_slt_impl(S, spec, plan.kappa, level, t);
}

BcPlan solve_partition_bc(const BoundedDist& S, const ChannelSpec& spec) {
  BcPlan bc;
  bc.alloc = bc_allocation(S, spec);
  if (bc.alloc.beta <= tol.equality) {
    bc.all_zero = true;
    return bc;
  }
  // Equal allocations arise whenever beta < alpha_k for several k; merge them
  // so the plan sees strictly decreasing ratios.
  const std::size_t n = spec.n();
  std::vector<double> h, a;
  for (std::size_t k = 0; k < n; ++k) {
    if (!a.empty() && std::abs(a.back() - bc.alloc.a[k]) <= tol.merge) {
      h.back() += spec.h()[k];
      bc.groups.back().push_back(k);
    } else {
      h.push_back(spec.h()[k]);
      a.push_back(bc.alloc.a[k]);
      bc.groups.push_back({k});
    }
  }
  bc.merged_h = h;
  ChannelSpec merged(h, a, spec.sigma());
  bc.plan = solve_partition(S, merged);
  return bc;
}

std::vector<double> decompose_bc(const BcPlan& bc, const ChannelSpec& spec, double s) {
  if (!(s >= 0.0) || !(s <= 1.0)) throw std::domain_error("decompose: s must lie in [0,1]");
  std::vector<double> x(spec.n(), 0.0);
  if (bc.all_zero) return x;
  for (std::size_t i = 0; i < bc.groups.size(); ++i) {
    double xi = 0.0;
    if (s > bc.plan.kappa[i])
      xi = std::clamp(bc.plan.sets[i].measure_below(s) / bc.merged_h[i], 0.0, 1.0);
    for (std::size_t k : bc.groups[i]) x[k] = xi;
  }
  return x;
}

}  // namespace oic
