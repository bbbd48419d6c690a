#include "maxent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "tolerances.hpp"

namespace oic {

namespace {

std::vector<double> interior_breaks(const ChannelSpec& spec) {
  return {spec.Hcum().begin() + 1, spec.Hcum().end() - 1};
}

// log integral over [0,1] of exp(-lambda_0 s - sum_i lambda_i (s-H_i)_+).
double log_partition(const std::vector<double>& lam, const ChannelSpec& spec) {
  const auto& b = spec.Hcum();
  const std::size_t m = lam.size();
  std::vector<double> seg(m);
  double rate = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    rate += lam[k];
    double L = 0.0;
    for (std::size_t i = 0; i <= k; ++i) L -= lam[i] * (b[k] - b[i]);
    const double w = b[k + 1] - b[k];
    seg[k] = L + std::log(w) + log_zeta(-rate * w);
  }
  return logsumexp(seg);
}

struct DualProblem {
  const ChannelSpec& spec;
  std::vector<double> c;  // c_i = (1 - H_[i]) abar_i

  double value(const std::vector<double>& lam) const {
    double v = log_partition(lam, spec);
    for (std::size_t i = 0; i < lam.size(); ++i) v += lam[i] * c[i];
    return v;
  }

  // grad_i = c_i - E_p[(S - H_[i])_+] for the normalized density p.
  std::vector<double> gradient(const std::vector<double>& lam) const {
    PiecewiseExpDist p(interior_breaks(spec), lam);
    std::vector<double> g(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) g[i] = c[i] - p.slt(spec.Hcum()[i]);
    return g;
  }
};

}  // namespace

double dual_objective(double nu0, const std::vector<double>& lambdas, const ChannelSpec& spec,
                      Kind kind) {
  if (lambdas.size() != spec.n()) throw std::invalid_argument("dual_objective: need n multipliers");
  for (std::size_t i = (kind == Kind::EC ? 1 : 0); i < lambdas.size(); ++i) {
    if (lambdas[i] < 0.0)
      throw std::domain_error("dual_objective: inequality multipliers must be nonnegative");
  }
  const auto& H = spec.Hcum();
  const auto& h = spec.h();
  double lin = -1.0 - nu0;
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    lin += lambdas[i] * (1.0 - H[i]) * spec.alpha_bar()[i];
  double bracket = 0.0;
  double rate = 0.0;
  for (std::size_t k = 1; k <= spec.n(); ++k) {
    rate += lambdas[k - 1];
    double e = -lambdas[0] * H[k - 1];
    for (std::size_t i = 1; i < k; ++i) e += lambdas[i] * (H[i] - H[k - 1]);
    bracket += h[k - 1] * std::exp(e) * zeta(-rate * h[k - 1]);
  }
  return lin + std::exp(nu0) * bracket;
}

MaxEntSolution solve_gamma(const ChannelSpec& spec, Kind kind, const MaxEntOptions& opt) {
  if (!spec.is_canonical()) throw std::invalid_argument("solve_gamma: spec must be canonical");
  const std::size_t n = spec.n();
  DualProblem prob{spec, {}};
  prob.c.resize(n);
  for (std::size_t i = 0; i < n; ++i) prob.c[i] = (1.0 - spec.Hcum()[i]) * spec.alpha_bar()[i];

  const std::size_t first_box = (kind == Kind::EC) ? 1 : 0;
  auto project = [&](std::vector<double> x) {
    for (std::size_t i = first_box; i < n; ++i) x[i] = std::max(x[i], 0.0);
    return x;
  };

  std::vector<double> x(n, 0.0);
  double fx = prob.value(x);
  std::vector<double> g = prob.gradient(x);
  std::vector<double> x_prev, g_prev;
  bool converged = false;

  for (int it = 0; it < opt.max_iter; ++it) {
    double pg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool at_bound = (i >= first_box) && x[i] <= 0.0 && g[i] > 0.0;
      if (!at_bound) pg = std::max(pg, std::abs(g[i]));
    }
    if (pg < opt.grad_tol) {
      converged = true;
      break;
    }

    // Barzilai-Borwein step with Armijo backtracking on the projected arc.
    double step = 1.0;
    if (!x_prev.empty()) {
      double sy = 0.0, ss = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double si = x[i] - x_prev[i];
        const double yi = g[i] - g_prev[i];
        sy += si * yi;
        ss += si * si;
      }
      if (sy > 1e-18) step = std::clamp(ss / sy, 1e-10, 1e8);
    } else {
      double gn = 0.0;
      for (double gi : g) gn = std::max(gn, std::abs(gi));
      step = 1.0 / std::max(1.0, gn);
    }

    std::vector<double> xn;
    double fn = fx;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      xn = x;
      for (std::size_t i = 0; i < n; ++i) xn[i] -= step * g[i];
      xn = project(std::move(xn));
      double decr = 0.0;
      for (std::size_t i = 0; i < n; ++i) decr += g[i] * (x[i] - xn[i]);
      fn = prob.value(xn);
      if (fn <= fx - 1e-4 * decr + 1e-15) {
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;  // no descent at machine precision: treat as converged
    x_prev = std::move(x);
    g_prev = std::move(g);
    x = std::move(xn);
    fx = fn;
    g = prob.gradient(x);
  }

  if (!converged) {
    double pg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool at_bound = (i >= first_box) && x[i] <= 0.0 && g[i] > 0.0;
      if (!at_bound) pg = std::max(pg, std::abs(g[i]));
    }
    if (pg > 1e-6)
      throw ConvergenceError("solve_gamma: projected gradient did not converge");
  }

  MaxEntSolution out{0.0, x, fx, PiecewiseExpDist(interior_breaks(spec), x)};
  out.nu0 = out.density.nu0();
  return out;
}

}  // namespace oic
