#include "bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "math_util.hpp"
#include "tolerances.hpp"

namespace oic {

namespace {

constexpr double kLog2PiE = 2.837877066409345;  // log(2 pi e)

double var_max_ec(const std::vector<double>& h, const std::vector<double>& a) {
  const std::size_t n = h.size();
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      v += h[i] * h[j] * (std::min(a[i], a[j]) - a[i] * a[j]);
    }
  }
  return v;
}

// beta* = inf{beta in (alpha_n, alpha_1] : H_[k](1-2 beta) - 2(1-H_[k]) abar_k <= 0},
// with k the number of ratios >= beta; the variance is then the equal-cost
// closed form at min{beta* 1, alpha}.
double var_max_bc(const ChannelSpec& spec) {
  const std::size_t n = spec.n();
  const auto& alpha = spec.alpha();
  const auto& H = spec.Hcum();
  const auto& abar = spec.alpha_bar();
  double beta_star = alpha[0];
  for (std::size_t k = n - 1; k >= 1; --k) {  // intervals in increasing beta
    const double lo = alpha[k];
    const double hi = alpha[k - 1];
    auto D = [&](double b) { return H[k] * (1.0 - 2.0 * b) - 2.0 * (1.0 - H[k]) * abar[k]; };
    if (D(lo) <= 0.0) {
      beta_star = lo;
      break;
    }
    if (D(hi) <= 0.0) {
      beta_star = 0.5 * (1.0 - 2.0 * (1.0 - H[k]) * abar[k] / H[k]);
      break;
    }
  }
  const std::size_t kb = static_cast<std::size_t>(
      std::count_if(alpha.begin(), alpha.end(), [&](double a) { return a >= beta_star; }));
  double v = H[kb] * H[kb] * beta_star * (1.0 - beta_star) +
             2.0 * H[kb] * (1.0 - H[kb]) * abar[kb] * (1.0 - beta_star);
  for (std::size_t i = kb; i < n; ++i) {
    for (std::size_t j = kb; j < n; ++j) {
      v += spec.h()[i] * spec.h()[j] * (std::min(alpha[i], alpha[j]) - alpha[i] * alpha[j]);
    }
  }
  return v;
}

// log of P = integral over [0, 1+delta] of exp(-l0 y - sum li (y-H_i)_+).
double log_P(const std::vector<double>& lam, const ChannelSpec& spec, double delta) {
  std::vector<double> b(spec.Hcum());
  b.back() = 1.0 + delta;
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

double softplus_diff(double a) {
  // log(1 + e^a), overflow safe.
  return a > 30.0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));
}

// Deterministic Nelder-Mead over u = (lambda..., log delta); the objective
// projects u onto the admissible sign pattern before evaluating, so every
// evaluation is a valid bound.
double nelder_mead_min(const std::function<double(const std::vector<double>&)>& f,
                       std::vector<double> u0, int budget) {
  const std::size_t d = u0.size();
  std::vector<std::vector<double>> pts(d + 1, u0);
  std::vector<double> val(d + 1);
  for (std::size_t i = 0; i < d; ++i) pts[i + 1][i] += std::max(0.25, 0.25 * std::abs(u0[i]));
  int evals = 0;
  for (std::size_t i = 0; i <= d; ++i) {
    val[i] = f(pts[i]);
    ++evals;
  }
  auto order = [&] {
    std::vector<std::size_t> idx(d + 1);
    for (std::size_t i = 0; i <= d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    std::vector<std::vector<double>> p2(d + 1);
    std::vector<double> v2(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
      p2[i] = pts[idx[i]];
      v2[i] = val[idx[i]];
    }
    pts = std::move(p2);
    val = std::move(v2);
  };
  order();
  while (evals < budget) {
    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) centroid[j] += pts[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(d);
    auto blend = [&](double t) {
      std::vector<double> p(d);
      for (std::size_t j = 0; j < d; ++j) p[j] = centroid[j] + t * (pts[d][j] - centroid[j]);
      return p;
    };
    auto pr = blend(-1.0);
    double fr = f(pr);
    ++evals;
    if (fr < val[0]) {
      auto pe = blend(-2.0);
      double fe = f(pe);
      ++evals;
      if (fe < fr) {
        pts[d] = pe;
        val[d] = fe;
      } else {
        pts[d] = pr;
        val[d] = fr;
      }
    } else if (fr < val[d - 1]) {
      pts[d] = pr;
      val[d] = fr;
    } else {
      auto pc = blend(fr < val[d] ? -0.5 : 0.5);
      double fc = f(pc);
      ++evals;
      if (fc < std::min(fr, val[d])) {
        pts[d] = pc;
        val[d] = fc;
      } else {
        for (std::size_t i = 1; i <= d; ++i) {
          for (std::size_t j = 0; j < d; ++j) pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
          val[i] = f(pts[i]);
          ++evals;
        }
      }
    }
    order();
    if (std::abs(val[d] - val[0]) < 1e-12 * (1.0 + std::abs(val[0]))) break;
  }
  return val[0];
}

}  // namespace

std::vector<double> log_spaced(double lo, double hi, int points) {
  if (points < 2 || !(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log grid: bad range");
  std::vector<double> out(points);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < points; ++i)
    out[i] = std::exp(llo + (lhi - llo) * i / (points - 1));
  return out;
}

double lower_epi(const MaxEntSolution& me, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("lower_epi: sigma must be positive");
  return 0.5 * std::log1p(std::exp(2.0 * me.gamma - kLog2PiE) / (sigma * sigma));
}

double max_variance(const ChannelSpec& spec, Kind kind) {
  if (!spec.is_canonical()) throw std::invalid_argument("max_variance: spec must be canonical");
  if (kind == Kind::EC) return var_max_ec(spec.h(), spec.alpha());
  return var_max_bc(spec);
}

double upper_maxvar(const ChannelSpec& spec, Kind kind, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("upper_maxvar: sigma must be positive");
  return 0.5 * std::log1p(max_variance(spec, kind) / (sigma * sigma));
}

double duality_bound_value(const ChannelSpec& spec, double sigma, Kind kind,
                           const DualityParams& params) {
  const std::size_t n = spec.n();
  if (params.lambdas.size() != n)
    throw std::invalid_argument("duality_bound_value: need n multipliers");
  if (!(params.delta > 0.0)) throw std::domain_error("duality_bound_value: delta must be positive");
  if (params.neg_lambda0_form && kind != Kind::EC)
    throw std::domain_error("duality_bound_value: lambda_0 <= 0 form is EC-only");
  const auto& lam = params.lambdas;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 && params.neg_lambda0_form) {
      if (lam[0] > 0.0) throw std::domain_error("duality_bound_value: lambda_0 must be <= 0");
    } else if (lam[i] < 0.0) {
      throw std::domain_error("duality_bound_value: multipliers must be >= 0");
    }
  }

  const double delta = params.delta;
  const double lp = log_P(lam, spec, delta);
  // log(1 + P/(sqrt(2 pi e) sigma)) via softplus of the log ratio.
  double bound = softplus_diff(lp - std::log(sigma) - 0.5 * kLog2PiE);
  for (std::size_t i = 0; i < n; ++i)
    bound += lam[i] * (1.0 - spec.Hcum()[i]) * spec.alpha_bar()[i];
  const double tail = sigma / std::sqrt(2.0 * M_PI) *
                      -std::expm1(-(1.0 + delta) * (1.0 + delta) / (2.0 * sigma * sigma));
  for (std::size_t i = params.neg_lambda0_form ? 1 : 0; i < n; ++i) bound += lam[i] * tail;
  if (params.neg_lambda0_form) {
    bound += lam[0] * sigma * (gauss_pdf(1.0 / sigma) - gauss_pdf(delta / sigma));
    bound -= lam[0] * (gauss_Q(1.0 / sigma) + gauss_Q(delta / sigma));
  }
  return bound;
}

double upper_duality(const ChannelSpec& spec, double sigma, Kind kind, const MaxEntSolution& me) {
  const std::size_t n = spec.n();
  double best = std::numeric_limits<double>::infinity();

  std::vector<bool> forms = {false};
  if (kind == Kind::EC) forms.push_back(true);

  for (bool neg_form : forms) {
    auto project = [&](std::vector<double> l) {
      for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 && neg_form) {
          l[0] = std::min(l[0], 0.0);
        } else {
          l[i] = std::max(l[i], 0.0);
        }
      }
      return l;
    };
    std::vector<std::vector<double>> seeds = {std::vector<double>(n, 0.0), project(me.lambdas)};

    const double d_lo = std::clamp(std::pow(sigma, 1.5), 1e-9, 10.0);
    const auto deltas = log_spaced(d_lo, std::max(10.0, 100.0 * d_lo), 25);
    std::vector<double> best_u;
    double best_case = std::numeric_limits<double>::infinity();
    for (const auto& s : seeds) {
      for (double d : deltas) {
        DualityParams p{d, s, neg_form};
        const double v = duality_bound_value(spec, sigma, kind, p);
        if (v < best_case) {
          best_case = v;
          best_u = s;
          best_u.push_back(std::log(d));
        }
      }
    }
    auto objective = [&](const std::vector<double>& u) {
      DualityParams p;
      p.neg_lambda0_form = neg_form;
      p.lambdas = project({u.begin(), u.end() - 1});
      p.delta = std::exp(std::clamp(u.back(), -40.0, 10.0));
      return duality_bound_value(spec, sigma, kind, p);
    };
    best_case = std::min(best_case, nelder_mead_min(objective, best_u, 420));
    best = std::min(best, best_case);
  }
  return best;
}

double low_snr_slope(const ChannelSpec& spec, Kind kind) {
  return 0.5 * max_variance(spec, kind);
}

double high_snr_offset(const MaxEntSolution& me) { return me.gamma - 0.5 * kLog2PiE; }

BoundsReport bounds_at(const ChannelSpec& spec, Kind kind, const MaxEntSolution& me,
                       double sigma) {
  BoundsReport r;
  r.sigma = sigma;
  r.lower_epi = lower_epi(me, sigma);
  r.upper_maxvar = upper_maxvar(spec, kind, sigma);
  r.upper_duality = upper_duality(spec, sigma, kind, me);
  r.best_lower = r.lower_epi;
  r.best_upper = std::min(r.upper_maxvar, r.upper_duality);
  r.gap = r.best_upper - r.best_lower;
  return r;
}

std::vector<BoundsReport> sweep_bounds(const ChannelSpec& spec, Kind kind,
                                       const SweepConfig& config) {
  if (!(config.sigma_min < config.sigma_max))
    throw std::invalid_argument("sweep: sigma_min must be below sigma_max");
  const auto sigmas = log_spaced(config.sigma_min, config.sigma_max, config.points);
  const MaxEntSolution me = solve_gamma(spec, kind);
  std::vector<BoundsReport> out(sigmas.size());

  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(sigmas.size())));
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= sigmas.size()) return;
        try {
          out[i] = bounds_at(spec, kind, me, sigmas[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace oic
