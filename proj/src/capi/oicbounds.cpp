#include "oicbounds.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "bounds.hpp"
#include "channel.hpp"
#include "distribution.hpp"
#include "errors.hpp"
#include "feasibility.hpp"
#include "greedy.hpp"
#include "json_io.hpp"
#include "maxent.hpp"
#include "mi.hpp"

namespace {

thread_local std::string g_last_error;

oic_status fail(oic_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename F>
oic_status guarded(F&& body) {
  try {
    return body();
  } catch (const oic::InfeasibleError& e) {
    return fail(OIC_ERR_INFEASIBLE, e.what());
  } catch (const oic::ConvergenceError& e) {
    return fail(OIC_ERR_NOCONV, e.what());
  } catch (const std::domain_error& e) {
    return fail(OIC_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(OIC_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(OIC_ERR_INVALID, e.what());
  }
}

}  // namespace

struct oic_channel {
  oic::ChannelSpec spec;
  std::optional<oic::Reduction> reduction;      // present once canonicalized
  std::optional<std::vector<double>> peaks;     // original-antenna peaks, raw form only
};

struct oic_dist {
  oic::BoundedDist dist;
};

struct oic_plan {
  std::size_t n = 0;
  // EC plans use `ec`; BC plans carry the allocation and merged layout.
  std::optional<oic::PartitionPlan> ec;
  std::optional<oic::BcPlan> bc;
  std::vector<double> h;       // canonical gains (for the iterative route)
  std::vector<double> alpha;   // canonical ratios
  double spec_sigma = 1.0;
  std::vector<double> kappas;  // per canonical antenna
};

extern "C" {

const char* oic_version(void) { return "1.0.0"; }

const char* oic_status_name(oic_status status) {
  switch (status) {
    case OIC_OK: return "ok";
    case OIC_ERR_INVALID: return "invalid input";
    case OIC_ERR_INFEASIBLE: return "infeasible";
    case OIC_ERR_DOMAIN: return "domain error";
    case OIC_ERR_NOCONV: return "no convergence";
    case OIC_ERR_BUFFER: return "buffer too small";
  }
  return "unknown";
}

const char* oic_last_error(void) { return g_last_error.c_str(); }

oic_status oic_channel_create(const double* h, const double* alpha, size_t n, double sigma,
                              oic_channel** out) {
  if (!h || !alpha || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new oic_channel{oic::ChannelSpec({h, h + n}, {alpha, alpha + n}, sigma), {}, {}};
    return OIC_OK;
  });
}

oic_status oic_channel_create_raw(const double* gains, const double* peaks, const double* alpha,
                                  size_t n, double sigma_raw, oic_channel** out) {
  if (!gains || !peaks || !alpha || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    oic::RawChannelSpec raw{{gains, gains + n}, {peaks, peaks + n}, {alpha, alpha + n}, sigma_raw};
    *out = new oic_channel{oic::normalize(raw), {}, raw.peaks};
    return OIC_OK;
  });
}

oic_status oic_channel_parse_json(const char* text, oic_channel** out) {
  if (!text || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    auto loaded = oic::parse_channel_json(text);
    *out = new oic_channel{std::move(loaded.spec), {}, std::move(loaded.peaks)};
    return OIC_OK;
  });
}

void oic_channel_free(oic_channel* ch) { delete ch; }

oic_status oic_channel_canonicalize(const oic_channel* ch, oic_kind kind, oic_channel** out) {
  if (!ch || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    auto canon = oic::canonicalize(ch->spec, kind == OIC_EC ? oic::Kind::EC : oic::Kind::BC);
    *out = new oic_channel{std::move(canon.spec), std::move(canon.reduction), ch->peaks};
    return OIC_OK;
  });
}

size_t oic_channel_n(const oic_channel* ch) { return ch ? ch->spec.n() : 0; }

oic_status oic_channel_get(const oic_channel* ch, double* h, double* alpha, double* sigma) {
  if (!ch) return fail(OIC_ERR_INVALID, "null channel");
  if (h) std::memcpy(h, ch->spec.h().data(), ch->spec.n() * sizeof(double));
  if (alpha) std::memcpy(alpha, ch->spec.alpha().data(), ch->spec.n() * sizeof(double));
  if (sigma) *sigma = ch->spec.sigma();
  return OIC_OK;
}

double oic_channel_mean_budget(const oic_channel* ch) {
  return ch ? ch->spec.mean_budget() : 0.0;
}

size_t oic_channel_original_n(const oic_channel* ch) {
  if (!ch) return 0;
  return ch->reduction ? ch->reduction->original_n : ch->spec.n();
}

int oic_channel_flipped(const oic_channel* ch) {
  return (ch && ch->reduction && ch->reduction->flipped) ? 1 : 0;
}

int oic_channel_has_peaks(const oic_channel* ch) { return (ch && ch->peaks) ? 1 : 0; }

oic_status oic_channel_peaks(const oic_channel* ch, double* peaks) {
  if (!ch || !peaks) return fail(OIC_ERR_INVALID, "null argument");
  if (!ch->peaks) return fail(OIC_ERR_INVALID, "channel has no peak vector (normalized form)");
  std::memcpy(peaks, ch->peaks->data(), ch->peaks->size() * sizeof(double));
  return OIC_OK;
}

oic_status oic_channel_expand(const oic_channel* ch, const double* x_canonical,
                              double* x_original) {
  if (!ch || !x_canonical || !x_original) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    std::vector<double> xc(x_canonical, x_canonical + ch->spec.n());
    std::vector<double> xo;
    if (ch->reduction) {
      xo = ch->reduction->expand(xc);
    } else {
      xo = xc;
    }
    std::memcpy(x_original, xo.data(), xo.size() * sizeof(double));
    return OIC_OK;
  });
}

oic_status oic_dist_create_discrete(const double* support, const double* masses, size_t m,
                                    oic_dist** out) {
  if (!support || !masses || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new oic_dist{oic::BoundedDist(oic::DiscreteDist({support, support + m},
                                                           {masses, masses + m}))};
    return OIC_OK;
  });
}

oic_status oic_dist_create_pwexp(const oic_channel* canonical, double nu0, const double* lambdas,
                                 size_t n_lambda, oic_dist** out) {
  if (!canonical || !lambdas || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    if (n_lambda != canonical->spec.n())
      throw std::invalid_argument("lambdas: need one coefficient per canonical antenna");
    std::vector<double> interior(canonical->spec.Hcum().begin() + 1,
                                 canonical->spec.Hcum().end() - 1);
    std::vector<double> lam(lambdas, lambdas + n_lambda);
    if (std::isnan(nu0)) {
      *out = new oic_dist{oic::BoundedDist(oic::PiecewiseExpDist(interior, lam))};
    } else {
      *out = new oic_dist{oic::BoundedDist(oic::PiecewiseExpDist(interior, lam, nu0))};
    }
    return OIC_OK;
  });
}

oic_status oic_dist_parse_json(const char* text, const oic_channel* canonical, oic_kind kind,
                               oic_dist** out) {
  if (!text || !canonical || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    const bool flipped = canonical->reduction && canonical->reduction->flipped;
    *out = new oic_dist{oic::parse_dist_json(text, canonical->spec,
                                             kind == OIC_EC ? oic::Kind::EC : oic::Kind::BC,
                                             flipped)};
    return OIC_OK;
  });
}

void oic_dist_free(oic_dist* d) { delete d; }

double oic_dist_mean(const oic_dist* d) { return d ? d->dist.mean() : 0.0; }
double oic_dist_variance(const oic_dist* d) { return d ? d->dist.variance() : 0.0; }

oic_status oic_dist_cdf(const oic_dist* d, double x, double* out) {
  if (!d || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = d->dist.cdf(x);
    return OIC_OK;
  });
}

oic_status oic_dist_quantile(const oic_dist* d, double p, double* out) {
  if (!d || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = d->dist.quantile(p);
    return OIC_OK;
  });
}

oic_status oic_dist_slt(const oic_dist* d, double t, double* out) {
  if (!d || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = d->dist.slt(t);
    return OIC_OK;
  });
}

oic_status oic_dist_sample(const oic_dist* d, unsigned long long seed, size_t count, double* out) {
  if (!d || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    std::mt19937_64 rng(seed);
    for (size_t i = 0; i < count; ++i) out[i] = d->dist.sample(rng);
    return OIC_OK;
  });
}

oic_status oic_dist_reflected(const oic_dist* d, oic_dist** out) {
  if (!d || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new oic_dist{d->dist.reflected()};
    return OIC_OK;
  });
}

oic_status oic_dist_maximally_convex(const oic_channel* canonical, oic_dist** out) {
  if (!canonical || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new oic_dist{oic::BoundedDist(oic::maximally_convex(canonical->spec))};
    return OIC_OK;
  });
}

oic_status oic_maxent_solve(const oic_channel* canonical, oic_kind kind, oic_dist** density,
                            double* nu0, double* gamma, double* lambdas) {
  if (!canonical) return fail(OIC_ERR_INVALID, "null channel");
  return guarded([&] {
    auto me = oic::solve_gamma(canonical->spec, kind == OIC_EC ? oic::Kind::EC : oic::Kind::BC);
    if (nu0) *nu0 = me.nu0;
    if (gamma) *gamma = me.gamma;
    if (lambdas) std::memcpy(lambdas, me.lambdas.data(), me.lambdas.size() * sizeof(double));
    if (density) *density = new oic_dist{oic::BoundedDist(std::move(me.density))};
    return OIC_OK;
  });
}

oic_status oic_check_feasible(const oic_dist* d, const oic_channel* canonical, oic_kind kind,
                              int* feasible, double* mean_residual, double* slack) {
  if (!d || !canonical) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    const auto rep = (kind == OIC_EC) ? oic::check_ec(d->dist, canonical->spec)
                                      : oic::check_bc(d->dist, canonical->spec);
    if (feasible) *feasible = rep.feasible ? 1 : 0;
    if (mean_residual) *mean_residual = rep.mean_residual;
    if (slack && !rep.slack.empty())
      std::memcpy(slack, rep.slack.data(), rep.slack.size() * sizeof(double));
    return OIC_OK;
  });
}

oic_status oic_bc_allocation(const oic_dist* d, const oic_channel* canonical, double* beta,
                             double* a) {
  if (!d || !canonical) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    const auto alloc = oic::bc_allocation(d->dist, canonical->spec);
    if (beta) *beta = alloc.beta;
    if (a) std::memcpy(a, alloc.a.data(), alloc.a.size() * sizeof(double));
    return OIC_OK;
  });
}

oic_status oic_plan_solve(const oic_dist* d, const oic_channel* canonical, oic_kind kind,
                          oic_plan** out) {
  if (!d || !canonical || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    auto plan = std::make_unique<oic_plan>();
    plan->n = canonical->spec.n();
    plan->h = canonical->spec.h();
    if (kind == OIC_EC) {
      plan->ec = oic::solve_partition(d->dist, canonical->spec);
      plan->kappas = plan->ec->kappa;
    } else {
      plan->bc = oic::solve_partition_bc(d->dist, canonical->spec);
      plan->kappas.assign(plan->n, 0.0);
      if (!plan->bc->all_zero) {
        for (std::size_t i = 0; i < plan->bc->groups.size(); ++i) {
          for (std::size_t k : plan->bc->groups[i]) plan->kappas[k] = plan->bc->plan.kappa[i];
        }
      }
    }
    plan->spec_sigma = canonical->spec.sigma();
    plan->alpha = canonical->spec.alpha();
    *out = plan.release();
    return OIC_OK;
  });
}

void oic_plan_free(oic_plan* plan) { delete plan; }

oic_status oic_plan_decompose(const oic_plan* plan, double s, double* x, int use_iterative) {
  if (!plan || !x) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    oic::ChannelSpec spec(plan->h, plan->alpha, plan->spec_sigma);
    std::vector<double> xv;
    if (plan->ec) {
      xv = use_iterative ? oic::decompose_iterative(*plan->ec, spec, s)
                         : oic::decompose_partition(*plan->ec, spec, s);
    } else {
      xv = oic::decompose_bc(*plan->bc, spec, s);
    }
    std::memcpy(x, xv.data(), xv.size() * sizeof(double));
    return OIC_OK;
  });
}

oic_status oic_plan_kappas(const oic_plan* plan, double* kappa) {
  if (!plan || !kappa) return fail(OIC_ERR_INVALID, "null argument");
  std::memcpy(kappa, plan->kappas.data(), plan->kappas.size() * sizeof(double));
  return OIC_OK;
}

oic_status oic_plan_to_json(const oic_plan* plan, char* buf, size_t cap, size_t* needed) {
  if (!plan) return fail(OIC_ERR_INVALID, "null plan");
  return guarded([&] {
    const std::string text = plan->ec ? plan->ec->to_json()
                                      : (plan->bc->all_zero ? std::string("{\"kappa\":[],\"sets\":[]}")
                                                            : plan->bc->plan.to_json());
    if (needed) *needed = text.size() + 1;
    if (!buf) return OIC_OK;
    if (cap < text.size() + 1) return fail(OIC_ERR_BUFFER, "plan JSON does not fit");
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return OIC_OK;
  });
}

oic_status oic_bounds_at(const oic_channel* canonical, oic_kind kind, double sigma,
                         oic_bounds_report* out) {
  if (!canonical || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    const oic::Kind k = (kind == OIC_EC) ? oic::Kind::EC : oic::Kind::BC;
    const auto me = oic::solve_gamma(canonical->spec, k);
    const auto r = oic::bounds_at(canonical->spec, k, me, sigma);
    *out = {r.sigma, r.lower_epi, r.upper_maxvar, r.upper_duality, r.best_lower, r.best_upper,
            r.gap};
    return OIC_OK;
  });
}

oic_status oic_bounds_sweep(const oic_channel* canonical, oic_kind kind, double sigma_min,
                            double sigma_max, size_t points, oic_bounds_report* out) {
  if (!canonical || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    const oic::Kind k = (kind == OIC_EC) ? oic::Kind::EC : oic::Kind::BC;
    oic::SweepConfig cfg{sigma_min, sigma_max, static_cast<int>(points)};
    const auto rows = oic::sweep_bounds(canonical->spec, k, cfg);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out[i] = {r.sigma, r.lower_epi, r.upper_maxvar, r.upper_duality, r.best_lower, r.best_upper,
                r.gap};
    }
    return OIC_OK;
  });
}

oic_status oic_low_snr_slope(const oic_channel* canonical, oic_kind kind, double* out) {
  if (!canonical || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = oic::low_snr_slope(canonical->spec, kind == OIC_EC ? oic::Kind::EC : oic::Kind::BC);
    return OIC_OK;
  });
}

oic_status oic_high_snr_offset(const oic_channel* canonical, oic_kind kind, double* out) {
  if (!canonical || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    const oic::Kind k = (kind == OIC_EC) ? oic::Kind::EC : oic::Kind::BC;
    *out = oic::high_snr_offset(oic::solve_gamma(canonical->spec, k));
    return OIC_OK;
  });
}

oic_status oic_output_density(const oic_dist* d, double sigma, double y, double* out) {
  if (!d || !out) return fail(OIC_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = oic::output_density(d->dist, sigma, y);
    return OIC_OK;
  });
}

oic_status oic_mutual_info(const oic_dist* d, double sigma, double* value, double* error) {
  if (!d) return fail(OIC_ERR_INVALID, "null distribution");
  return guarded([&] {
    const auto r = oic::mutual_info(d->dist, sigma);
    if (value) *value = r.value;
    if (error) *error = r.estimated_error;
    return OIC_OK;
  });
}

}  // extern "C"
