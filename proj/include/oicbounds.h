/* oicbounds: capacity bounds, feasibility certificates, max-entropy input
 * laws and greedy-decomposition signaling for MISO optical intensity
 * channels under per-antenna peak- and average-intensity constraints.
 *
 * Plain C interface over the C++ core. All handles are opaque, owned by the
 * caller and released with the matching *_free call. Functions return
 * OIC_OK on success; on failure oic_last_error() carries a message for the
 * calling thread. Every operation on an existing handle is pure and safe to
 * call concurrently from several threads.
 */
#ifndef OICBOUNDS_H
#define OICBOUNDS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum oic_status {
  OIC_OK = 0,
  OIC_ERR_INVALID = 1,    /* malformed input / validation failure */
  OIC_ERR_INFEASIBLE = 2, /* distribution violates the channel constraints */
  OIC_ERR_DOMAIN = 3,     /* argument outside an operation's domain */
  OIC_ERR_NOCONV = 4,     /* iterative solver exhausted its budget */
  OIC_ERR_BUFFER = 5      /* output buffer too small */
} oic_status;

typedef enum oic_kind {
  OIC_EC = 0, /* per-antenna average intensities equal to alpha_k */
  OIC_BC = 1  /* per-antenna average intensities at most alpha_k */
} oic_kind;

typedef struct oic_channel oic_channel;
typedef struct oic_dist oic_dist;
typedef struct oic_plan oic_plan;

const char* oic_version(void);
const char* oic_status_name(oic_status status);
/* Message describing the calling thread's most recent failure. */
const char* oic_last_error(void);

/* ---- channels ---------------------------------------------------------- */

/* Normalized channel: h positive summing to one, alpha in (0,1), sigma > 0. */
oic_status oic_channel_create(const double* h, const double* alpha, size_t n, double sigma,
                              oic_channel** out);
/* Raw physical parameters; normalization is applied. */
oic_status oic_channel_create_raw(const double* gains, const double* peaks, const double* alpha,
                                  size_t n, double sigma_raw, oic_channel** out);
/* JSON object, either {"h","alpha","sigma"} or {"h_raw","peaks","alpha","sigma_raw"}. */
oic_status oic_channel_parse_json(const char* text, oic_channel** out);
void oic_channel_free(oic_channel* ch);

/* Sorts by ratio, merges identical ratios, applies the kind-specific
 * symmetry reduction. The result remembers how to map signals back to the
 * original antennas. */
oic_status oic_channel_canonicalize(const oic_channel* ch, oic_kind kind, oic_channel** out);

size_t oic_channel_n(const oic_channel* ch);
oic_status oic_channel_get(const oic_channel* ch, double* h, double* alpha, double* sigma);
/* h' alpha, the equivalent-input mean budget. */
double oic_channel_mean_budget(const oic_channel* ch);

size_t oic_channel_original_n(const oic_channel* ch);
int oic_channel_flipped(const oic_channel* ch);
int oic_channel_has_peaks(const oic_channel* ch);
oic_status oic_channel_peaks(const oic_channel* ch, double* peaks /* original_n */);
/* Expands canonical per-antenna signals to the original antennas (spatial
 * repetition inside merged groups, un-flipping when the EC flip was taken). */
oic_status oic_channel_expand(const oic_channel* ch, const double* x_canonical,
                              double* x_original);

/* ---- distributions on [0,1] ------------------------------------------- */

oic_status oic_dist_create_discrete(const double* support, const double* masses, size_t m,
                                    oic_dist** out);
/* Piecewise-exponential density with breakpoints at the channel's cumulative
 * gains. Pass nu0 = NAN to normalize automatically. */
oic_status oic_dist_create_pwexp(const oic_channel* canonical, double nu0, const double* lambdas,
                                 size_t n_lambda, oic_dist** out);
/* {"type":"discrete"|"pwexp"|"maxent", ...}; maxent solves on the fly.
 * Discrete laws are given in the original channel's coordinates and are
 * reflected automatically when canonicalization flipped the input; pwexp
 * coefficients live on the canonical breakpoints. */
oic_status oic_dist_parse_json(const char* text, const oic_channel* canonical, oic_kind kind,
                               oic_dist** out);
void oic_dist_free(oic_dist* d);

double oic_dist_mean(const oic_dist* d);
double oic_dist_variance(const oic_dist* d);
oic_status oic_dist_cdf(const oic_dist* d, double x, double* out);
oic_status oic_dist_quantile(const oic_dist* d, double p, double* out);
/* Stop-loss transform E[(S - t)_+]. */
oic_status oic_dist_slt(const oic_dist* d, double t, double* out);
/* Deterministic inverse-CDF sampling: a seed fixes the whole stream. */
oic_status oic_dist_sample(const oic_dist* d, unsigned long long seed, size_t count, double* out);
/* Law of 1 - S. */
oic_status oic_dist_reflected(const oic_dist* d, oic_dist** out);

/* The convex-order maximum among feasible equivalent inputs. */
oic_status oic_dist_maximally_convex(const oic_channel* canonical, oic_dist** out);

/* Maximum-entropy law: density plus the dual data (gamma is the maximum
 * differential entropy). lambdas may be NULL, else it receives n values. */
oic_status oic_maxent_solve(const oic_channel* canonical, oic_kind kind, oic_dist** density,
                            double* nu0, double* gamma, double* lambdas);

/* ---- feasibility -------------------------------------------------------- */

/* feasible is 1/0; mean_residual = E[S] - h'alpha; slack (length n-1, may be
 * NULL) holds (1-H_[k]) abar_k - pi_S(H_[k]). */
oic_status oic_check_feasible(const oic_dist* d, const oic_channel* canonical, oic_kind kind,
                              int* feasible, double* mean_residual, double* slack);
/* Bounded-cost intensity split a = min{beta 1, alpha} with h'a = E[S]. */
oic_status oic_bc_allocation(const oic_dist* d, const oic_channel* canonical, double* beta,
                             double* a /* n */);

/* ---- greedy decomposition ---------------------------------------------- */

/* EC plans partition for (h, alpha); BC allocates a = min{beta 1, alpha}
 * first. Requires feasibility of d for the kind. */
oic_status oic_plan_solve(const oic_dist* d, const oic_channel* canonical, oic_kind kind,
                          oic_plan** out);
void oic_plan_free(oic_plan* plan);
/* Per-antenna signals (canonical antennas) for the realization s.
 * use_iterative selects the residual recursion instead of the partition. */
oic_status oic_plan_decompose(const oic_plan* plan, double s, double* x, int use_iterative);
oic_status oic_plan_kappas(const oic_plan* plan, double* kappa /* n */);
/* Serialized {"kappa": [...], "sets": [[[a,b],...],...]}; *needed receives
 * the byte count including the terminator. */
oic_status oic_plan_to_json(const oic_plan* plan, char* buf, size_t cap, size_t* needed);

/* ---- capacity bounds ----------------------------------------------------- */

typedef struct oic_bounds_report {
  double sigma;
  double lower_epi;
  double upper_maxvar;
  double upper_duality;
  double best_lower;
  double best_upper;
  double gap;
} oic_bounds_report;

oic_status oic_bounds_at(const oic_channel* canonical, oic_kind kind, double sigma,
                         oic_bounds_report* out);
/* Log-spaced grid, evaluated concurrently, reported in sigma order. */
oic_status oic_bounds_sweep(const oic_channel* canonical, oic_kind kind, double sigma_min,
                            double sigma_max, size_t points, oic_bounds_report* out);
oic_status oic_low_snr_slope(const oic_channel* canonical, oic_kind kind, double* out);
oic_status oic_high_snr_offset(const oic_channel* canonical, oic_kind kind, double* out);

/* ---- mutual information -------------------------------------------------- */

oic_status oic_output_density(const oic_dist* d, double sigma, double y, double* out);
oic_status oic_mutual_info(const oic_dist* d, double sigma, double* value, double* error);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OICBOUNDS_H */
