/* Passive decoy-state QKD simulator: public C interface.
 *
 * Two phase-randomized weak coherent pulses interfere at a beam splitter;
 * a threshold detector on one output arm passively tags each pulse as
 * "click" or "no click", splitting the other arm's photon-number statistics
 * into two correlated non-Poissonian distributions. The library computes
 * those statistics, the observed gains/QBERs under a lossy-fiber channel
 * model, single-photon yield/error bounds estimated from the two branches,
 * GLLP-style secret key rates, and intensity optimization / cutoff search.
 *
 * All functions that can fail return a pdecoy_status; pdecoy_last_error()
 * gives a human-readable detail string for the calling thread's most recent
 * failure. Handles are opaque; results are plain structs of doubles.
 */

#ifndef PDECOY_H
#define PDECOY_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PDECOY_API __declspec(dllexport)
#else
#define PDECOY_API __attribute__((visibility("default")))
#endif

typedef struct pdecoy_config pdecoy_config;

typedef enum pdecoy_status {
  PDECOY_OK = 0,
  PDECOY_ERR_ARGUMENT = 1,         /* bad key, unparsable value, null pointer */
  PDECOY_ERR_VALIDATION = 2,       /* config violates an invariant */
  PDECOY_ERR_DOMAIN = 3,           /* argument outside a math domain */
  PDECOY_ERR_CERTIFICATE = 4,      /* estimation degenerate (proportional stats) */
  PDECOY_ERR_DEGENERATE = 5,       /* undefined branch (F=1, zero gain, ...) */
  PDECOY_ERR_NO_POSITIVE_RATE = 6, /* cutoff search: rate already 0 at l=0 */
  PDECOY_ERR_INTERNAL = 7
} pdecoy_status;

/* Interference parameters of the two-pulse source. */
typedef struct pdecoy_interference {
  double upsilon; /* total intensity mu1 + mu2 */
  double xi;      /* interference amplitude 2*sqrt(mu1*mu2*(1-t)*t) */
  double omega;   /* signal-arm mean mu1*t + mu2*(1-t) */
} pdecoy_interference;

/* One row of the photon-number statistics table (signal arm). */
typedef struct pdecoy_stats_row {
  int n;
  double p_total;     /* unconditional P(n photons) */
  double p_noclick;   /* joint P(n photons, monitor silent) */
  double p_click;     /* joint P(n photons, monitor clicked) */
  double r_click;     /* P(n | click)   = p_click / (1-F), 0 if degenerate */
  double r_noclick;   /* P(n | silence) = p_noclick / F,   0 if degenerate */
  double poisson_ref; /* Poisson pmf at n with mean equal to mean of r_click */
} pdecoy_stats_row;

/* Summary metadata for a stats table. */
typedef struct pdecoy_stats_meta {
  double f_noclick;       /* F = total no-click probability */
  double mean_click;      /* mean of r_click (0 if degenerate) */
  double mean_noclick;    /* mean of r_noclick (0 if degenerate) */
  int click_degenerate;   /* 1 when F=1 or F=0: conditional branches undefined */
  int certificate_valid;  /* estimation certificate flag at this source config */
} pdecoy_stats_meta;

/* Gains and QBERs the protocol observes at one distance. */
typedef struct pdecoy_observed {
  double q_noclick, e_noclick; /* no-click branch gain / QBER */
  double q_total, e_total;     /* both branches combined */
  double q_click, e_click;     /* click branch (exact identities) */
  double f_noclick;            /* F at the source config */
  double eta;                  /* end-to-end transmittance at this distance */
} pdecoy_observed;

/* Estimated bounds on background and single-photon behaviour. */
typedef struct pdecoy_bounds {
  double y0_lower, y0_upper; /* background yield bounds, clamped to [0,1] */
  double y1_lower;           /* single-photon yield lower bound, clamped */
  double e1_upper;           /* single-photon error upper bound, clamped */
  double y0_lower_raw, y0_upper_raw, y1_lower_raw, e1_upper_raw;
  double d0, d1;             /* estimator determinants */
  int e1_vacuous;            /* 1 when y1_lower = 0 forced e1_upper = 1 */
  int certificate_valid;
} pdecoy_bounds;

/* Key-rate evaluation at one distance. */
typedef struct pdecoy_rates {
  double rate_total;   /* max{rate_click,0} + max{rate_noclick,0} */
  double rate_click;   /* unclamped click-branch rate */
  double rate_noclick; /* unclamped no-click-branch rate */
  pdecoy_bounds bounds;
} pdecoy_rates;

/* Result of an intensity search. */
typedef struct pdecoy_optimum {
  double mu1, mu2; /* reported with mu1 <= mu2; both 0 if no positive rate */
  double rate;
} pdecoy_optimum;

/* One row of a distance scan. */
typedef struct pdecoy_scan_entry {
  double distance_km, eta;
  double mu1_opt, mu2_opt;
  double rate_passive, rate_active;
  double q_total, e_total, q_noclick, e_noclick;
  double y1_lower, e1_upper, y0_lower, y0_upper;
} pdecoy_scan_entry;

/* Self-check report for a source configuration. */
typedef struct pdecoy_validation {
  double d0, d1, de;              /* estimator determinants (de equals d0) */
  double coeff02_sign;            /* sign of p[nc]2*p[t]0 - p[t]2*p[nc]0 */
  int certificate_valid;
  double norm_residual_total;     /* |1 - sum p_total(n)|, n <= n_max */
  double norm_residual_branches;  /* |1 - sum (p_click + p_noclick)| */
  double closed_vs_quad_max_rel;  /* low-order closed forms vs quadrature */
  int quad_rule_ok;               /* quad_points >= 4*n_max + 2 */
  int ok;                         /* all of the above within tolerance */
} pdecoy_validation;

/* ---- library ---- */

PDECOY_API const char *pdecoy_version(void);
PDECOY_API const char *pdecoy_status_message(pdecoy_status status);
/* Detail for the calling thread's most recent failure; never NULL. */
PDECOY_API const char *pdecoy_last_error(void);

/* ---- configuration ----
 * Keys (aliases in parens): mu1, mu2, t, alpha_db_per_km (alpha), eta_det,
 * e_d (ed), e_0 (e0), y_0 (y0), q_eff (q), f_ec (f), n_max (nmax),
 * quad_points, mu1_min, mu1_max, mu2_min, mu2_max, output.
 * Defaults are the standard fiber-QKD benchmark set: y_0=1.7e-6, e_d=0.033,
 * alpha=0.21 dB/km, eta_det=0.045, e_0=0.5, q=1, f=1.22, mu1=1e-4, mu2=0.55,
 * t=0.5, n_max=60, quad_points=512, search domain [1e-6,1]x[1e-3,2]. */

PDECOY_API pdecoy_config *pdecoy_config_create(void);
PDECOY_API pdecoy_config *pdecoy_config_clone(const pdecoy_config *cfg);
PDECOY_API void pdecoy_config_destroy(pdecoy_config *cfg);

/* Parse `key = value` lines with '#' comments. On parse/validation failure
 * returns the offending line (1-based) in *error_line when non-NULL. */
PDECOY_API pdecoy_status pdecoy_config_parse(pdecoy_config *cfg,
                                             const char *text,
                                             int *error_line);
PDECOY_API pdecoy_status pdecoy_config_set(pdecoy_config *cfg, const char *key,
                                           const char *value);
PDECOY_API pdecoy_status pdecoy_config_get(const pdecoy_config *cfg,
                                           const char *key, double *out);
/* String-valued keys (only "output"). Truncates to cap-1 characters. */
PDECOY_API pdecoy_status pdecoy_config_get_string(const pdecoy_config *cfg,
                                                  const char *key, char *buf,
                                                  size_t cap);

/* ---- source statistics ---- */

PDECOY_API pdecoy_status pdecoy_interference_params(const pdecoy_config *cfg,
                                                    pdecoy_interference *out);

/* Closed-form low-order probabilities: p_noclick[0..2], p_total[0..2]. */
PDECOY_API pdecoy_status pdecoy_low_order(const pdecoy_config *cfg,
                                          double p_noclick[3],
                                          double p_total[3]);

/* Fill rows[0..n_max]; trailing rows with exactly zero total probability are
 * omitted. rows must hold at least n_max+1 entries (n_max from the config).
 * Degenerate conditionals zero the r_* and poisson_ref columns and set
 * meta->click_degenerate instead of failing. */
PDECOY_API pdecoy_status pdecoy_photon_stats(const pdecoy_config *cfg,
                                             pdecoy_stats_row *rows,
                                             int *rows_written,
                                             pdecoy_stats_meta *meta);

PDECOY_API pdecoy_status pdecoy_validate_report(const pdecoy_config *cfg,
                                                pdecoy_validation *out);

/* ---- channel ---- */

PDECOY_API pdecoy_status pdecoy_transmittance(const pdecoy_config *cfg,
                                              double distance_km, double *out);

PDECOY_API pdecoy_status pdecoy_observed_rates(const pdecoy_config *cfg,
                                               double distance_km,
                                               pdecoy_observed *out);

/* Single Poissonian source of intensity mu through the same channel,
 * plus the exact single-photon yield and error rate of that model. */
PDECOY_API pdecoy_status pdecoy_observed_active(const pdecoy_config *cfg,
                                                double mu, double distance_km,
                                                double *gain, double *qber,
                                                double *y1_true,
                                                double *e1_true);

/* ---- estimation and key rate ---- */

PDECOY_API pdecoy_status pdecoy_decoy_bounds(const pdecoy_config *cfg,
                                             double distance_km,
                                             pdecoy_bounds *out);

PDECOY_API pdecoy_status pdecoy_passive_rate(const pdecoy_config *cfg,
                                             double distance_km,
                                             pdecoy_rates *out);

/* Asymptotic-decoy benchmark rate for a single active source of intensity mu. */
PDECOY_API pdecoy_status pdecoy_active_rate(const pdecoy_config *cfg, double mu,
                                            double distance_km, double *out);

/* ---- optimization ---- */

PDECOY_API pdecoy_status pdecoy_optimize(const pdecoy_config *cfg,
                                         double distance_km,
                                         pdecoy_optimum *out);

/* Active benchmark: optimal mu reported in out->mu2 with out->mu1 = 0. */
PDECOY_API pdecoy_status pdecoy_optimize_active(const pdecoy_config *cfg,
                                                double distance_km,
                                                pdecoy_optimum *out);

/* Largest distance (0.01 km resolution) with positive optimized rate.
 * active_mode: 0 = passive two-intensity scheme, 1 = active benchmark. */
PDECOY_API pdecoy_status pdecoy_cutoff(const pdecoy_config *cfg,
                                       int active_mode, double *out_km);

/* One scan row. mode: 0 = both, 1 = passive only, 2 = active only.
 * Columns not computed for the mode, and passive detail columns when no
 * positive-rate operating point exists, are 0. */
PDECOY_API pdecoy_status pdecoy_scan_entry_at(const pdecoy_config *cfg,
                                              double distance_km, int mode,
                                              pdecoy_scan_entry *out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PDECOY_H */
