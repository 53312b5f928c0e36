#include "pdecoy/pdecoy.h"

#include "channel.h"
#include "decoy_bounds.h"
#include "errors.h"
#include "keyrate.h"
#include "numerics.h"
#include "optimizer.h"
#include "photon_stats.h"
#include "run_config.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

struct pdecoy_config {
  pdecoy::RunConfig cfg;
};

namespace {

thread_local std::string g_last_error;
thread_local int g_last_error_line = 0;

pdecoy_status fail(pdecoy_status st, const char *what, int line = 0) {
  g_last_error = what;
  g_last_error_line = line;
  return st;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn> pdecoy_status guarded(Fn &&fn) {
  using namespace pdecoy;
  try {
    fn();
    g_last_error.clear();
    g_last_error_line = 0;
    return PDECOY_OK;
  } catch (const argument_error &e) {
    return fail(PDECOY_ERR_ARGUMENT, e.what(), e.line);
  } catch (const validation_error &e) {
    return fail(PDECOY_ERR_VALIDATION, e.what(), e.line);
  } catch (const domain_error &e) {
    return fail(PDECOY_ERR_DOMAIN, e.what());
  } catch (const certificate_error &e) {
    return fail(PDECOY_ERR_CERTIFICATE, e.what());
  } catch (const degenerate_error &e) {
    return fail(PDECOY_ERR_DEGENERATE, e.what());
  } catch (const no_positive_rate_error &e) {
    return fail(PDECOY_ERR_NO_POSITIVE_RATE, e.what());
  } catch (const std::exception &e) {
    return fail(PDECOY_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PDECOY_ERR_INTERNAL, "unknown failure");
  }
}

const pdecoy::RunConfig &need(const pdecoy_config *cfg) {
  if (!cfg) throw pdecoy::argument_error("config handle is null");
  cfg->cfg.validate();
  return cfg->cfg;
}

template <typename T> T *need_out(T *p) {
  if (!p) throw pdecoy::argument_error("output pointer is null");
  return p;
}

void fill_bounds(const pdecoy::DecoyBounds &b, pdecoy_bounds *out) {
  out->y0_lower = b.y0_lower;
  out->y0_upper = b.y0_upper;
  out->y1_lower = b.y1_lower;
  out->e1_upper = b.e1_upper;
  out->y0_lower_raw = b.y0_lower_raw;
  out->y0_upper_raw = b.y0_upper_raw;
  out->y1_lower_raw = b.y1_lower_raw;
  out->e1_upper_raw = b.e1_upper_raw;
  out->d0 = b.d0;
  out->d1 = b.d1;
  out->e1_vacuous = b.e1_vacuous ? 1 : 0;
  out->certificate_valid = b.certificate_valid ? 1 : 0;
}

void fill_observed(const pdecoy::Observed &ob, pdecoy_observed *out) {
  out->q_noclick = ob.q_noclick;
  out->e_noclick = ob.e_noclick;
  out->q_total = ob.q_total;
  out->e_total = ob.e_total;
  out->q_click = ob.q_click;
  out->e_click = ob.e_click;
  out->f_noclick = ob.f_noclick;
  out->eta = ob.eta;
}

} // namespace

extern "C" {

const char *pdecoy_version(void) { return "1.0.0"; }

const char *pdecoy_status_message(pdecoy_status status) {
  switch (status) {
    case PDECOY_OK: return "ok";
    case PDECOY_ERR_ARGUMENT: return "invalid argument";
    case PDECOY_ERR_VALIDATION: return "configuration invariant violated";
    case PDECOY_ERR_DOMAIN: return "argument outside mathematical domain";
    case PDECOY_ERR_CERTIFICATE: return "estimation certificate failed";
    case PDECOY_ERR_DEGENERATE: return "degenerate configuration";
    case PDECOY_ERR_NO_POSITIVE_RATE: return "no positive rate";
    case PDECOY_ERR_INTERNAL: return "internal error";
  }
  return "unrecognized status";
}

const char *pdecoy_last_error(void) { return g_last_error.c_str(); }

pdecoy_config *pdecoy_config_create(void) {
  try {
    return new pdecoy_config{};
  } catch (...) {
    return nullptr;
  }
}

pdecoy_config *pdecoy_config_clone(const pdecoy_config *cfg) {
  if (!cfg) return nullptr;
  try {
    return new pdecoy_config{cfg->cfg};
  } catch (...) {
    return nullptr;
  }
}

void pdecoy_config_destroy(pdecoy_config *cfg) { delete cfg; }

pdecoy_status pdecoy_config_parse(pdecoy_config *cfg, const char *text,
                                  int *error_line) {
  if (error_line) *error_line = 0;
  const pdecoy_status st = guarded([&] {
    if (!cfg) throw pdecoy::argument_error("config handle is null");
    if (!text) throw pdecoy::argument_error("config text is null");
    pdecoy::RunConfig tmp = cfg->cfg; // atomic: apply to a copy first
    tmp.apply(text);
    cfg->cfg = tmp;
  });
  if (st != PDECOY_OK && error_line) *error_line = g_last_error_line;
  return st;
}

pdecoy_status pdecoy_config_set(pdecoy_config *cfg, const char *key,
                                const char *value) {
  return guarded([&] {
    if (!cfg) throw pdecoy::argument_error("config handle is null");
    if (!key || !value) throw pdecoy::argument_error("key/value is null");
    cfg->cfg.set(key, value);
  });
}

pdecoy_status pdecoy_config_get(const pdecoy_config *cfg, const char *key,
                                double *out) {
  return guarded([&] {
    if (!cfg) throw pdecoy::argument_error("config handle is null");
    if (!key) throw pdecoy::argument_error("key is null");
    *need_out(out) = cfg->cfg.get(key);
  });
}

pdecoy_status pdecoy_config_get_string(const pdecoy_config *cfg,
                                       const char *key, char *buf,
                                       size_t cap) {
  return guarded([&] {
    if (!cfg) throw pdecoy::argument_error("config handle is null");
    if (!key) throw pdecoy::argument_error("key is null");
    if (!buf || cap == 0)
      throw pdecoy::argument_error("output buffer is empty");
    const std::string v = cfg->cfg.get_string(key);
    const size_t n = std::min(v.size(), cap - 1);
    std::memcpy(buf, v.data(), n);
    buf[n] = '\0';
  });
}

pdecoy_status pdecoy_interference_params(const pdecoy_config *cfg,
                                         pdecoy_interference *out) {
  return guarded([&] {
    const auto &c = need(cfg);
    need_out(out);
    const pdecoy::Interference intf = c.interference();
    out->upsilon = intf.upsilon;
    out->xi = intf.xi;
    out->omega = intf.omega;
  });
}

pdecoy_status pdecoy_low_order(const pdecoy_config *cfg, double p_noclick[3],
                               double p_total[3]) {
  return guarded([&] {
    const auto &c = need(cfg);
    need_out(p_noclick);
    need_out(p_total);
    const pdecoy::LowOrder lo = pdecoy::low_order_closed(c.interference());
    for (int i = 0; i < 3; ++i) {
      p_noclick[i] = lo.p_noclick[i];
      p_total[i] = lo.p_total[i];
    }
  });
}

pdecoy_status pdecoy_photon_stats(const pdecoy_config *cfg,
                                  pdecoy_stats_row *rows, int *rows_written,
                                  pdecoy_stats_meta *meta) {
  return guarded([&] {
    const auto &c = need(cfg);
    need_out(rows);
    need_out(rows_written);

    const pdecoy::Interference intf = c.interference();
    // Tail tolerance is advisory here: the table is reported as-is and the
    // validate path does the strict accounting.
    const pdecoy::BranchStats bs =
        pdecoy::branch_stats(intf, c.n_max, c.quadrature(), 1.0);

    bool degenerate = false;
    pdecoy::Conditionals cond;
    double mean_click = 0.0, mean_noclick = 0.0;
    try {
      cond = pdecoy::conditional_distributions(bs);
      mean_click = cond.click.mean();
      mean_noclick = cond.noclick.mean();
    } catch (const pdecoy::degenerate_error &) {
      degenerate = true;
    }

    int last = 0;
    for (int n = 0; n <= c.n_max; ++n)
      if (bs.total.probs[n] > 0.0) last = n;

    for (int n = 0; n <= last; ++n) {
      pdecoy_stats_row &r = rows[n];
      r.n = n;
      r.p_total = bs.total.probs[n];
      r.p_noclick = bs.noclick.probs[n];
      r.p_click = bs.click.probs[n];
      r.r_click = degenerate ? 0.0 : cond.click.probs[n];
      r.r_noclick = degenerate ? 0.0 : cond.noclick.probs[n];
      r.poisson_ref = degenerate ? 0.0 : pdecoy::poisson_pmf(mean_click, n);
    }
    *rows_written = last + 1;

    if (meta) {
      meta->f_noclick = bs.f_noclick;
      meta->mean_click = mean_click;
      meta->mean_noclick = mean_noclick;
      meta->click_degenerate = degenerate ? 1 : 0;
      meta->certificate_valid =
          pdecoy::estimation_certificate(pdecoy::low_order_closed(intf)) ? 1
                                                                         : 0;
    }
  });
}

pdecoy_status pdecoy_validate_report(const pdecoy_config *cfg,
                                     pdecoy_validation *out) {
  return guarded([&] {
    const auto &c = need(cfg);
    need_out(out);

    const pdecoy::Interference intf = c.interference();
    const pdecoy::LowOrder lo = pdecoy::low_order_closed(intf);
    out->certificate_valid =
        pdecoy::estimation_certificate(lo, &out->d0, &out->d1) ? 1 : 0;
    out->de = lo.p_noclick[0] * lo.p_total[1] -
              lo.p_total[0] * lo.p_noclick[1];
    const double coeff02 =
        lo.p_noclick[2] * lo.p_total[0] - lo.p_total[2] * lo.p_noclick[0];
    out->coeff02_sign = coeff02 > 0.0 ? 1.0 : (coeff02 < 0.0 ? -1.0 : 0.0);

    const pdecoy::BranchStats bs =
        pdecoy::branch_stats(intf, c.n_max, c.quadrature(), 1.0);
    double sum_total = 0.0, sum_branches = 0.0;
    for (int n = 0; n <= c.n_max; ++n) {
      sum_total += bs.total.probs[n];
      sum_branches += bs.noclick.probs[n] + bs.click.probs[n];
    }
    out->norm_residual_total = std::abs(1.0 - sum_total);
    out->norm_residual_branches = std::abs(1.0 - sum_branches);

    double worst = 0.0;
    for (int n = 0; n < 3; ++n) {
      const double pairs[2][2] = {
          {lo.p_noclick[n], bs.noclick.probs[n]},
          {lo.p_total[n], bs.total.probs[n]},
      };
      for (const auto &pr : pairs) {
        const double denom = std::max({std::abs(pr[0]), std::abs(pr[1]),
                                       1e-300});
        worst = std::max(worst, std::abs(pr[0] - pr[1]) / denom);
      }
    }
    out->closed_vs_quad_max_rel = worst;

    out->quad_rule_ok = c.quad_points >= 4 * c.n_max + 2 ? 1 : 0;
    out->ok = out->certificate_valid && out->quad_rule_ok &&
                      out->norm_residual_total <= 1e-10 &&
                      out->norm_residual_branches <= 1e-10 &&
                      out->closed_vs_quad_max_rel <= 1e-10
                  ? 1
                  : 0;
  });
}

pdecoy_status pdecoy_transmittance(const pdecoy_config *cfg,
                                   double distance_km, double *out) {
  return guarded([&] {
    const auto &c = need(cfg);
    *need_out(out) = pdecoy::transmittance(c.channel, distance_km);
  });
}

pdecoy_status pdecoy_observed_rates(const pdecoy_config *cfg,
                                    double distance_km, pdecoy_observed *out) {
  return guarded([&] {
    const auto &c = need(cfg);
    need_out(out);
    const double eta = pdecoy::transmittance(c.channel, distance_km);
    fill_observed(pdecoy::observed_passive(c.interference(), c.channel, eta),
                  out);
  });
}

pdecoy_status pdecoy_observed_active(const pdecoy_config *cfg, double mu,
                                     double distance_km, double *gain,
                                     double *qber, double *y1_true,
                                     double *e1_true) {
  return guarded([&] {
    const auto &c = need(cfg);
    const double eta = pdecoy::transmittance(c.channel, distance_km);
    const pdecoy::ActiveObserved ob =
        pdecoy::observed_active(c.channel, mu, eta);
    if (gain) *gain = ob.gain;
    if (qber) *qber = ob.qber;
    if (y1_true) *y1_true = ob.y1;
    if (e1_true) *e1_true = ob.e1;
  });
}

pdecoy_status pdecoy_decoy_bounds(const pdecoy_config *cfg, double distance_km,
                                  pdecoy_bounds *out) {
  return guarded([&] {
    const auto &c = need(cfg);
    need_out(out);
    const pdecoy::Interference intf = c.interference();
    const double eta = pdecoy::transmittance(c.channel, distance_km);
    const pdecoy::Observed ob =
        pdecoy::observed_passive(intf, c.channel, eta);
    fill_bounds(pdecoy::decoy_bounds(pdecoy::low_order_closed(intf), ob,
                                     c.channel.e0),
                out);
  });
}

pdecoy_status pdecoy_passive_rate(const pdecoy_config *cfg, double distance_km,
                                  pdecoy_rates *out) {
  return guarded([&] {
    const auto &c = need(cfg);
    need_out(out);
    const double eta = pdecoy::transmittance(c.channel, distance_km);
    const pdecoy::RateBreakdown rb =
        pdecoy::passive_rate(c.interference(), c.channel, eta, c.protocol);
    out->rate_total = rb.rate_total;
    out->rate_click = rb.rate_click;
    out->rate_noclick = rb.rate_noclick;
    fill_bounds(rb.bounds, &out->bounds);
  });
}

pdecoy_status pdecoy_active_rate(const pdecoy_config *cfg, double mu,
                                 double distance_km, double *out) {
  return guarded([&] {
    const auto &c = need(cfg);
    const double eta = pdecoy::transmittance(c.channel, distance_km);
    *need_out(out) = pdecoy::active_rate(c.channel, c.protocol, mu, eta);
  });
}

pdecoy_status pdecoy_optimize(const pdecoy_config *cfg, double distance_km,
                              pdecoy_optimum *out) {
  return guarded([&] {
    const auto &c = need(cfg);
    need_out(out);
    const double eta = pdecoy::transmittance(c.channel, distance_km);
    const pdecoy::Optimum opt =
        pdecoy::optimize_intensities(c.channel, c.protocol, c.t, eta,
                                     c.domain);
    out->mu1 = opt.mu1;
    out->mu2 = opt.mu2;
    out->rate = opt.rate;
  });
}

pdecoy_status pdecoy_optimize_active(const pdecoy_config *cfg,
                                     double distance_km,
                                     pdecoy_optimum *out) {
  return guarded([&] {
    const auto &c = need(cfg);
    need_out(out);
    const double eta = pdecoy::transmittance(c.channel, distance_km);
    const pdecoy::Optimum opt =
        pdecoy::optimize_active_intensity(c.channel, c.protocol, eta,
                                          c.domain);
    out->mu1 = opt.mu1;
    out->mu2 = opt.mu2;
    out->rate = opt.rate;
  });
}

pdecoy_status pdecoy_cutoff(const pdecoy_config *cfg, int active_mode,
                            double *out_km) {
  return guarded([&] {
    const auto &c = need(cfg);
    *need_out(out_km) = pdecoy::cutoff_distance(c.channel, c.protocol, c.t,
                                                c.domain, active_mode != 0);
  });
}

pdecoy_status pdecoy_scan_entry_at(const pdecoy_config *cfg,
                                   double distance_km, int mode,
                                   pdecoy_scan_entry *out) {
  return guarded([&] {
    const auto &c = need(cfg);
    need_out(out);
    if (mode < 0 || mode > 2)
      throw pdecoy::argument_error("mode must be 0 (both), 1 (passive) or "
                                   "2 (active)");
    *out = pdecoy_scan_entry{};
    out->distance_km = distance_km;
    const double eta = pdecoy::transmittance(c.channel, distance_km);
    out->eta = eta;

    if (mode != 2) {
      const pdecoy::Optimum opt = pdecoy::optimize_intensities(
          c.channel, c.protocol, c.t, eta, c.domain);
      if (opt.rate > 0.0) {
        out->mu1_opt = opt.mu1;
        out->mu2_opt = opt.mu2;
        out->rate_passive = opt.rate;
        const pdecoy::Interference intf =
            pdecoy::Interference::derive(opt.mu1, opt.mu2, c.t);
        const pdecoy::RateBreakdown rb =
            pdecoy::passive_rate(intf, c.channel, eta, c.protocol);
        out->q_total = rb.observed.q_total;
        out->e_total = rb.observed.e_total;
        out->q_noclick = rb.observed.q_noclick;
        out->e_noclick = rb.observed.e_noclick;
        out->y1_lower = rb.bounds.y1_lower;
        out->e1_upper = rb.bounds.e1_upper;
        out->y0_lower = rb.bounds.y0_lower;
        out->y0_upper = rb.bounds.y0_upper;
      }
    }
    if (mode != 1) {
      out->rate_active =
          pdecoy::optimize_active_intensity(c.channel, c.protocol, eta,
                                            c.domain)
              .rate;
    }
  });
}

} // extern "C"
