#include "keyrate.h"

#include "errors.h"
#include "numerics.h"

#include <algorithm>
#include <cmath>

namespace pdecoy {

void ProtocolParams::validate() const {
  if (!(q_eff > 0.0 && q_eff <= 1.0))
    throw validation_error("q_eff must be in (0,1]");
  if (!(f_ec >= 1.0)) throw validation_error("f_ec must be at least 1");
}

double branch_rate(double gain, double qber, double p0, double p1, double y0,
                   double y1, double e1, const ProtocolParams &pp) {
  if (gain == 0.0) return 0.0;
  return pp.q_eff * (-gain * pp.f_ec * h2(qber) +
                     p1 * y1 * (1.0 - h2(e1)) + p0 * y0);
}

RateBreakdown passive_rate(const Interference &intf, const ChannelParams &ch,
                           double eta, const ProtocolParams &pp) {
  const LowOrder lo = low_order_closed(intf);
  RateBreakdown rb;
  rb.observed = observed_passive(intf, ch, eta);
  rb.bounds = decoy_bounds(lo, rb.observed, ch.e0);

  const double p0c = lo.p_total[0] - lo.p_noclick[0];
  const double p1c = lo.p_total[1] - lo.p_noclick[1];
  rb.rate_click =
      branch_rate(rb.observed.q_click, rb.observed.e_click, p0c, p1c, ch.y0,
                  rb.bounds.y1_lower, rb.bounds.e1_upper, pp);
  rb.rate_noclick =
      branch_rate(rb.observed.q_noclick, rb.observed.e_noclick,
                  lo.p_noclick[0], lo.p_noclick[1], ch.y0,
                  rb.bounds.y1_lower, rb.bounds.e1_upper, pp);
  rb.rate_total =
      std::max(rb.rate_click, 0.0) + std::max(rb.rate_noclick, 0.0);
  return rb;
}

double active_rate(const ChannelParams &ch, const ProtocolParams &pp,
                   double mu, double eta) {
  const ActiveObserved ob = observed_active(ch, mu, eta);
  const double p1 = mu * std::exp(-mu);
  const double p0 = std::exp(-mu);
  const double r = pp.q_eff * (-ob.gain * pp.f_ec * h2(ob.qber) +
                               p1 * ob.y1 * (1.0 - h2(ob.e1)) + p0 * ch.y0);
  return std::max(r, 0.0);
}

} // namespace pdecoy
