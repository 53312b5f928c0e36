#include "channel.h"

#include "errors.h"

#include <cmath>

namespace pdecoy {

void ChannelParams::validate() const {
  auto prob = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!prob(y0)) throw validation_error("y_0 must be in [0,1]");
  if (!prob(e_d)) throw validation_error("e_d must be in [0,1]");
  if (!prob(eta_det)) throw validation_error("eta_det must be in [0,1]");
  if (!prob(e0)) throw validation_error("e_0 must be in [0,1]");
  if (!(alpha_db_per_km >= 0.0))
    throw validation_error("alpha_db_per_km must be non-negative");
}

double transmittance(const ChannelParams &ch, double distance_km) {
  if (!(distance_km >= 0.0))
    throw argument_error("distance must be non-negative");
  return ch.eta_det * std::pow(10.0, -ch.alpha_db_per_km * distance_km / 10.0);
}

double yield_n(const ChannelParams &ch, double eta, int n) {
  if (n < 0) throw argument_error("photon number must be non-negative");
  if (n == 0) return ch.y0;
  // 1 - (1-y0)(1-eta)^n = y0 - (1-y0) expm1(n log1p(-eta))
  return ch.y0 - (1.0 - ch.y0) * std::expm1(n * std::log1p(-eta));
}

namespace {

// log I0(x) through the shifted series, accurate for small arguments where
// I0(x) - 1 ~ x^2/4 would be lost to rounding in log(I0(x)).
double log_i0(double x) { return std::log1p(bessel_i0_minus_1(x)); }

} // namespace

Observed observed_passive(const Interference &intf, const ChannelParams &ch,
                          double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw argument_error("transmittance must be in [0,1]");

  Observed ob;
  ob.eta = eta;
  ob.f_noclick = no_click_probability(intf);

  const double y0 = ch.y0;
  const double w = intf.omega, x = intf.xi;

  // Q^t = 1 - (1-y0) exp(-eta w) I0(eta x), rearranged so the eta -> 0
  // limit keeps full precision instead of cancelling against 1.
  ob.q_total = y0 - (1.0 - y0) * std::expm1(-eta * w + log_i0(eta * x));

  // Q^nc / F = 1 - (1-y0) exp(-eta w) I0((1-eta) x) / I0(x).
  const double log_ratio = log_i0((1.0 - eta) * x) - log_i0(x);
  ob.q_noclick =
      ob.f_noclick * (y0 - (1.0 - y0) * std::expm1(-eta * w + log_ratio));

  double q_click = ob.q_total - ob.q_noclick;
  if (q_click < 0.0) q_click = 0.0; // rounding near eta = 0
  ob.q_click = q_click;

  const double et_qt = (ch.e0 - ch.e_d) * y0 + ch.e_d * ob.q_total;
  const double enc_qnc =
      (ch.e0 - ch.e_d) * y0 * ob.f_noclick + ch.e_d * ob.q_noclick;
  const double ec_qc = et_qt - enc_qnc;

  if (ob.q_total <= 0.0)
    throw degenerate_error("zero total gain; error rates undefined");
  ob.e_total = et_qt / ob.q_total;
  ob.e_noclick = ob.q_noclick > 0.0 ? enc_qnc / ob.q_noclick : 0.0;
  ob.e_click = ob.q_click > 0.0 ? ec_qc / ob.q_click : 0.0;
  return ob;
}

ActiveObserved observed_active(const ChannelParams &ch, double mu,
                               double eta) {
  if (!(mu >= 0.0)) throw argument_error("intensity must be non-negative");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw argument_error("transmittance must be in [0,1]");

  ActiveObserved ob;
  ob.gain = ch.y0 - (1.0 - ch.y0) * std::expm1(-eta * mu);
  if (ob.gain <= 0.0)
    throw degenerate_error("zero gain; error rate undefined");
  ob.qber = ((ch.e0 - ch.e_d) * ch.y0 + ch.e_d * ob.gain) / ob.gain;
  ob.y1 = yield_n(ch, eta, 1);
  ob.e1 = ob.y1 > 0.0
              ? (ch.e0 * ch.y0 + ch.e_d * (ob.y1 - ch.y0)) / ob.y1
              : 0.0;
  return ob;
}

} // namespace pdecoy
