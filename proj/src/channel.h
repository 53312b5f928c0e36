#pragma once

#include "photon_stats.h"

namespace pdecoy {

// Lossy fiber with dark counts and misalignment. Defaults are the standard
// telecom benchmark set used throughout the tests.
struct ChannelParams {
  double y0 = 1.7e-6;            // background yield
  double e_d = 0.033;            // misalignment error probability
  double alpha_db_per_km = 0.21; // fiber loss
  double eta_det = 0.045;        // detection efficiency
  double e0 = 0.5;               // error rate of background events
  void validate() const;
};

// End-to-end transmittance eta_det 10^(-alpha l / 10).
double transmittance(const ChannelParams &ch, double distance_km);

// n-photon yield 1 - (1 - y0)(1 - eta)^n, evaluated cancellation-free.
double yield_n(const ChannelParams &ch, double eta, int n);

struct Observed {
  double q_noclick = 0.0, e_noclick = 0.0;
  double q_total = 0.0, e_total = 0.0;
  double q_click = 0.0, e_click = 0.0;
  double f_noclick = 1.0;
  double eta = 0.0;
};

// Gains and QBERs of the two monitor branches. The click branch comes from
// the exact identities Q^c = Q^t - Q^nc and E^c Q^c = E^t Q^t - E^nc Q^nc.
// QBER of a zero-gain branch is reported as 0; a zero total gain (only
// possible with y0 = 0) throws degenerate_error.
Observed observed_passive(const Interference &intf, const ChannelParams &ch,
                          double eta);

struct ActiveObserved {
  double gain = 0.0, qber = 0.0;
  double y1 = 0.0, e1 = 0.0; // exact single-photon yield / error of the model
};

// Single Poissonian source of intensity mu through the same channel.
ActiveObserved observed_active(const ChannelParams &ch, double mu, double eta);

} // namespace pdecoy
