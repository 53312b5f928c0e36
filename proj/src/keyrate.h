#pragma once

#include "channel.h"
#include "decoy_bounds.h"

namespace pdecoy {

struct ProtocolParams {
  double q_eff = 1.0; // sifting / duty-cycle factor
  double f_ec = 1.22; // error-correction inefficiency
  void validate() const;
};

// GLLP-style lower bound for one conditional branch:
//   q ( -Q f H2(E) + p1 y1 (1 - H2(e1)) + p0 y0 ).
// A branch with zero gain contributes a rate of 0 by definition.
double branch_rate(double gain, double qber, double p0, double p1, double y0,
                   double y1, double e1, const ProtocolParams &pp);

struct RateBreakdown {
  double rate_total = 0.0;   // max(rate_click, 0) + max(rate_noclick, 0)
  double rate_click = 0.0;   // unclamped
  double rate_noclick = 0.0; // unclamped
  DecoyBounds bounds;
  Observed observed;
};

// Full passive evaluation at one channel transmittance: observed branch
// statistics, estimated bounds, and both branch rates. The vacuum term of
// each branch is credited at the channel's background yield.
RateBreakdown passive_rate(const Interference &intf, const ChannelParams &ch,
                           double eta, const ProtocolParams &pp);

// Benchmark: actively modulated Poissonian source of intensity mu with
// perfectly known single-photon yield and error rate, vacuum term included.
// Returns max(rate, 0).
double active_rate(const ChannelParams &ch, const ProtocolParams &pp,
                   double mu, double eta);

} // namespace pdecoy
