#pragma once

#include "keyrate.h"

namespace pdecoy {

// Log-spaced search box for the two source intensities. The mu1 floor stays
// strictly positive: at mu1 = 0 the two branches become proportional and
// the estimation certificate fails.
struct OptimizerDomain {
  double mu1_min = 1e-6, mu1_max = 1.0;
  double mu2_min = 1e-3, mu2_max = 2.0;
  void validate() const;
};

struct Optimum {
  double mu1 = 0.0, mu2 = 0.0; // reported with mu1 <= mu2
  double rate = 0.0;           // all-zero result means no positive rate
};

// Deterministic two-stage search at fixed t: a 17x17 inclusive log grid
// seeds a Nelder-Mead refinement in log10 coordinates, restarted from the
// seed's swap image to cover both symmetric basins.
Optimum optimize_intensities(const ChannelParams &ch, const ProtocolParams &pp,
                             double t, double eta,
                             const OptimizerDomain &dom);

// 1D benchmark search over [mu2_min, mu2_max]; result has mu1 = 0 and the
// optimal intensity in mu2.
Optimum optimize_active_intensity(const ChannelParams &ch,
                                  const ProtocolParams &pp, double eta,
                                  const OptimizerDomain &dom);

// Largest distance with positive optimized rate, to 0.01 km, by doubling
// bracket plus bisection. Throws no_positive_rate_error when the rate is
// already zero at l = 0.
double cutoff_distance(const ChannelParams &ch, const ProtocolParams &pp,
                       double t, const OptimizerDomain &dom, bool active_mode);

} // namespace pdecoy
