#pragma once

#include "channel.h"
#include "photon_stats.h"

namespace pdecoy {

// Bounds on the background yield and the single-photon yield/error rate,
// estimated from the two branch gains and QBERs plus the closed-form
// photon-number probabilities of orders 0..2.
struct DecoyBounds {
  double y0_lower = 0.0, y0_upper = 1.0;
  double y1_lower = 0.0;
  double e1_upper = 1.0;
  double y0_lower_raw = 0.0, y0_upper_raw = 1.0;
  double y1_lower_raw = 0.0, e1_upper_raw = 1.0;
  double d0 = 0.0, d1 = 0.0; // estimator determinants
  bool e1_vacuous = false;   // y1_lower = 0 forced the trivial e1 bound
  bool certificate_valid = false;
};

// True when both determinants are bounded away from zero, i.e. the two
// branch statistics are not proportional and the linear estimators invert.
bool estimation_certificate(const LowOrder &lo, double *d0 = nullptr,
                            double *d1 = nullptr);

// Throws certificate_error when the certificate fails.
DecoyBounds decoy_bounds(const LowOrder &lo, const Observed &ob, double e0);

} // namespace pdecoy
