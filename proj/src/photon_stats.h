#pragma once

#include "numerics.h"

#include <array>
#include <vector>

namespace pdecoy {

// Two phase-randomized coherent pulses of intensity mu1, mu2 meet at a
// beam splitter of transmittance t. Conditioned on their (uniform) phase
// difference theta, the signal arm carries a coherent state of intensity
// upsilon * gamma(theta) and the monitored arm upsilon * (1 - gamma(theta)).
struct Interference {
  double mu1 = 0.0, mu2 = 0.0, t = 0.5;
  double upsilon = 0.0; // mu1 + mu2
  double xi = 0.0;      // 2 sqrt(mu1 mu2 (1-t) t)
  double omega = 0.0;   // mu1 t + mu2 (1-t), the signal-arm mean

  static Interference derive(double mu1, double mu2, double t);

  // (omega + xi cos theta) / upsilon, clamped to [0,1]; 0 for a vacuum source.
  double gamma(double theta) const;
};

// Closed-form probabilities for n = 0, 1, 2 photons in the signal arm:
// p_noclick[n] is joint with monitor silence, p_total[n] unconditional.
struct LowOrder {
  std::array<double, 3> p_noclick;
  std::array<double, 3> p_total;
};

LowOrder low_order_closed(const Interference &intf);

// F: probability the threshold monitor stays silent, exp(-(upsilon-omega)) I0(xi).
double no_click_probability(const Interference &intf);

struct PhotonDistribution {
  std::vector<double> probs; // index = photon number, 0..n_max
  double mass = 1.0;         // what the entries should sum to

  double sum() const;
  double tail_mass() const { return mass - sum(); }
  double mean() const; // first moment / sum, i.e. mean of the normalized law

  // Entries within [0,1], tail_mass in [-1e-12, tail_tol].
  void check(double tail_tol) const;
};

// The three signal-arm photon-number laws on 0..n_max, by quadrature over
// the phase difference. `click` is total - noclick, clamped at -1e-14.
struct BranchStats {
  PhotonDistribution total;   // mass 1
  PhotonDistribution noclick; // mass F
  PhotonDistribution click;   // mass 1 - F
  double f_noclick = 1.0;
};

BranchStats branch_stats(const Interference &intf, int n_max,
                         const QuadratureSpec &quad, double tail_tol = 1e-10);

// Normalized laws conditioned on the monitor outcome. Throws
// degenerate_error when one branch has no probability mass (F = 0 or 1).
struct Conditionals {
  PhotonDistribution click;   // r^c
  PhotonDistribution noclick; // r^nc
};

Conditionals conditional_distributions(const BranchStats &bs);

// Joint law of (signal photons = n, monitor photons = m).
double joint_pnm(const Interference &intf, int n, int m,
                 const QuadratureSpec &quad);

// joint_pnm for all n <= n_max, m <= m_max in one quadrature pass.
std::vector<std::vector<double>> joint_table(const Interference &intf,
                                             int n_max, int m_max,
                                             const QuadratureSpec &quad);

// Half the L1 distance between dist (normalized) and a Poisson law of the
// given mean, summed over 0..n_max.
double total_variation_vs_poisson(const PhotonDistribution &dist, double mean);

} // namespace pdecoy
