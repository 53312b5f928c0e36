#include "photon_stats.h"

#include "errors.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pdecoy {

Interference Interference::derive(double mu1, double mu2, double t) {
  if (!(mu1 >= 0.0) || !(mu2 >= 0.0))
    throw argument_error("intensities must be non-negative");
  if (!(t >= 0.0 && t <= 1.0))
    throw argument_error("beam-splitter transmittance must be in [0,1]");
  Interference intf;
  intf.mu1 = mu1;
  intf.mu2 = mu2;
  intf.t = t;
  intf.upsilon = mu1 + mu2;
  intf.xi = 2.0 * std::sqrt(mu1 * mu2 * (1.0 - t) * t);
  intf.omega = mu1 * t + mu2 * (1.0 - t);
  return intf;
}

double Interference::gamma(double theta) const {
  if (upsilon == 0.0) return 0.0;
  const double g = (omega + xi * std::cos(theta)) / upsilon;
  return std::clamp(g, 0.0, 1.0);
}

double no_click_probability(const Interference &intf) {
  // upsilon - omega is the monitored arm's mean photon number.
  return std::exp(-(intf.upsilon - intf.omega)) * bessel_i(0, intf.xi);
}

LowOrder low_order_closed(const Interference &intf) {
  const double u = intf.upsilon, x = intf.xi, w = intf.omega;
  const double eu = std::exp(-u);
  const double ew = std::exp(-w);
  const double i0 = bessel_i(0, x);
  const double i1 = bessel_i(1, x);
  const double i2 = bessel_i(2, x);
  LowOrder lo;
  lo.p_noclick = {eu, w * eu, (2.0 * w * w + x * x) * eu / 4.0};
  lo.p_total = {i0 * ew, (w * i0 - x * i1) * ew,
                (w * w * i0 + (1.0 - 2.0 * w) * x * i1 + x * x * i2) * ew /
                    2.0};
  return lo;
}

double PhotonDistribution::sum() const {
  double s = 0.0;
  for (double p : probs) s += p;
  return s;
}

double PhotonDistribution::mean() const {
  double s = 0.0, m = 0.0;
  for (size_t n = 0; n < probs.size(); ++n) {
    s += probs[n];
    m += n * probs[n];
  }
  if (s <= 0.0) throw degenerate_error("mean of an empty distribution");
  return m / s;
}

void PhotonDistribution::check(double tail_tol) const {
  for (size_t n = 0; n < probs.size(); ++n)
    if (!(probs[n] >= 0.0 && probs[n] <= 1.0))
      throw validation_error("probability out of [0,1] at n = " +
                             std::to_string(n));
  const double tail = tail_mass();
  if (tail < -1e-12)
    throw validation_error("distribution mass exceeds its branch total");
  if (tail > tail_tol)
    throw validation_error("truncation tail " + std::to_string(tail) +
                           " above tolerance; raise n_max");
}

BranchStats branch_stats(const Interference &intf, int n_max,
                         const QuadratureSpec &quad, double tail_tol) {
  if (n_max < 0) throw argument_error("n_max must be non-negative");
  quad.validate();

  BranchStats bs;
  bs.total.probs.assign(n_max + 1, 0.0);
  bs.noclick.probs.assign(n_max + 1, 0.0);
  bs.click.probs.assign(n_max + 1, 0.0);

  const double u = intf.upsilon;
  const double step = 2.0 * std::numbers::pi / quad.points;
  for (int j = 0; j < quad.points; ++j) {
    const double g = intf.gamma(j * step);
    const double ug = u * g;
    // Poisson(ug) weights for the total law; the no-click joint replaces
    // exp(-ug) with exp(-u). Recurrences keep every term positive.
    double term_t = std::exp(-ug);
    double term_nc = std::exp(-u);
    for (int n = 0; n <= n_max; ++n) {
      bs.total.probs[n] += term_t;
      bs.noclick.probs[n] += term_nc;
      term_t *= ug / (n + 1);
      term_nc *= ug / (n + 1);
    }
  }
  for (int n = 0; n <= n_max; ++n) {
    bs.total.probs[n] /= quad.points;
    bs.noclick.probs[n] /= quad.points;
    double click = bs.total.probs[n] - bs.noclick.probs[n];
    if (click < 0.0) {
      if (click < -1e-14)
        throw internal_error("click-branch probability " +
                             std::to_string(click) + " at n = " +
                             std::to_string(n));
      click = 0.0;
    }
    bs.click.probs[n] = click;
  }

  bs.f_noclick = no_click_probability(intf);
  bs.total.mass = 1.0;
  bs.noclick.mass = bs.f_noclick;
  bs.click.mass = 1.0 - bs.f_noclick;
  bs.total.check(tail_tol);
  bs.noclick.check(tail_tol);
  bs.click.check(std::max(tail_tol, 1e-12)); // mass 1-F can itself be ~0
  return bs;
}

Conditionals conditional_distributions(const BranchStats &bs) {
  const double f = bs.f_noclick;
  if (f <= 0.0)
    throw degenerate_error("no-click branch has zero probability");
  if (f >= 1.0 - 1e-15)
    throw degenerate_error(
        "monitor never clicks; click-branch law undefined");
  Conditionals c;
  c.click.probs.resize(bs.click.probs.size());
  c.noclick.probs.resize(bs.noclick.probs.size());
  for (size_t n = 0; n < bs.click.probs.size(); ++n) {
    c.click.probs[n] = bs.click.probs[n] / (1.0 - f);
    c.noclick.probs[n] = bs.noclick.probs[n] / f;
  }
  c.click.mass = 1.0;
  c.noclick.mass = 1.0;
  return c;
}

double joint_pnm(const Interference &intf, int n, int m,
                 const QuadratureSpec &quad) {
  if (n < 0 || m < 0) throw argument_error("photon numbers must be >= 0");
  const double u = intf.upsilon;
  return phase_average(
      [&](double theta) {
        const double g = intf.gamma(theta);
        return poisson_pmf(u * g, n) * poisson_pmf(u * (1.0 - g), m);
      },
      quad);
}

std::vector<std::vector<double>> joint_table(const Interference &intf,
                                             int n_max, int m_max,
                                             const QuadratureSpec &quad) {
  if (n_max < 0 || m_max < 0)
    throw argument_error("photon numbers must be >= 0");
  quad.validate();
  std::vector<std::vector<double>> table(
      n_max + 1, std::vector<double>(m_max + 1, 0.0));
  std::vector<double> a(n_max + 1), b(m_max + 1);
  const double u = intf.upsilon;
  const double step = 2.0 * std::numbers::pi / quad.points;
  for (int j = 0; j < quad.points; ++j) {
    const double g = intf.gamma(j * step);
    const double ua = u * g, ub = u * (1.0 - g);
    double term = std::exp(-ua);
    for (int n = 0; n <= n_max; ++n) {
      a[n] = term;
      term *= ua / (n + 1);
    }
    term = std::exp(-ub);
    for (int m = 0; m <= m_max; ++m) {
      b[m] = term;
      term *= ub / (m + 1);
    }
    for (int n = 0; n <= n_max; ++n)
      for (int m = 0; m <= m_max; ++m) table[n][m] += a[n] * b[m];
  }
  for (auto &row : table)
    for (double &p : row) p /= quad.points;
  return table;
}

double total_variation_vs_poisson(const PhotonDistribution &dist,
                                  double mean) {
  double tv = 0.0;
  for (size_t n = 0; n < dist.probs.size(); ++n)
    tv += std::abs(dist.probs[n] - poisson_pmf(mean, static_cast<int>(n)));
  return tv / 2.0;
}

} // namespace pdecoy
