#include "numerics.h"

#include "errors.h"

#include <cmath>
#include <numbers>
#include <limits>
#include <string>

namespace pdecoy {

void QuadratureSpec::validate() const {
  if (points < 16 || points % 2 != 0)
    throw argument_error("quad_points must be even and at least 16, got " +
                         std::to_string(points));
}

double phase_average(const std::function<double(double)> &f,
                     const QuadratureSpec &quad) {
  quad.validate();
  // Equispaced nodes on [0, 2pi); for periodic integrands this is the
  // trapezoid rule and converges spectrally.
  const double step = 2.0 * std::numbers::pi / quad.points;
  double sum = 0.0;
  for (int j = 0; j < quad.points; ++j) sum += f(j * step);
  return sum / quad.points;
}

namespace {

// Ascending series sum_k (z/2)^(2k+q) / (k! (q+k)!). All terms positive,
// no cancellation; the prefactor is built in log space so large q is safe.
double bessel_i_series(int q, double z) {
  const double h = z / 2.0;
  const double h2v = h * h;
  double term = std::exp(q * std::log(h) - std::lgamma(q + 1.0));
  double sum = term;
  for (int k = 0; k < 1000; ++k) {
    term *= h2v / ((k + 1.0) * (q + k + 1.0));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// Large-argument expansion e^z / sqrt(2 pi z) * sum_k c_k, summed to its
// smallest term. At z > 15 the truncation error is below 1e-13 relative.
double bessel_i_asymptotic(int q, double z) {
  const double mu4 = 4.0 * q * q;
  double c = 1.0, sum = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    c *= -(mu4 - odd * odd) / (8.0 * k * z);
    if (std::abs(c) >= prev) break; // divergent tail reached
    prev = std::abs(c);
    sum += c;
    if (std::abs(c) < 1e-17 * std::abs(sum)) break;
  }
  return std::exp(z) / std::sqrt(2.0 * std::numbers::pi * z) * sum;
}

// Downward recurrence I_{n-1} = I_{n+1} + (2n/z) I_n from a trial start,
// normalized against the directly computed I_0. Stable for all orders.
double bessel_i_miller(int q, double z) {
  const int start = std::max(q, static_cast<int>(z)) + 60;
  double above = 0.0, here = 1e-280;
  double target = 0.0;
  for (int n = start; n >= 1; --n) {
    const double below = above + (2.0 * n / z) * here;
    above = here;
    here = below;
    if (n - 1 == q) target = here;
    if (std::abs(here) > 1e250) {
      above *= 1e-250;
      here *= 1e-250;
      target *= 1e-250;
    }
  }
  return target / here * bessel_i_asymptotic(0, z);
}

} // namespace

double bessel_i(int q, double z) {
  if (q < 0) throw domain_error("bessel_i: order must be non-negative");
  if (!(z >= 0.0) || z > 700.0)
    throw domain_error("bessel_i: argument " + std::to_string(z) +
                       " outside [0, 700]");
  if (z == 0.0) return q == 0 ? 1.0 : 0.0;
  if (z <= 15.0) return bessel_i_series(q, z);
  if (q <= 1) return bessel_i_asymptotic(q, z);
  return bessel_i_miller(q, z);
}

double bessel_i0_minus_1(double z) {
  if (!(z >= 0.0) || z > 700.0)
    throw domain_error("bessel_i0_minus_1: argument outside [0, 700]");
  if (z > 15.0) return bessel_i(0, z) - 1.0;
  // Same series as I_0 with the k = 0 term dropped, so the result keeps
  // full relative precision as z -> 0.
  const double h2v = z * z / 4.0;
  double term = h2v;
  double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= h2v / ((k + 1.0) * (k + 1.0));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

double h2(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw domain_error("h2: argument " + std::to_string(x) +
                       " outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double poisson_pmf(double mu, int n) {
  if (n < 0) throw domain_error("poisson_pmf: n must be non-negative");
  if (!(mu >= 0.0)) throw domain_error("poisson_pmf: mean must be >= 0");
  if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(n * std::log(mu) - mu - std::lgamma(n + 1.0));
}

} // namespace pdecoy
