#pragma once

#include <functional>

namespace pdecoy {

// Periodic trapezoid rule over [0, 2pi): the mean of `points` equispaced
// samples. Exact for trigonometric polynomials of degree < points/2.
struct QuadratureSpec {
  int points = 512;
  void validate() const; // throws argument_error unless points >= 16 and even
};

double phase_average(const std::function<double(double)> &f,
                     const QuadratureSpec &quad);

// Modified Bessel function of the first kind, integer order q >= 0,
// z in [0, 700]. Relative error <= 1e-12 over the supported domain.
double bessel_i(int q, double z);

// bessel_i(0, z) - 1 evaluated without cancellation near z = 0.
double bessel_i0_minus_1(double z);

// Binary entropy in bits; h2(0) = h2(1) = 0; throws domain_error outside [0,1].
double h2(double x);

// Poisson pmf exp(-mu) mu^n / n!, computed in log space for large n.
double poisson_pmf(double mu, int n);

} // namespace pdecoy
