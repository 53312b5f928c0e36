#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "channel.h"
#include "decoy_bounds.h"
#include "errors.h"

#include <cmath>
#include <vector>

using namespace pdecoy;

namespace {

double rel(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

const ChannelParams kBench{};

DecoyBounds bounds_at(double mu1, double mu2, const ChannelParams &ch,
                      double l) {
  const auto intf = Interference::derive(mu1, mu2, 0.5);
  const double eta = transmittance(ch, l);
  const auto ob = observed_passive(intf, ch, eta);
  return decoy_bounds(low_order_closed(intf), ob, ch.e0);
}

double true_e1(const ChannelParams &ch, double eta) {
  const double y1 = yield_n(ch, eta, 1);
  return (ch.e0 * ch.y0 + ch.e_d * (y1 - ch.y0)) / y1;
}

} // namespace

TEST_CASE("estimation certificate") {
  double d0 = 0.0, d1 = 0.0;
  const auto lo = low_order_closed(Interference::derive(0.55, 1e-4, 0.5));
  CHECK(estimation_certificate(lo, &d0, &d1));
  CHECK(rel(d0, -1.204973755e-5) < 1e-9);
  CHECK(rel(d1, 4.556193234e-7) < 1e-9);

  // A single live port makes the two branch laws proportional.
  const auto prop = low_order_closed(Interference::derive(0.8, 0.0, 0.3));
  CHECK_FALSE(estimation_certificate(prop));
  const auto vac = low_order_closed(Interference::derive(0.0, 0.0, 0.5));
  CHECK_FALSE(estimation_certificate(vac));

  Observed ob;
  ob.q_total = 0.01;
  ob.e_total = 0.03;
  CHECK_THROWS_AS(decoy_bounds(prop, ob, 0.5), certificate_error);
}

TEST_CASE("benchmark bounds at 20 km") {
  const auto b = bounds_at(0.55, 1e-4, kBench, 20.0);
  CHECK(b.certificate_valid);
  CHECK_FALSE(b.e1_vacuous);
  CHECK(b.y0_lower == 0.0);
  CHECK(b.y0_lower_raw < 0.0);
  CHECK(rel(b.y0_upper, 0.000410174421) < 1e-8);
  CHECK(rel(b.y1_lower, 0.0133744641) < 1e-8);
  CHECK(rel(b.e1_upper, 0.0557515964) < 1e-8);
  CHECK(b.y1_lower == b.y1_lower_raw);
  CHECK(b.e1_upper == b.e1_upper_raw);
  CHECK(rel(b.d0, -1.204973755e-5) < 1e-9);
  CHECK(rel(b.d1, 4.556193234e-7) < 1e-9);

  // The estimates must bracket the channel model's true values.
  const double eta = transmittance(kBench, 20.0);
  CHECK(b.y0_lower <= kBench.y0);
  CHECK(b.y0_upper >= kBench.y0);
  CHECK(b.y1_lower <= yield_n(kBench, eta, 1));
  CHECK(b.e1_upper >= true_e1(kBench, eta));
}

TEST_CASE("sandwich property across the distance-intensity grid") {
  for (int l = 0; l <= 120; l += 10)
    for (double mu2 : {0.3, 0.55, 0.8})
      for (double mu1 : {1e-4, 1e-2}) {
        CAPTURE(l);
        CAPTURE(mu2);
        CAPTURE(mu1);
        const auto b = bounds_at(mu1, mu2, kBench, l);
        const double eta = transmittance(kBench, l);
        const double y1 = yield_n(kBench, eta, 1);
        CHECK(b.certificate_valid);
        CHECK(b.y0_lower >= 0.0);
        CHECK(b.y0_lower <= b.y0_upper);
        CHECK(b.y0_upper <= 1.0);
        CHECK(b.y1_lower >= 0.0);
        CHECK(b.y1_lower <= 1.0);
        CHECK(b.e1_upper >= 0.0);
        CHECK(b.e1_upper <= 1.0);
        CHECK(b.y0_lower <= kBench.y0);
        CHECK(b.y0_upper >= kBench.y0);
        CHECK(b.y1_lower <= y1);
        CHECK(b.e1_upper >= true_e1(kBench, eta));
      }
}

TEST_CASE("noiseless channel pins the error bound to zero") {
  ChannelParams clean = kBench;
  clean.e_d = 0.0;
  clean.y0 = 0.0;
  const auto b = bounds_at(0.55, 1e-4, clean, 20.0);
  CHECK(b.y0_upper == 0.0);
  CHECK(b.y0_lower == 0.0);
  CHECK(b.y1_lower > 0.0);
  CHECK(b.e1_upper == 0.0);
  CHECK_FALSE(b.e1_vacuous);
}

TEST_CASE("uninformative statistics produce the trivial bound, flagged") {
  const auto lo = low_order_closed(Interference::derive(0.55, 1e-4, 0.5));
  const Observed zeros; // no gain anywhere
  const auto b = decoy_bounds(lo, zeros, 0.5);
  CHECK(b.y0_upper == 0.0);
  CHECK(b.y1_lower == 0.0);
  CHECK(b.e1_vacuous);
  CHECK(b.e1_upper == 1.0);
}

TEST_CASE("injected errors never loosen downward") {
  const auto intf = Interference::derive(0.55, 1e-4, 0.5);
  const double eta = transmittance(kBench, 20.0);
  const auto lo = low_order_closed(intf);
  const std::vector<double> eds = {0.005, 0.01, 0.02, 0.033, 0.05,
                                   0.08,  0.12, 0.2,  0.3};
  double prev = -1.0;
  for (double ed : eds) {
    CAPTURE(ed);
    ChannelParams ch = kBench;
    ch.e_d = ed;
    const auto ob = observed_passive(intf, ch, eta);
    const auto b = decoy_bounds(lo, ob, ch.e0);
    CHECK(b.e1_upper >= prev - 1e-12);
    prev = b.e1_upper;
  }
  // Heavy noise exhausts the single-photon floor; the bound saturates.
  ChannelParams noisy = kBench;
  noisy.e_d = 0.3;
  const auto sat =
      decoy_bounds(lo, observed_passive(intf, noisy, eta), noisy.e0);
  CHECK(sat.y1_lower == 0.0);
  CHECK(sat.e1_vacuous);
  CHECK(sat.e1_upper == 1.0);
}
