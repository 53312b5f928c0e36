#include "decoy_bounds.h"

#include "errors.h"

#include <algorithm>
#include <cmath>

namespace pdecoy {

namespace {
constexpr double kDetFloor = 1e-18;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }
} // namespace

bool estimation_certificate(const LowOrder &lo, double *d0, double *d1) {
  const auto &nc = lo.p_noclick;
  const auto &tt = lo.p_total;
  const double det0 = tt[1] * nc[0] - nc[1] * tt[0];
  const double det1 = nc[2] * tt[1] - tt[2] * nc[1];
  if (d0) *d0 = det0;
  if (d1) *d1 = det1;
  return std::abs(det0) > kDetFloor && std::abs(det1) > kDetFloor;
}

DecoyBounds decoy_bounds(const LowOrder &lo, const Observed &ob, double e0) {
  DecoyBounds b;
  b.certificate_valid = estimation_certificate(lo, &b.d0, &b.d1);
  if (!b.certificate_valid)
    throw certificate_error(
        "branch statistics are proportional; estimators do not invert");

  const double p0nc = lo.p_noclick[0], p1nc = lo.p_noclick[1],
               p2nc = lo.p_noclick[2];
  const double p0t = lo.p_total[0], p1t = lo.p_total[1], p2t = lo.p_total[2];
  const double qnc = ob.q_noclick, enc = ob.e_noclick;
  const double qt = ob.q_total, et = ob.e_total;

  // Background yield: each branch's error events bound y0 from above; the
  // order-(0,1) linear system bounds it from below.
  b.y0_upper_raw = std::min(2.0 * enc * qnc / p0nc, 2.0 * et * qt / p0t);
  b.y0_upper = clamp01(b.y0_upper_raw);

  b.y0_lower_raw = (p1t * qnc - p1nc * qt) / b.d0;
  b.y0_lower = clamp01(std::max(0.0, b.y0_lower_raw));

  // Single-photon yield from the order-(1,2) system, charging the unknown
  // vacuum contribution at its upper bound.
  b.y1_lower_raw =
      (p2nc * qt - p2t * qnc - (p2nc * p0t - p2t * p0nc) * b.y0_upper) / b.d1;
  b.y1_lower = clamp01(std::max(0.0, b.y1_lower_raw));

  if (b.y1_lower == 0.0) {
    b.e1_vacuous = true;
    b.e1_upper_raw = 1.0;
    b.e1_upper = 1.0;
    return b;
  }

  // Three candidate ceilings on the single-photon error rate: one per
  // branch, crediting vacuum errors at the y0 floor, plus the cross-branch
  // combination that eliminates the vacuum term altogether.
  const double p0c = p0t - p0nc, p1c = p1t - p1nc;
  const double qc = ob.q_click, ec = ob.e_click;
  // de repeats d0's products, so the certificate already keeps it nonzero.
  const double de = p0nc * p1t - p0t * p1nc;
  double best = (p0nc * et * qt - p0t * enc * qnc) / (de * b.y1_lower);
  if (p1nc > 0.0)
    best = std::min(best,
                    (enc * qnc - p0nc * b.y0_lower * e0) / (p1nc * b.y1_lower));
  if (p1c > 0.0)
    best = std::min(best,
                    (ec * qc - p0c * b.y0_lower * e0) / (p1c * b.y1_lower));
  b.e1_upper_raw = best;
  b.e1_upper = clamp01(b.e1_upper_raw);
  return b;
}

} // namespace pdecoy
