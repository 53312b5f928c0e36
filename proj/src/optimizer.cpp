#include "optimizer.h"

#include "errors.h"

#include <algorithm>
#include <array>
#include <cmath>

namespace pdecoy {

void OptimizerDomain::validate() const {
  if (!(mu1_min > 0.0 && mu1_min <= mu1_max))
    throw validation_error("need 0 < mu1_min <= mu1_max");
  if (!(mu2_min > 0.0 && mu2_min <= mu2_max))
    throw validation_error("need 0 < mu2_min <= mu2_max");
}

namespace {

constexpr int kGridPerAxis = 17;
constexpr int kMaxIterations = 500;
constexpr double kSimplexTol = 1e-4;

struct LogBox {
  double lo1, hi1, lo2, hi2; // log10 bounds per axis

  std::array<double, 2> clamp(std::array<double, 2> p) const {
    p[0] = std::clamp(p[0], lo1, hi1);
    p[1] = std::clamp(p[1], lo2, hi2);
    return p;
  }
};

// Rate as a function of log10 intensities; configurations where the
// estimators degenerate simply contribute no certifiable key.
struct Objective {
  const ChannelParams &ch;
  const ProtocolParams &pp;
  double t, eta;

  double operator()(const std::array<double, 2> &p) const {
    const Interference intf =
        Interference::derive(std::pow(10.0, p[0]), std::pow(10.0, p[1]), t);
    try {
      return passive_rate(intf, ch, eta, pp).rate_total;
    } catch (const certificate_error &) {
      return 0.0;
    } catch (const degenerate_error &) {
      return 0.0;
    }
  }
};

struct Vertex {
  std::array<double, 2> x;
  double f;
};

// Nelder-Mead maximization with candidates projected into the box.
Vertex nelder_mead(const Objective &obj, const LogBox &box,
                   std::array<double, 2> start, double step1, double step2) {
  std::array<Vertex, 3> s;
  s[0] = {box.clamp(start), 0.0};
  s[1] = {box.clamp({start[0] + step1, start[1]}), 0.0};
  s[2] = {box.clamp({start[0], start[1] + step2}), 0.0};
  for (auto &v : s) v.f = obj(v.x);

  for (int it = 0; it < kMaxIterations; ++it) {
    std::sort(s.begin(), s.end(),
              [](const Vertex &a, const Vertex &b) { return a.f > b.f; });

    const double span =
        std::max(std::max(std::abs(s[1].x[0] - s[0].x[0]),
                          std::abs(s[1].x[1] - s[0].x[1])),
                 std::max(std::abs(s[2].x[0] - s[0].x[0]),
                          std::abs(s[2].x[1] - s[0].x[1])));
    if (span < kSimplexTol) break;

    const std::array<double, 2> cen = {(s[0].x[0] + s[1].x[0]) / 2.0,
                                       (s[0].x[1] + s[1].x[1]) / 2.0};
    auto at = [&](double c) {
      return box.clamp({cen[0] + c * (cen[0] - s[2].x[0]),
                        cen[1] + c * (cen[1] - s[2].x[1])});
    };

    Vertex refl{at(1.0), 0.0};
    refl.f = obj(refl.x);
    if (refl.f > s[0].f) {
      Vertex expd{at(2.0), 0.0};
      expd.f = obj(expd.x);
      s[2] = expd.f > refl.f ? expd : refl;
      continue;
    }
    if (refl.f > s[1].f) {
      s[2] = refl;
      continue;
    }
    Vertex contr{at(-0.5), 0.0};
    contr.f = obj(contr.x);
    if (contr.f > s[2].f) {
      s[2] = contr;
      continue;
    }
    for (int i = 1; i < 3; ++i) { // shrink toward the best vertex
      s[i].x = {s[0].x[0] + 0.5 * (s[i].x[0] - s[0].x[0]),
                s[0].x[1] + 0.5 * (s[i].x[1] - s[0].x[1])};
      s[i].f = obj(s[i].x);
    }
  }

  std::sort(s.begin(), s.end(),
            [](const Vertex &a, const Vertex &b) { return a.f > b.f; });
  return s[0];
}

} // namespace

Optimum optimize_intensities(const ChannelParams &ch, const ProtocolParams &pp,
                             double t, double eta,
                             const OptimizerDomain &dom) {
  dom.validate();
  const LogBox box{std::log10(dom.mu1_min), std::log10(dom.mu1_max),
                   std::log10(dom.mu2_min), std::log10(dom.mu2_max)};
  const Objective obj{ch, pp, t, eta};

  const double step1 = (box.hi1 - box.lo1) / (kGridPerAxis - 1);
  const double step2 = (box.hi2 - box.lo2) / (kGridPerAxis - 1);
  Vertex best{{box.lo1, box.lo2}, 0.0};
  for (int i = 0; i < kGridPerAxis; ++i)
    for (int j = 0; j < kGridPerAxis; ++j) {
      const std::array<double, 2> p = {box.lo1 + i * step1,
                                       box.lo2 + j * step2};
      const double f = obj(p);
      if (f > best.f) best = {p, f};
    }
  if (best.f <= 0.0) return {}; // whole grid dead: no positive rate

  // Refine from the grid optimum and from its swap image: the surface is
  // symmetric under exchanging the pulses, but the search box is not, so
  // the better basin can sit on the mirrored side of the diagonal.
  Vertex run = nelder_mead(obj, box, best.x, step1 / 2.0, step2 / 2.0);
  const std::array<double, 2> swapped = box.clamp({best.x[1], best.x[0]});
  if (swapped != best.x) {
    const Vertex alt = nelder_mead(obj, box, swapped, step1 / 2.0, step2 / 2.0);
    if (alt.f > run.f) run = alt;
  }
  if (run.f < best.f) run = best; // refinement never loses to its seed

  Optimum opt;
  opt.mu1 = std::pow(10.0, run.x[0]);
  opt.mu2 = std::pow(10.0, run.x[1]);
  opt.rate = run.f;
  if (opt.mu1 > opt.mu2) std::swap(opt.mu1, opt.mu2);
  return opt;
}

Optimum optimize_active_intensity(const ChannelParams &ch,
                                  const ProtocolParams &pp, double eta,
                                  const OptimizerDomain &dom) {
  dom.validate();
  const double lo = std::log10(dom.mu2_min), hi = std::log10(dom.mu2_max);
  auto rate_at = [&](double lg) {
    return active_rate(ch, pp, std::pow(10.0, lg), eta);
  };

  const int n = 65;
  double best_lg = lo, best_r = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lg = lo + (hi - lo) * i / (n - 1);
    const double r = rate_at(lg);
    if (r > best_r) {
      best_r = r;
      best_lg = lg;
    }
  }
  if (best_r <= 0.0) return {};

  for (double step = 0.1; step > 1e-7;) {
    bool moved = false;
    for (double d : {-step, step}) {
      const double lg = std::clamp(best_lg + d, lo, hi);
      const double r = rate_at(lg);
      if (r > best_r) {
        best_r = r;
        best_lg = lg;
        moved = true;
      }
    }
    if (!moved) step /= 2.0;
  }

  Optimum opt;
  opt.mu1 = 0.0;
  opt.mu2 = std::pow(10.0, best_lg);
  opt.rate = best_r;
  return opt;
}

double cutoff_distance(const ChannelParams &ch, const ProtocolParams &pp,
                       double t, const OptimizerDomain &dom,
                       bool active_mode) {
  auto rate_at = [&](double l) {
    const double eta = transmittance(ch, l);
    return active_mode ? optimize_active_intensity(ch, pp, eta, dom).rate
                       : optimize_intensities(ch, pp, t, eta, dom).rate;
  };

  if (!(rate_at(0.0) > 0.0))
    throw no_positive_rate_error("optimized rate is zero already at l = 0");

  double lo = 0.0, hi = 10.0;
  while (rate_at(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6)
      throw domain_error("rate stays positive out to 1e6 km; no cutoff");
  }
  while (hi - lo > 0.01) {
    const double mid = 0.5 * (lo + hi);
    (rate_at(mid) > 0.0 ? lo : hi) = mid;
  }
  return lo;
}

} // namespace pdecoy
