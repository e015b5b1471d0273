#include "guamp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/float128.hpp>

#include "guamp/errors.hpp"

namespace guamp::oracle {

namespace {

using Real = boost::multiprecision::float128;
using LogDensity = std::function<Real(Real)>;

const Real kPi = boost::math::constants::pi<Real>();
const Real kSqrt2 = boost::math::constants::root_two<Real>();
const Real kInf = std::numeric_limits<Real>::infinity();

constexpr double kWindowSigmas = 40.0;
constexpr unsigned kMaxDepth = 48;
const Real kPanelTolerance = Real(1e-26);
const Real kFailTolerance = Real(1e-20);

Real to_real(double x) {
  if (std::isinf(x)) {
    return x > 0 ? kInf : -kInf;
  }
  return Real(x);
}

Real std_pdf(Real x) {
  if (isinf(x)) {
    return Real(0);
  }
  return exp(-x * x / 2) / sqrt(2 * kPi);
}
Real std_cdf(Real x) { return erfc(-x / kSqrt2) / 2; }
Real std_sf(Real x) { return erfc(x / kSqrt2) / 2; }

// P(lower < z + w <= upper), w ~ N(0, sigma^2), arranged to avoid 1 - 1.
Real interval_probability(Real z, Real lower, Real upper, Real sigma) {
  const Real a = (lower - z) / sigma;
  const Real b = (upper - z) / sigma;
  if (a >= 0) {
    return std_sf(a) - std_sf(b);
  }
  if (b <= 0) {
    return std_cdf(b) - std_cdf(a);
  }
  return 1 - std_cdf(a) - std_sf(b);
}

// d/dz log P(lower < z + w <= upper).
Real interval_log_slope(Real z, Real lower, Real upper, Real sigma) {
  const Real prob = interval_probability(z, lower, upper, sigma);
  const Real a = (lower - z) / sigma;
  const Real b = (upper - z) / sigma;
  const Real slope = (std_pdf(a) - std_pdf(b)) / (sigma * prob);
  if (prob > 0 && isfinite(slope)) {
    return slope;
  }
  // Everything underflowed: lean toward the cell with the Gaussian-tail slope.
  if (a > 0) {
    return a / sigma;
  }
  return b / sigma;
}

struct Integrals {
  Real zeroth;      // int w
  Real first;       // int (t - center) w
  Real second;      // int (t - center)^2 w
  Real log_peak;    // w = exp(log_density - log_peak)
};

struct MomentSums {
  Real value[3] = {0, 0, 0};
  Real l1[3] = {0, 0, 0};
  Real error[3] = {0, 0, 0};
};

// One 61-point Gauss-Kronrod panel applied to w(t) (t - center)^k, k = 0, 1, 2,
// sharing the density evaluations between the three moments.
MomentSums kronrod_panel(const std::function<Real(Real)>& weight, Real a, Real b, Real center) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<Real, 61>;
  using Gauss = boost::math::quadrature::gauss<Real, 30>;
  const auto& nodes = Kronrod::abscissa();
  const auto& kronrod_w = Kronrod::weights();
  const auto& gauss_w = Gauss::weights();
  const Real mid = (a + b) / 2;
  const Real half = (b - a) / 2;

  Real kronrod[3] = {0, 0, 0};
  Real gauss[3] = {0, 0, 0};
  Real l1[3] = {0, 0, 0};
  auto accumulate = [&](Real t, Real wk, Real wg) {
    const Real w = weight(t);
    const Real d = t - center;
    const Real f[3] = {w, d * w, d * d * w};
    for (int k = 0; k < 3; ++k) {
      kronrod[k] += wk * f[k];
      gauss[k] += wg * f[k];
      l1[k] += wk * abs(f[k]);
    }
  };
  // Node 0 is the midpoint and Kronrod-only; the 30 Gauss points sit at the
  // odd indices.
  accumulate(mid, kronrod_w[0], Real(0));
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const Real wg = i % 2 == 1 ? gauss_w[i / 2] : Real(0);
    accumulate(mid + half * nodes[i], kronrod_w[i], wg);
    accumulate(mid - half * nodes[i], kronrod_w[i], wg);
  }
  MomentSums out;
  for (int k = 0; k < 3; ++k) {
    out.value[k] = half * kronrod[k];
    out.l1[k] = half * l1[k];
    out.error[k] = half * abs(kronrod[k] - gauss[k]);
  }
  return out;
}

// Adaptive bisection until each moment's Gauss/Kronrod discrepancy on the
// panel is below `target`, an absolute bound derived from the L1 norm of the
// whole integrand. Tail panels carrying negligible mass are accepted at once,
// and first moments that cancel to ~0 do not force unbounded refinement.
void integrate_panel(const std::function<Real(Real)>& weight, Real a, Real b, Real center,
                     const Real (&target)[3], unsigned depth, const MomentSums& panel,
                     MomentSums& total) {
  bool converged = true;
  for (int k = 0; k < 3; ++k) {
    if (!isfinite(panel.value[k])) {
      throw OracleFailure("non-finite integrand on [" + a.str(8) + ", " + b.str(8) + "]");
    }
    if (panel.error[k] > target[k]) {
      converged = false;
    }
  }
  if (converged) {
    for (int k = 0; k < 3; ++k) {
      total.value[k] += panel.value[k];
      total.l1[k] += panel.l1[k];
      total.error[k] += panel.error[k];
    }
    return;
  }
  if (depth >= kMaxDepth) {
    throw OracleFailure("quadrature did not reach its error target on [" + a.str(8) + ", " +
                        b.str(8) + "]");
  }
  const Real mid = (a + b) / 2;
  integrate_panel(weight, a, mid, center, target, depth + 1,
                  kronrod_panel(weight, a, mid, center), total);
  integrate_panel(weight, mid, b, center, target, depth + 1,
                  kronrod_panel(weight, mid, b, center), total);
}

// Brackets the maximizer of a strictly concave log density by stepping from
// start in the uphill direction with doubling steps, then bisects the slope.
Real find_mode(const LogDensity& slope, Real start, Real step) {
  Real lo = start;
  Real hi = start;
  const Real s0 = slope(start);
  if (s0 == 0) {
    return start;
  }
  const Real dir = s0 > 0 ? Real(1) : Real(-1);
  Real far = start;
  for (int k = 0; k < 2000; ++k) {
    far = start + dir * step * ldexp(Real(1), k);
    if (!(slope(far) * dir > 0)) {
      break;
    }
    start = far;
  }
  lo = std::min(start, far);
  hi = std::max(start, far);
  for (int k = 0; k < 400 && hi - lo > Real(0); ++k) {
    const Real mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) {
      break;
    }
    if (slope(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

struct Feature {
  Real position;
  Real width;
};

// Moments of exp(log_density) about `center`.
//   curvature: lower bound on -d^2/dt^2 log_density (strong log-concavity).
//   edges: points where the density changes over a short length scale.
Integrals integrate_log_concave(const LogDensity& log_density, const LogDensity& slope,
                                Real start, Real curvature, Real center,
                                const std::vector<Feature>& edges) {
  const Real scale = 1 / sqrt(curvature);
  const Real mode = find_mode(slope, start, scale);
  const Real log_peak = log_density(mode);
  if (!isfinite(log_peak)) {
    throw OracleFailure("posterior mode has non-finite log density");
  }

  // Local width at the mode from a finite difference of the slope.
  const Real h = scale * Real(1e-10);
  Real local_curv = -(slope(mode + h) - slope(mode - h)) / (2 * h);
  if (!isfinite(local_curv) || local_curv < curvature) {
    local_curv = curvature;
  }
  const Real width = 1 / sqrt(local_curv);

  const Real lo = mode - kWindowSigmas * scale;
  const Real hi = mode + kWindowSigmas * scale;
  std::vector<Real> knots{lo, mode, hi};
  for (Real offset = width; offset < kWindowSigmas * scale; offset *= 2) {
    knots.push_back(mode - offset);
    knots.push_back(mode + offset);
  }
  for (const Feature& e : edges) {
    if (!isfinite(e.position)) {
      continue;
    }
    for (Real offset = 0; offset < hi - lo; offset = offset == 0 ? e.width : 2 * offset) {
      for (Real knot : {e.position - offset, e.position + offset}) {
        if (knot > lo && knot < hi) {
          knots.push_back(knot);
        }
      }
    }
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  auto weight = [&](Real t) {
    const Real v = log_density(t) - log_peak;
    return isfinite(v) ? exp(v) : Real(0);
  };
  // Coarse pass over the knot panels fixes the absolute error targets.
  Real l1[3] = {0, 0, 0};
  std::vector<MomentSums> coarse;
  coarse.reserve(knots.size());
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    coarse.push_back(kronrod_panel(weight, knots[k], knots[k + 1], center));
    for (int j = 0; j < 3; ++j) {
      l1[j] += coarse.back().l1[j];
    }
  }
  const Real floor = std::numeric_limits<Real>::min() * Real(1e30);
  const Real target[3] = {kPanelTolerance * l1[0] + floor, kPanelTolerance * l1[1] + floor,
                          kPanelTolerance * l1[2] + floor};
  MomentSums sums;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    integrate_panel(weight, knots[k], knots[k + 1], center, target, 0, coarse[k], sums);
  }
  for (int j = 0; j < 3; ++j) {
    if (sums.error[j] > kFailTolerance * sums.l1[j] + floor) {
      throw OracleFailure("quadrature error estimate exceeds the relative target");
    }
  }
  const Integrals out{sums.value[0], sums.value[1], sums.value[2], log_peak};
  if (!(out.zeroth > 0) || !isfinite(out.zeroth)) {
    throw OracleFailure("posterior normalizer is not positive");
  }
  return out;
}

struct CenteredMoments {
  Real offset;    // E[t] - center
  Real variance;
};

CenteredMoments centered(const Integrals& in) {
  const Real offset = in.first / in.zeroth;
  return {offset, in.second / in.zeroth - offset * offset};
}

CenteredMoments channel_posterior(const GaussianChannelQuery& q) {
  if (!(q.tau_p > 0) || !(q.sigma2 > 0)) {
    throw InvalidParameter("oracle: gaussian channel needs positive variances");
  }
  const Real p(q.p_hat), y(q.y), tau(q.tau_p), s2(q.sigma2);
  auto log_density = [=](Real z) { return -(z - p) * (z - p) / (2 * tau) - (y - z) * (y - z) / (2 * s2); };
  auto slope = [=](Real z) { return -(z - p) / tau + (y - z) / s2; };
  return centered(integrate_log_concave(log_density, slope, p, 1 / tau + 1 / s2, p, {}));
}

CenteredMoments channel_posterior(const IntervalChannelQuery& q) {
  if (!(q.tau_p > 0) || !(q.sigma > 0) || !(q.cell.lower < q.cell.upper)) {
    throw InvalidParameter("oracle: interval channel needs positive variances and lower < upper");
  }
  const Real p(q.p_hat), tau(q.tau_p), sigma(q.sigma);
  const Real lower = to_real(q.cell.lower);
  const Real upper = to_real(q.cell.upper);
  auto log_density = [=](Real z) {
    return -(z - p) * (z - p) / (2 * tau) + log(interval_probability(z, lower, upper, sigma));
  };
  auto slope = [=](Real z) { return -(z - p) / tau + interval_log_slope(z, lower, upper, sigma); };
  return centered(
      integrate_log_concave(log_density, slope, p, 1 / tau, p,
                            {{lower, sigma}, {upper, sigma}}));
}

struct BgPosterior {
  Real mean;
  Real variance;
};

BgPosterior bg_posterior(const BgPriorQuery& q) {
  if (!(q.tau_r > 0)) {
    throw InvalidParameter("oracle: tau_r must be positive");
  }
  q.prior.validate();
  const Real r(q.r), tau(q.tau_r), v0(q.prior.slab_var), lambda(q.prior.lambda);
  auto log_density = [=](Real x) { return -x * x / (2 * v0) - (r - x) * (r - x) / (2 * tau); };
  auto slope = [=](Real x) { return -x / v0 + (r - x) / tau; };
  const Integrals slab =
      integrate_log_concave(log_density, slope, r, 1 / v0 + 1 / tau, Real(0), {});
  const CenteredMoments slab_moments = centered(slab);

  Real responsibility = 1;
  if (lambda < 1) {
    const Real log_slab = log(lambda) - log(2 * kPi) - log(v0 * tau) / 2 + slab.log_peak +
                          log(slab.zeroth);
    const Real log_spike = log(1 - lambda) - log(2 * kPi * tau) / 2 - r * r / (2 * tau);
    responsibility = 1 / (1 + exp(log_spike - log_slab));
  }
  const Real mean = responsibility * slab_moments.offset;
  const Real variance = responsibility * slab_moments.variance +
                        responsibility * (1 - responsibility) * slab_moments.offset *
                            slab_moments.offset;
  return {mean, variance};
}

template <typename ChannelQuery>
OutputMoments channel_output(const ChannelQuery& q) {
  const CenteredMoments post = channel_posterior(q);
  const Real tau(q.tau_p);
  return {static_cast<double>(post.offset / tau),
          static_cast<double>((tau - post.variance) / (tau * tau))};
}

}  // namespace

PosteriorMoments posterior_moments(const Query& query) {
  return std::visit(
      [](const auto& q) -> PosteriorMoments {
        using Q = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<Q, BgPriorQuery>) {
          const BgPosterior post = bg_posterior(q);
          return {static_cast<double>(post.mean), static_cast<double>(post.variance)};
        } else {
          const CenteredMoments post = channel_posterior(q);
          return {static_cast<double>(Real(q.p_hat) + post.offset),
                  static_cast<double>(post.variance)};
        }
      },
      query);
}

OutputMoments output_moments(const GaussianChannelQuery& query) { return channel_output(query); }

OutputMoments output_moments(const IntervalChannelQuery& query) { return channel_output(query); }

DenoiserMoments denoiser_moments(const BgPriorQuery& query) {
  const BgPosterior post = bg_posterior(query);
  return {static_cast<double>(post.mean), static_cast<double>(post.variance)};
}

}  // namespace guamp::oracle
