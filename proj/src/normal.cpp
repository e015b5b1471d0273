#include "guamp/normal.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "guamp/errors.hpp"

namespace guamp::normal {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

struct Mills {
  double ratio;   // M(t) = sf(t) / pdf(t)
  double excess;  // 1 / M(t) - t, the inverse-Mills ratio minus t
};

// Continued fraction t + 2/(t + 3/(t + 4/(t + ...))) by modified Lentz.
double mills_tail_denominator(double t) {
  constexpr double tiny = 1e-300;
  double f = t;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < 2000; ++k) {
    const double a = static_cast<double>(k + 1);
    d = t + a * d;
    if (d == 0.0) {
      d = tiny;
    }
    d = 1.0 / d;
    c = t + a / c;
    if (c == 0.0) {
      c = tiny;
    }
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) {
      break;
    }
  }
  return f;
}

Mills mills(double t) {
  if (std::isinf(t)) {
    return {0.0, 0.0};
  }
  if (t < kMillsCrossover) {
    const double ratio = sf(t) / pdf(t);
    return {ratio, 1.0 / ratio - t};
  }
  const double excess = 1.0 / mills_tail_denominator(t);
  return {1.0 / (t + excess), excess};
}

// 0 <= a < b <= inf.
TruncatedMoments upper_tail_moments(double a, double b) {
  const Mills ma = mills(a);
  if (std::isinf(b)) {
    const double A = a + ma.excess;  // pdf(a) / sf(a)
    return {A, A * ma.excess};
  }
  const Mills mb = mills(b);
  const double e = std::exp(-0.5 * (b - a) * (b + a));  // pdf(b) / pdf(a)
  const double A = 1.0 / (ma.ratio - e * mb.ratio);      // pdf(a) / Z
  const double B = e * A;                                // pdf(b) / Z
  const double mean = A * (1.0 - e);
  const double mean_minus_a = A * (ma.ratio * ma.excess - e * mb.ratio * (mb.excess + (b - a)));
  return {mean, A * mean_minus_a + B * (b - mean)};
}

// a < 0 < b.
TruncatedMoments straddling_moments(double a, double b) {
  const double mass = 0.5 * (std::erf(b * kInvSqrt2) + std::erf(-a * kInvSqrt2));
  const double A = pdf(a) / mass;
  const double B = pdf(b) / mass;
  const double mean = A - B;
  double deficit = 0.0;
  if (std::isfinite(a)) {
    deficit += A * (mean - a);
  }
  if (std::isfinite(b)) {
    deficit += B * (b - mean);
  }
  return {mean, deficit};
}

// Finite cells with (b - a) max(1, |a|, |b|) <= 1. The density varies by at
// most a factor e^1.5 across the cell, so a 20-point Gauss-Legendre rule is
// exact to rounding, and it avoids subtracting two nearly equal tail masses.
TruncatedMoments narrow_moments(double a, double b) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const double half = 0.5 * (b - a);
  const double mid = a + half;
  const double anchor = (a < 0.0 && b > 0.0) ? 0.0 : std::min(std::abs(a), std::abs(b));
  double t[20], f[20];
  double mass = 0.0, first = 0.0;
  for (std::size_t k = 0; k < 10; ++k) {
    for (int side = 0; side < 2; ++side) {
      const std::size_t i = 2 * k + static_cast<std::size_t>(side);
      t[i] = mid + (side ? half : -half) * Rule::abscissa()[k];
      f[i] = Rule::weights()[k] * std::exp(-0.5 * (t[i] - anchor) * (t[i] + anchor));
      mass += f[i];
      first += f[i] * (t[i] - mid);
    }
  }
  const double offset = first / mass;
  double second = 0.0;
  for (std::size_t i = 0; i < 20; ++i) second += f[i] * (t[i] - mid - offset) * (t[i] - mid - offset);
  return {mid + offset, 1.0 - second / mass};
}

}  // namespace

double pdf(double x) {
  if (std::isinf(x)) {
    return 0.0;
  }
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double sf(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double mills_ratio(double t) { return mills(t).ratio; }

TruncatedMoments truncated_moments(double a, double b) {
  if (!(a < b)) {
    throw InvalidParameter("truncated_moments requires lower < upper");
  }
  if (std::isfinite(a) && std::isfinite(b) &&
      (b - a) * std::max({1.0, std::abs(a), std::abs(b)}) <= 1.0) {
    return narrow_moments(a, b);
  }
  if (b <= 0.0) {
    const TruncatedMoments reflected = upper_tail_moments(-b, -a);
    return {-reflected.mean, reflected.deficit};
  }
  if (a >= 0.0) {
    return upper_tail_moments(a, b);
  }
  return straddling_moments(a, b);
}

}  // namespace guamp::normal
