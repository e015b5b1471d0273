#pragma once

namespace guamp::normal {

// Standard normal density and tail functions.
double pdf(double x);
double cdf(double x);
double sf(double x);  // 1 - cdf(x), accurate in the upper tail

// Mills ratio sf(t) / pdf(t) for t >= 0.
double mills_ratio(double t);

// Arguments at or beyond this point use the continued fraction for the Mills
// ratio instead of erfc; both agree to ~1e-16 relative there.
inline constexpr double kMillsCrossover = 8.0;

// Moments of a standard normal truncated to (a, b]. `deficit` is 1 - Var,
// the variance reduction caused by the truncation; it is computed without
// the cancellation that 1 - Var would suffer deep in a tail.
struct TruncatedMoments {
  double mean = 0.0;
  double deficit = 0.0;
};

// Requires a < b; either end may be infinite.
TruncatedMoments truncated_moments(double a, double b);

}  // namespace guamp::normal
