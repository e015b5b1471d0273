#pragma once

#include <variant>

#include "guamp/channels.hpp"
#include "guamp/denoiser.hpp"
#include "guamp/model.hpp"

namespace guamp::oracle {

// Posterior of z under N(z; p_hat, tau_p) N(y; z, sigma2).
struct GaussianChannelQuery {
  double p_hat;
  double y;
  double tau_p;
  double sigma2;
};

// Posterior of z under N(z; p_hat, tau_p) P(lower < z + w <= upper).
struct IntervalChannelQuery {
  double p_hat;
  Interval cell;
  double tau_p;
  double sigma;
};

// Posterior of x under the Bernoulli-Gaussian prior and N(r; x, tau_r).
struct BgPriorQuery {
  double r;
  double tau_r;
  PriorSpec prior;
};

using Query = std::variant<GaussianChannelQuery, IntervalChannelQuery, BgPriorQuery>;

struct PosteriorMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Adaptive Gauss-Kronrod quadrature of the unnormalized posterior in 113-bit
// floating point. The window is +-40 standard deviations of the prior factor
// around the posterior mode (located by bisection on the log-posterior
// slope), which bounds the neglected mass by exp(-800) for log-concave
// factors. The Bernoulli-Gaussian case integrates the slab component and
// adds the point mass analytically. Throws OracleFailure when the error
// estimate misses the 1e-20 relative target.
PosteriorMoments posterior_moments(const Query& query);

// The same integrals mapped to (s_hat, tau_s) / (x_hat, tau_x). Offsets from
// p_hat are integrated directly, so tiny innovations carry full relative
// precision instead of being differences of O(1) numbers.
OutputMoments output_moments(const GaussianChannelQuery& query);
OutputMoments output_moments(const IntervalChannelQuery& query);
DenoiserMoments denoiser_moments(const BgPriorQuery& query);

}  // namespace guamp::oracle
