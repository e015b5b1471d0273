#pragma once

#include "guamp/model.hpp"

namespace guamp {

struct DenoiserMoments {
  double x_hat = 0.0;
  double tau_x = 0.0;
};

// Posterior mean and variance of x under the Bernoulli-Gaussian prior and the
// pseudo-likelihood N(r; x, tau_r). The slab responsibility is evaluated as a
// logistic of the log-evidence ratio, so it neither underflows nor overflows
// for |r| far beyond the slab scale.
DenoiserMoments bg_denoiser(double r, double tau_r, const PriorSpec& prior);

}  // namespace guamp
