#include "guamp/denoiser.hpp"

#include <cmath>

#include "guamp/errors.hpp"

namespace guamp {

namespace {

double logistic(double t) {
  return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
}

}  // namespace

DenoiserMoments bg_denoiser(double r, double tau_r, const PriorSpec& prior) {
  if (!(tau_r > 0.0)) {
    throw InvalidParameter("bg_denoiser needs tau_r > 0");
  }
  const double v0 = prior.slab_var;
  const double total = v0 + tau_r;
  const double slab_mean = r * v0 / total;
  const double slab_var = v0 * tau_r / total;

  double responsibility = 1.0;
  double complement = 0.0;
  if (prior.lambda < 1.0) {
    // log[(1-lambda) N(r;0,tau_r)] - log[lambda N(r;0,v0+tau_r)]
    const double log_ratio = std::log1p(-prior.lambda) - std::log(prior.lambda) +
                             0.5 * std::log1p(v0 / tau_r) -
                             0.5 * r * r * v0 / (tau_r * total);
    responsibility = logistic(-log_ratio);
    complement = logistic(log_ratio);
  }

  const double x_hat = responsibility * slab_mean;
  // pi (m1^2 + v1) - (pi m1)^2 rearranged into nonnegative terms.
  const double tau_x = responsibility * complement * slab_mean * slab_mean +
                       responsibility * slab_var;
  return {x_hat, tau_x};
}

}  // namespace guamp
