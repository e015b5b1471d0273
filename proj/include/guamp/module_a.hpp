#pragma once

#include "guamp/beliefs.hpp"
#include "guamp/model.hpp"

namespace guamp {

// AMP over Q = diag(sigma) V^T (r x n) for the pseudo-linear model
// ext.mean = Q x + noise, noise ~ N(0, diag(ext.var)).
struct ModuleAState {
  Vector x_hat;  // n
  Vector tau_x;  // n
  Vector s_hat;  // r
  Vector tau_s;  // r
  Vector p_hat;  // r
  Vector tau_p;  // r
  Vector r_hat;  // n
  Vector tau_r;  // n
};

// One sweep, starting from the output side:
//   s_hat = (ext.mean - p_hat) ./ (ext.var + tau_p),  tau_s = 1 ./ (ext.var + tau_p)
//   tau_r = 1 ./ (|Q|^2)^T tau_s,  r_hat = x_hat + tau_r .* Q^T s_hat
//   (x_hat, tau_x) = bg_denoiser(r_hat, tau_r)
//   tau_p = |Q|^2 tau_x,  p_hat = Q x_hat - tau_p .* s_hat
// Every variance is clamped to the variance window.
ModuleAState module_a_step(const ModuleAState& state, const GaussianBeliefs& ext_in,
                           const PriorSpec& prior, const MixingMatrix& Q);

// (p_hat, tau_p), clamped.
GaussianBeliefs extrinsic_a_to_b(const ModuleAState& state);

// x_hat = 0, tau_x = prior variance, s_hat = p_hat = 0, tau_p = |Q|^2 tau_x.
// r_hat, tau_r and tau_s are left empty until the first sweep.
ModuleAState module_a_init(const PriorSpec& prior, const MixingMatrix& Q);

}  // namespace guamp
