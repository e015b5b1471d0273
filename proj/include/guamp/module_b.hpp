#pragma once

#include "guamp/beliefs.hpp"
#include "guamp/model.hpp"

namespace guamp {

// GAMP over the orthonormal factor U (m x r), with the extrinsic message from
// module A acting as the prior on b.
struct ModuleBState {
  Vector b_hat;   // r
  Vector tau_b;   // r
  Vector s_hat;   // m
  Vector p_hat;   // m
  Vector tau_p;   // m
  Vector r_hat;   // r
  Vector tau_r;   // r
};

// One sweep:
//   tau_p = |U|^2 tau_b,      p_hat = U b_hat - tau_p .* s_hat_prev
//   (s_hat, tau_s) = gout(p_hat, y, tau_p)
//   tau_r = 1 ./ (|U|^2)^T tau_s,  r_hat = b_hat + tau_r .* U^T s_hat
//   b_hat, tau_b = N(r_hat, tau_r) x N(ext.mean, ext.var)
// tau_p, tau_r and tau_b are clamped to the variance window.
ModuleBState module_b_step(const ModuleBState& state, const GaussianBeliefs& ext_in,
                           const Vector& y, const ChannelSpec& channel,
                           const MixingMatrix& U);

// (r_hat, tau_r), clamped.
GaussianBeliefs extrinsic_b_to_a(const ModuleBState& state);

}  // namespace guamp
