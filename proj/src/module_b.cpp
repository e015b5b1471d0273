#include "guamp/module_b.hpp"

#include "guamp/channels.hpp"
#include "guamp/errors.hpp"

namespace guamp {

ModuleBState module_b_step(const ModuleBState& state, const GaussianBeliefs& ext_in,
                           const Vector& y, const ChannelSpec& channel,
                           const MixingMatrix& U) {
  const Index m = U.rows();
  const Index r = U.cols();
  if (state.b_hat.size() != r || state.tau_b.size() != r || state.s_hat.size() != m ||
      ext_in.size() != r || ext_in.var.size() != r || y.size() != m) {
    throw InvalidParameter("module_b_step: dimension mismatch");
  }

  ModuleBState next;
  next.tau_p = clamp_variance(U.squared() * state.tau_b);
  next.p_hat = U.value() * state.b_hat - next.tau_p.cwiseProduct(state.s_hat);

  next.s_hat.resize(m);
  Vector tau_s(m);
  for (Index i = 0; i < m; ++i) {
    const OutputMoments g = gout(channel, next.p_hat(i), y(i), next.tau_p(i));
    next.s_hat(i) = g.s_hat;
    tau_s(i) = g.tau_s;
  }

  next.tau_r = clamp_variance((U.squared().transpose() * tau_s).cwiseInverse());
  next.r_hat = state.b_hat + next.tau_r.cwiseProduct(U.value().transpose() * next.s_hat);

  const Vector& v = ext_in.var;
  const Vector denom = next.tau_r + v;
  next.b_hat = (next.r_hat.cwiseProduct(v) + ext_in.mean.cwiseProduct(next.tau_r))
                   .cwiseQuotient(denom);
  next.tau_b = clamp_variance(v.cwiseProduct(next.tau_r).cwiseQuotient(denom));
  return next;
}

GaussianBeliefs extrinsic_b_to_a(const ModuleBState& state) {
  return {state.r_hat, clamp_variance(state.tau_r)};
}

}  // namespace guamp
