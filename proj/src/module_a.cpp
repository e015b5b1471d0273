#include "guamp/module_a.hpp"

#include "guamp/denoiser.hpp"
#include "guamp/errors.hpp"

namespace guamp {

ModuleAState module_a_step(const ModuleAState& state, const GaussianBeliefs& ext_in,
                           const PriorSpec& prior, const MixingMatrix& Q) {
  const Index r = Q.rows();
  const Index n = Q.cols();
  if (state.x_hat.size() != n || state.p_hat.size() != r || state.tau_p.size() != r ||
      ext_in.size() != r || ext_in.var.size() != r) {
    throw InvalidParameter("module_a_step: dimension mismatch");
  }

  ModuleAState next;
  const Vector denom = ext_in.var + state.tau_p;
  next.s_hat = (ext_in.mean - state.p_hat).cwiseQuotient(denom);
  next.tau_s = clamp_variance(denom.cwiseInverse());

  next.tau_r = clamp_variance((Q.squared().transpose() * next.tau_s).cwiseInverse());
  next.r_hat = state.x_hat + next.tau_r.cwiseProduct(Q.value().transpose() * next.s_hat);

  next.x_hat.resize(n);
  next.tau_x.resize(n);
  for (Index j = 0; j < n; ++j) {
    const DenoiserMoments d = bg_denoiser(next.r_hat(j), next.tau_r(j), prior);
    next.x_hat(j) = d.x_hat;
    next.tau_x(j) = d.tau_x;
  }
  next.tau_x = clamp_variance(std::move(next.tau_x));

  next.tau_p = clamp_variance(Q.squared() * next.tau_x);
  next.p_hat = Q.value() * next.x_hat - next.tau_p.cwiseProduct(next.s_hat);
  return next;
}

GaussianBeliefs extrinsic_a_to_b(const ModuleAState& state) {
  return {state.p_hat, clamp_variance(state.tau_p)};
}

ModuleAState module_a_init(const PriorSpec& prior, const MixingMatrix& Q) {
  ModuleAState s;
  s.x_hat = Vector::Zero(Q.cols());
  s.tau_x = clamp_variance(Vector::Constant(Q.cols(), prior.variance()));
  s.s_hat = Vector::Zero(Q.rows());
  s.p_hat = Vector::Zero(Q.rows());
  s.tau_p = clamp_variance(Q.squared() * s.tau_x);
  return s;
}

}  // namespace guamp
