#include "transcription.hpp"

#include <algorithm>

#include "guamp/channels.hpp"
#include "guamp/denoiser.hpp"

namespace transcription {

namespace {

double window(double v) { return std::clamp(v, 1e-13, 1e13); }

}  // namespace

BState module_b(const BState& in, const Vec& ext_mean, const Vec& ext_var, const Vec& y,
                const guamp::ChannelSpec& channel, const Mat& U) {
  const std::size_t m = U.size();
  const std::size_t r = U[0].size();
  BState out;
  out.tau_p.assign(m, 0.0);
  out.p_hat.assign(m, 0.0);
  out.s_hat.assign(m, 0.0);
  Vec tau_s(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double tp = 0.0;
    double ub = 0.0;
    for (std::size_t j = 0; j < r; ++j) {
      tp += U[i][j] * U[i][j] * in.tau_b[j];
      ub += U[i][j] * in.b_hat[j];
    }
    tp = window(tp);
    out.tau_p[i] = tp;
    out.p_hat[i] = ub - tp * in.s_hat[i];
    const guamp::OutputMoments g = guamp::gout(channel, out.p_hat[i], y[i], tp);
    out.s_hat[i] = g.s_hat;
    tau_s[i] = g.tau_s;
  }
  out.tau_r.assign(r, 0.0);
  out.r_hat.assign(r, 0.0);
  out.b_hat.assign(r, 0.0);
  out.tau_b.assign(r, 0.0);
  for (std::size_t j = 0; j < r; ++j) {
    double acc = 0.0;
    double uts = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      acc += U[i][j] * U[i][j] * tau_s[i];
      uts += U[i][j] * out.s_hat[i];
    }
    const double tr = window(1.0 / acc);
    out.tau_r[j] = tr;
    out.r_hat[j] = in.b_hat[j] + tr * uts;
    const double v = ext_var[j];
    out.b_hat[j] = (out.r_hat[j] * v + ext_mean[j] * tr) / (tr + v);
    out.tau_b[j] = window(v * tr / (tr + v));
  }
  return out;
}

AState module_a(const AState& in, const Vec& ext_mean, const Vec& ext_var,
                const guamp::PriorSpec& prior, const Mat& Q) {
  const std::size_t r = Q.size();
  const std::size_t n = Q[0].size();
  AState out;
  out.s_hat.assign(r, 0.0);
  out.tau_s.assign(r, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    out.s_hat[i] = (ext_mean[i] - in.p_hat[i]) / (ext_var[i] + in.tau_p[i]);
    out.tau_s[i] = window(1.0 / (ext_var[i] + in.tau_p[i]));
  }
  out.tau_r.assign(n, 0.0);
  out.r_hat.assign(n, 0.0);
  out.x_hat.assign(n, 0.0);
  out.tau_x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    double qts = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      acc += Q[i][j] * Q[i][j] * out.tau_s[i];
      qts += Q[i][j] * out.s_hat[i];
    }
    const double tr = window(1.0 / acc);
    out.tau_r[j] = tr;
    out.r_hat[j] = in.x_hat[j] + tr * qts;
    const guamp::DenoiserMoments d = guamp::bg_denoiser(out.r_hat[j], tr, prior);
    out.x_hat[j] = d.x_hat;
    out.tau_x[j] = window(d.tau_x);
  }
  out.tau_p.assign(r, 0.0);
  out.p_hat.assign(r, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    double tp = 0.0;
    double qx = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      tp += Q[i][j] * Q[i][j] * out.tau_x[j];
      qx += Q[i][j] * out.x_hat[j];
    }
    tp = window(tp);
    out.tau_p[i] = tp;
    out.p_hat[i] = qx - tp * out.s_hat[i];
  }
  return out;
}

}  // namespace transcription
