#pragma once

#include "guamp/model.hpp"

namespace guamp {

// Output of the GAMP output nonlinearity for one measurement:
// s_hat = (E[z|.] - p_hat) / tau_p and tau_s = (tau_p - Var[z|.]) / tau_p^2,
// with the posterior taken w.r.t. N(z; p_hat, tau_p) p(y|z).
struct OutputMoments {
  double s_hat = 0.0;
  double tau_s = 0.0;
};

// y = z + w, w ~ N(0, sigma2).
OutputMoments gout_gaussian(double p_hat, double y, double tau_p, double sigma2);

// p(y|z) = P(lower < z + w <= upper), w ~ N(0, sigma^2).
//
// With v = z + w ~ N(p_hat, tau_p + sigma^2) and E[z|v] linear in v, the
// moments reduce to those of a standard normal truncated to the standardized
// cell; see normal::truncated_moments for the tail handling. Cells that sit
// many standard deviations away from p_hat stay finite (the Mills-ratio
// continued fraction takes over at normal::kMillsCrossover).
OutputMoments gout_interval(double p_hat, Interval cell, double tau_p, double sigma);

// Dispatch on the channel kind; y is the stored observation.
OutputMoments gout(const ChannelSpec& channel, double p_hat, double y, double tau_p);

}  // namespace guamp
