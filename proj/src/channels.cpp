#include "guamp/channels.hpp"

#include <cmath>
#include <limits>

#include "guamp/errors.hpp"
#include "guamp/normal.hpp"

namespace guamp {

OutputMoments gout_gaussian(double p_hat, double y, double tau_p, double sigma2) {
  if (!(tau_p > 0.0) || !(sigma2 > 0.0)) {
    throw InvalidParameter("gout_gaussian needs tau_p > 0 and sigma2 > 0");
  }
  const double total = tau_p + sigma2;
  return {(y - p_hat) / total, 1.0 / total};
}

OutputMoments gout_interval(double p_hat, Interval cell, double tau_p, double sigma) {
  if (!(tau_p > 0.0) || !(sigma > 0.0)) {
    throw InvalidParameter("gout_interval needs tau_p > 0 and sigma > 0");
  }
  if (!(cell.lower < cell.upper)) {
    throw InvalidParameter("gout_interval needs lower < upper");
  }
  const double scale = std::sqrt(tau_p + sigma * sigma);
  const double a = (cell.lower - p_hat) / scale;
  const double b = (cell.upper - p_hat) / scale;
  if (std::isnan(a) || std::isnan(b)) {
    return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  }
  if (!(a < b)) {
    // A finite cell so far from p_hat that its standardized ends coincide:
    // the truncated law is a point mass there.
    return {a / scale, 1.0 / (scale * scale)};
  }
  const auto t = normal::truncated_moments(a, b);
  return {t.mean / scale, t.deficit / (scale * scale)};
}

OutputMoments gout(const ChannelSpec& channel, double p_hat, double y, double tau_p) {
  if (channel.kind == ChannelKind::gaussian) {
    return gout_gaussian(p_hat, y, tau_p, channel.noise_std * channel.noise_std);
  }
  return gout_interval(p_hat, channel.cell(y), tau_p, channel.noise_std);
}

}  // namespace guamp
