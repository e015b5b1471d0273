#include "guamp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "guamp/errors.hpp"

namespace guamp {

namespace {

void require_reference(const Vector& z, const Vector& z_hat) {
  if (z.size() != z_hat.size()) throw InvalidParameter("metric: size mismatch");
  if (z.size() == 0 || z.cwiseAbs().maxCoeff() == 0.0) {
    throw DegenerateInput("metric: reference vector is zero");
  }
}

}  // namespace

double nmse(const Vector& z, const Vector& z_hat) {
  require_reference(z, z_hat);
  return (z - z_hat).squaredNorm() / z.squaredNorm();
}

double dnmse(const Vector& z, const Vector& z_hat) {
  require_reference(z, z_hat);
  if (!z_hat.allFinite()) return std::numeric_limits<double>::infinity();
  const double scale_hat = z_hat.cwiseAbs().maxCoeff();
  if (scale_hat == 0.0) return 1.0;
  const Vector a = z / z.cwiseAbs().maxCoeff();
  const Vector b = z_hat / scale_hat;
  const double cross = a.dot(b);
  const double value = 1.0 - cross * cross / (a.squaredNorm() * b.squaredNorm());
  return std::max(value, 0.0);
}

double to_db(double value) {
  if (!std::isfinite(value)) return std::numeric_limits<double>::infinity();
  if (value <= 1e-30) return kDbFloor;
  return 10.0 * std::log10(value);
}

}  // namespace guamp
