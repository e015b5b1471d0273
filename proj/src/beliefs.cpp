#include "guamp/beliefs.hpp"

namespace guamp {

Vector clamp_variance(Vector v) {
  for (Index i = 0; i < v.size(); ++i) {
    double& x = v(i);
    if (x < kVarianceFloor) {
      x = kVarianceFloor;
    } else if (x > kVarianceCeiling) {
      x = kVarianceCeiling;
    }
  }
  return v;
}

MixingMatrix::MixingMatrix(Matrix value)
    : value_(std::move(value)), squared_(value_.cwiseAbs2()) {}

}  // namespace guamp
