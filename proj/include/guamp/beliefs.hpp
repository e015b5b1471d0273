#pragma once

#include "guamp/types.hpp"

namespace guamp {

// Every variance exchanged or stored by the iterations lives in this window.
inline constexpr double kVarianceFloor = 1e-13;
inline constexpr double kVarianceCeiling = 1e13;

// Clamps into [kVarianceFloor, kVarianceCeiling]; NaN entries are left as NaN
// so that divergence stays detectable.
Vector clamp_variance(Vector v);

// Diagonal Gaussian message N(mean, diag(var)).
struct GaussianBeliefs {
  Vector mean;
  Vector var;

  Index size() const { return mean.size(); }
  bool finite() const { return mean.allFinite() && var.allFinite(); }
};

// A mixing matrix together with its entrywise square, used by the variance
// recursions (|M|^2 tau).
class MixingMatrix {
 public:
  explicit MixingMatrix(Matrix value);

  const Matrix& value() const { return value_; }
  const Matrix& squared() const { return squared_; }
  Index rows() const { return value_.rows(); }
  Index cols() const { return value_.cols(); }

 private:
  Matrix value_;
  Matrix squared_;
};

}  // namespace guamp
