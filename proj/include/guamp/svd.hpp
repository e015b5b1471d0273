#pragma once

#include "guamp/types.hpp"

namespace guamp {

// Economy SVD A = U diag(sigma) V^T truncated to the numerical rank r,
// together with Q = diag(sigma) V^T, the mixing matrix of the rotated model.
struct SvdFactors {
  Matrix U;      // m x r, orthonormal columns
  Vector sigma;  // r, descending, > rank tolerance
  Matrix V;      // n x r, orthonormal columns
  Index rank = 0;
  Matrix Q;      // r x n
};

// r counts singular values above max(m, n) * eps * sigma_max.
SvdFactors economy_svd(const Matrix& A);

}  // namespace guamp
