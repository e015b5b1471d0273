#include "guamp/svd.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "guamp/errors.hpp"

namespace guamp {

SvdFactors economy_svd(const Matrix& A) {
  if (A.size() == 0 || A.isZero(0.0)) {
    throw InvalidParameter("economy_svd needs a nonzero matrix");
  }
  if (!A.allFinite()) {
    throw NumericError("economy_svd: matrix has non-finite entries");
  }
  Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "SVD did not converge for " << A.rows() << "x" << A.cols()
        << " matrix (||A||_F = " << A.norm() << ", max |a_ij| = " << A.cwiseAbs().maxCoeff()
        << ")";
    throw NumericError(msg.str());
  }

  const Vector& values = svd.singularValues();
  const double tol = static_cast<double>(std::max(A.rows(), A.cols())) *
                     std::numeric_limits<double>::epsilon() * values(0);
  Index rank = 0;
  while (rank < values.size() && values(rank) > tol) {
    ++rank;
  }

  SvdFactors f;
  f.rank = rank;
  f.U = svd.matrixU().leftCols(rank);
  f.sigma = values.head(rank);
  f.V = svd.matrixV().leftCols(rank);
  f.Q = f.sigma.asDiagonal() * f.V.transpose();
  return f;
}

}  // namespace guamp
