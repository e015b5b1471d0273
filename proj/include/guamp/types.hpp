#pragma once

#include <Eigen/Dense>

namespace guamp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace guamp
