#pragma once
#include <Eigen/Dense>

namespace proxemb {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

} // namespace proxemb
