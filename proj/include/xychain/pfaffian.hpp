#pragma once

#include <Eigen/Dense>

namespace xychain {

// Pfaffian of a real skew-symmetric matrix via Parlett-Reid elimination with
// partial pivoting. The argument is consumed as workspace.
double pfaffian(Eigen::MatrixXd& a);

} // namespace xychain
