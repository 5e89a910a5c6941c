#pragma once

#include <Eigen/Dense>

namespace symred {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

}  // namespace symred
