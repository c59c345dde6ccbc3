#pragma once

#include <Eigen/Dense>

namespace adann {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

} // namespace adann
