#pragma once

#include <Eigen/Dense>

namespace dps::kernels {

// Data-parallel field kernels. The OpenMP variants parallelize over time
// rows; every output element is computed independently with the same
// summation order as the serial reference, so results are bit-identical
// for any thread count.

namespace serial {

/// values(t, z) = sum_j coeffs(t, j) * phi(j, z)
Eigen::MatrixXd synthesize_field(const Eigen::MatrixXd& coeffs, const Eigen::MatrixXd& phi);

/// I(t) = sum_z w(z) * values(t, z)^2
Eigen::VectorXd row_square_integrals(const Eigen::MatrixXd& values, const Eigen::VectorXd& w);

/// coeffs(t, j) = sum_z w(z) * values(t, z) * phi(j, z)
Eigen::MatrixXd project_rows(const Eigen::MatrixXd& values, const Eigen::MatrixXd& phi,
                             const Eigen::VectorXd& w);

}  // namespace serial

Eigen::MatrixXd synthesize_field(const Eigen::MatrixXd& coeffs, const Eigen::MatrixXd& phi);
Eigen::VectorXd row_square_integrals(const Eigen::MatrixXd& values, const Eigen::VectorXd& w);
Eigen::MatrixXd project_rows(const Eigen::MatrixXd& values, const Eigen::MatrixXd& phi,
                             const Eigen::VectorXd& w);

}  // namespace dps::kernels
