#include "dps/kernels.hpp"

#include <stdexcept>

namespace dps::kernels {

namespace {

void check_synthesize(const Eigen::MatrixXd& coeffs, const Eigen::MatrixXd& phi) {
  if (coeffs.cols() != phi.rows())
    throw std::invalid_argument("synthesize_field: coefficient/basis size mismatch");
}

void check_project(const Eigen::MatrixXd& values, const Eigen::MatrixXd& phi,
                   const Eigen::VectorXd& w) {
  if (values.cols() != phi.rows() || values.cols() != w.size())
    throw std::invalid_argument("project_rows: basis/weight size mismatch");
}

inline double synth_at(const Eigen::MatrixXd& coeffs, const Eigen::MatrixXd& phi,
                       Eigen::Index t, Eigen::Index z) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < coeffs.cols(); ++j) s += coeffs(t, j) * phi(j, z);
  return s;
}

inline double row_sq(const Eigen::MatrixXd& values, const Eigen::VectorXd& w, Eigen::Index t) {
  double s = 0.0;
  for (Eigen::Index z = 0; z < values.cols(); ++z) s += w[z] * values(t, z) * values(t, z);
  return s;
}

inline double row_proj(const Eigen::MatrixXd& values, const Eigen::MatrixXd& phi,
                       const Eigen::VectorXd& w, Eigen::Index t, Eigen::Index j) {
  double s = 0.0;
  for (Eigen::Index z = 0; z < values.cols(); ++z) s += w[z] * values(t, z) * phi(z, j);
  return s;
}

}  // namespace

namespace serial {

Eigen::MatrixXd synthesize_field(const Eigen::MatrixXd& coeffs, const Eigen::MatrixXd& phi) {
  check_synthesize(coeffs, phi);
  Eigen::MatrixXd out(coeffs.rows(), phi.cols());
  for (Eigen::Index t = 0; t < out.rows(); ++t)
    for (Eigen::Index z = 0; z < out.cols(); ++z) out(t, z) = synth_at(coeffs, phi, t, z);
  return out;
}

Eigen::VectorXd row_square_integrals(const Eigen::MatrixXd& values, const Eigen::VectorXd& w) {
  if (values.cols() != w.size())
    throw std::invalid_argument("row_square_integrals: weight size mismatch");
  Eigen::VectorXd out(values.rows());
  for (Eigen::Index t = 0; t < values.rows(); ++t) out[t] = row_sq(values, w, t);
  return out;
}

Eigen::MatrixXd project_rows(const Eigen::MatrixXd& values, const Eigen::MatrixXd& phi,
                             const Eigen::VectorXd& w) {
  check_project(values, phi, w);
  Eigen::MatrixXd out(values.rows(), phi.cols());
  for (Eigen::Index t = 0; t < values.rows(); ++t)
    for (Eigen::Index j = 0; j < phi.cols(); ++j) out(t, j) = row_proj(values, phi, w, t, j);
  return out;
}

}  // namespace serial

Eigen::MatrixXd synthesize_field(const Eigen::MatrixXd& coeffs, const Eigen::MatrixXd& phi) {
  check_synthesize(coeffs, phi);
  Eigen::MatrixXd out(coeffs.rows(), phi.cols());
  const Eigen::Index nt = out.rows(), nz = out.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index t = 0; t < nt; ++t)
    for (Eigen::Index z = 0; z < nz; ++z) out(t, z) = synth_at(coeffs, phi, t, z);
  return out;
}

Eigen::VectorXd row_square_integrals(const Eigen::MatrixXd& values, const Eigen::VectorXd& w) {
  if (values.cols() != w.size())
    throw std::invalid_argument("row_square_integrals: weight size mismatch");
  Eigen::VectorXd out(values.rows());
  const Eigen::Index nt = values.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index t = 0; t < nt; ++t) out[t] = row_sq(values, w, t);
  return out;
}

Eigen::MatrixXd project_rows(const Eigen::MatrixXd& values, const Eigen::MatrixXd& phi,
                             const Eigen::VectorXd& w) {
  check_project(values, phi, w);
  Eigen::MatrixXd out(values.rows(), phi.cols());
  const Eigen::Index nt = values.rows(), m = phi.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index t = 0; t < nt; ++t)
    for (Eigen::Index j = 0; j < m; ++j) out(t, j) = row_proj(values, phi, w, t, j);
  return out;
}

}  // namespace dps::kernels
