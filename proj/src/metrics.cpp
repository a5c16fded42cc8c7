#include "dps/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "dps/kernels.hpp"

namespace dps {

double rmse(const SpatioTemporalField& e_f) {
  if (e_f.values.size() == 0) throw std::invalid_argument("rmse: empty field");
  const Grid g = e_f.space_grid();
  const Eigen::VectorXd w = simpson_weights(g.nodes, g.step());
  const Eigen::VectorXd per_row = kernels::row_square_integrals(e_f.values, w);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < per_row.size(); ++k) sum += per_row[k];  // ordered
  return std::sqrt(sum / (static_cast<double>(per_row.size()) * (g.hi - g.lo)));
}

Eigen::VectorXd field_l2_series(const SpatioTemporalField& e_f) {
  const Grid g = e_f.space_grid();
  const Eigen::VectorXd w = simpson_weights(g.nodes, g.step());
  return kernels::row_square_integrals(e_f.values, w).cwiseSqrt();
}

double ideal_rmse(const std::vector<EigenPair>& phi_s, double z_a, double z_b,
                  const Eigen::VectorXd& f_t, double lo, double hi, int quad_nodes) {
  if (phi_s.empty()) throw std::invalid_argument("ideal_rmse: empty basis");
  if (!(lo <= z_a && z_a < z_b && z_b <= hi))
    throw std::invalid_argument("ideal_rmse: window must lie inside the domain");
  if (f_t.size() == 0) throw std::invalid_argument("ideal_rmse: empty time signal");

  const auto n = phi_s.size();
  Eigen::VectorXd c(static_cast<Eigen::Index>(n));
  for (size_t j = 0; j < n; ++j)
    c[static_cast<Eigen::Index>(j)] = integrate_fn(phi_s[j].phi, z_a, z_b, quad_nodes);

  auto residual = [&](double z, double window) {
    double s = -window;
    for (size_t j = 0; j < n; ++j) s += c[static_cast<Eigen::Index>(j)] * phi_s[j].phi(z);
    return s * s;
  };
  double r2 = 0.0;
  if (z_a > lo) r2 += integrate_fn([&](double z) { return residual(z, 0.0); }, lo, z_a,
                                   quad_nodes);
  r2 += integrate_fn([&](double z) { return residual(z, 1.0); }, z_a, z_b, quad_nodes);
  if (z_b < hi) r2 += integrate_fn([&](double z) { return residual(z, 0.0); }, z_b, hi,
                                   quad_nodes);

  const double time_mean = f_t.squaredNorm() / static_cast<double>(f_t.size());
  return std::sqrt(r2 * time_mean / (hi - lo));
}

double ideal_rmse(const std::vector<EigenPair>& phi_s, const SourceModel& source,
                  const std::vector<double>& t_grid, double lo, double hi, int quad_nodes) {
  if (source.kind != SourceModel::Kind::separable_window)
    throw std::invalid_argument("ideal_rmse: source model is not a separable window");
  Eigen::VectorXd ft(static_cast<Eigen::Index>(t_grid.size()));
  for (size_t k = 0; k < t_grid.size(); ++k)
    ft[static_cast<Eigen::Index>(k)] = source.window_value(t_grid[k]);
  return ideal_rmse(phi_s, source.z_a, source.z_b, ft, lo, hi, quad_nodes);
}

double peak_norm(const Eigen::MatrixXd& series) {
  double peak = 0.0;
  for (Eigen::Index k = 0; k < series.rows(); ++k)
    peak = std::max(peak, series.row(k).norm());
  return peak;
}

double derivative_peak(const Eigen::MatrixXd& series, double dt) {
  if (series.rows() < 2) return 0.0;
  double peak = 0.0;
  for (Eigen::Index k = 0; k + 1 < series.rows(); ++k)
    peak = std::max(peak, (series.row(k + 1) - series.row(k)).norm() / dt);
  return peak;
}

}  // namespace dps
