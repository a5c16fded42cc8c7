#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "dps/pde_system.hpp"
#include "dps/source_model.hpp"
#include "dps/spectral.hpp"

namespace dps {

/// Space-time RMS of an error field:
///   RMSE^2 = (sum_t integral e(z,t)^2 dz) / (N_t * integral dz)
/// The spatial integral is composite Simpson on the field grid; the time sum
/// runs over every sample.
double rmse(const SpatioTemporalField& e_f);

/// Per-sample spatial L2 norms ||e(.,t)||_2.
Eigen::VectorXd field_l2_series(const SpatioTemporalField& e_f);

/// Projection-residual lower bound for a separable window source:
///   e(z) = sum_j <phi_j, 1_[za,zb]> phi_j(z) - 1_[za,zb](z)
///   Ideal RMSE = sqrt( ||e||_2^2 * mean_t f(t)^2 / (hi - lo) )
/// Integrals are split at the window edges so the jump costs no accuracy.
double ideal_rmse(const std::vector<EigenPair>& phi_s, double z_a, double z_b,
                  const Eigen::VectorXd& f_t, double lo, double hi, int quad_nodes = 801);

/// Convenience overload taking the source model; throws for non-separable
/// kinds.
double ideal_rmse(const std::vector<EigenPair>& phi_s, const SourceModel& source,
                  const std::vector<double>& t_grid, double lo, double hi,
                  int quad_nodes = 801);

struct MetricsReport {
  double rmse = 0.0;
  std::optional<double> ideal_rmse;
  Eigen::VectorXd ef_norm;            // ||e_f(.,t)||_2 per sample
  std::optional<double> settle_time;  // last time ||e_f|| exceeds the UUB band
  double settle_band = 0.5;
};

double peak_norm(const Eigen::MatrixXd& series);
double derivative_peak(const Eigen::MatrixXd& series, double dt);

}  // namespace dps
