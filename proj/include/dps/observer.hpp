#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dps/reduction.hpp"

namespace dps {

/// Gains of the adaptive observer and of the PI source-estimation law:
///   x_hat' = A_s x_hat + B_us u + f_hat_s - L (y_hat - y)
///   f_hat_s = -Gamma F (e_y + sigma * integral e_y)
struct GainSet {
  Eigen::MatrixXd L;      // m x n_y
  Eigen::MatrixXd F;      // m x n_y
  Eigen::MatrixXd Gamma;  // m x m, symmetric positive semidefinite
  double sigma = 1.0;

  void validate(int m, int n_y) const;
};

struct ObserverState {
  Eigen::VectorXd x_hat;
  Eigen::VectorXd ey_integral;
  double t = 0.0;
};

struct ObserverTrajectory {
  std::vector<double> t_grid;
  Eigen::MatrixXd x_hat;    // T x m
  Eigen::MatrixXd y_hat;    // T x n_y
  Eigen::MatrixXd e_y;      // T x n_y   (y_hat - y)
  Eigen::MatrixXd f_hat_s;  // T x m
};

/// Derivative-free PI estimate f_hat_s = -Gamma F (e_y + sigma * integral).
Eigen::VectorXd source_estimate_pi(const Eigen::VectorXd& ey_now,
                                   const Eigen::VectorXd& ey_integral, const GainSet& gains);

/// One RK4 step over [t, t+dt]. The measurement is interpolated linearly
/// between the step endpoints; the e_y integral advances trapezoidally (the
/// stage estimates use the partial trapezoid up to the stage time).
ObserverState observer_step(const ObserverState& state, const Eigen::VectorXd& y_now,
                            const Eigen::VectorXd& y_next, const Eigen::VectorXd& u,
                            const ReducedSystem& red, const GainSet& gains, double dt);

/// Runs the observer over an aligned measurement record; series are recorded
/// at every sample.
ObserverTrajectory run_identification(const Eigen::MatrixXd& y_series,
                                      const Eigen::MatrixXd& u_series, const ReducedSystem& red,
                                      const GainSet& gains, double dt,
                                      const Eigen::VectorXd& x_hat0);

/// Time/space synthesis f_hat(z,t) = phi_s^T(z) f_hat_s(t).
SpatioTemporalField synthesize_source(const ObserverTrajectory& traj,
                                      const std::vector<EigenPair>& phi_s,
                                      const std::vector<double>& z_grid);

}  // namespace dps
