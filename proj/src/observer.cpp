#include "dps/observer.hpp"

#include <stdexcept>
#include <string>

#include "dps/kernels.hpp"

namespace dps {

void GainSet::validate(int m, int n_y) const {
  if (L.rows() != m || L.cols() != n_y) throw std::invalid_argument("gains: L must be m x n_y");
  if (F.rows() != m || F.cols() != n_y) throw std::invalid_argument("gains: F must be m x n_y");
  if (Gamma.rows() != m || Gamma.cols() != m)
    throw std::invalid_argument("gains: Gamma must be m x m");
  if ((Gamma - Gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("gains: Gamma must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Gamma);
  if (es.eigenvalues().minCoeff() < -1e-12)
    throw std::invalid_argument("gains: Gamma must be positive semidefinite");
  if (!(sigma > 0.0)) throw std::invalid_argument("gains: sigma must be > 0");
}

Eigen::VectorXd source_estimate_pi(const Eigen::VectorXd& ey_now,
                                   const Eigen::VectorXd& ey_integral, const GainSet& gains) {
  if (ey_now.size() != gains.F.cols() || ey_integral.size() != gains.F.cols())
    throw std::invalid_argument("source_estimate_pi: output-error dimension mismatch");
  return -gains.Gamma * (gains.F * (ey_now + gains.sigma * ey_integral));
}

ObserverState observer_step(const ObserverState& state, const Eigen::VectorXd& y_now,
                            const Eigen::VectorXd& y_next, const Eigen::VectorXd& u,
                            const ReducedSystem& red, const GainSet& gains, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("observer_step: dt must be > 0");
  const Eigen::VectorXd bu = red.B_us * u;
  const Eigen::VectorXd e0 = red.C_s * state.x_hat - y_now;

  auto rhs = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& ey,
                 const Eigen::VectorXd& integ) {
    return (red.A_s * x + bu + source_estimate_pi(ey, integ, gains) - gains.L * ey).eval();
  };
  // stage integral: trapezoid from t to the stage time
  auto stage_integral = [&](double tau, const Eigen::VectorXd& ey) {
    return (state.ey_integral + 0.5 * tau * (e0 + ey)).eval();
  };

  const Eigen::VectorXd y_mid = 0.5 * (y_now + y_next);
  const Eigen::VectorXd k1 = rhs(state.x_hat, e0, state.ey_integral);

  const Eigen::VectorXd x2 = state.x_hat + 0.5 * dt * k1;
  const Eigen::VectorXd e2 = red.C_s * x2 - y_mid;
  const Eigen::VectorXd k2 = rhs(x2, e2, stage_integral(0.5 * dt, e2));

  const Eigen::VectorXd x3 = state.x_hat + 0.5 * dt * k2;
  const Eigen::VectorXd e3 = red.C_s * x3 - y_mid;
  const Eigen::VectorXd k3 = rhs(x3, e3, stage_integral(0.5 * dt, e3));

  const Eigen::VectorXd x4 = state.x_hat + dt * k3;
  const Eigen::VectorXd e4 = red.C_s * x4 - y_next;
  const Eigen::VectorXd k4 = rhs(x4, e4, stage_integral(dt, e4));

  ObserverState next;
  next.x_hat = state.x_hat + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  next.ey_integral = stage_integral(dt, red.C_s * next.x_hat - y_next);
  next.t = state.t + dt;
  if (!next.x_hat.allFinite() || next.x_hat.norm() > 1e6)
    throw std::runtime_error("observer diverged at t = " + std::to_string(next.t));
  return next;
}

ObserverTrajectory run_identification(const Eigen::MatrixXd& y_series,
                                      const Eigen::MatrixXd& u_series, const ReducedSystem& red,
                                      const GainSet& gains, double dt,
                                      const Eigen::VectorXd& x_hat0) {
  gains.validate(red.m, red.n_y());
  if (y_series.cols() != red.n_y())
    throw std::invalid_argument("run_identification: measurement width != n_y");
  if (u_series.rows() != y_series.rows() || u_series.cols() != red.n_u())
    throw std::invalid_argument("run_identification: input record not aligned with outputs");
  if (x_hat0.size() != red.m)
    throw std::invalid_argument("run_identification: x_hat0 dimension mismatch");

  const Eigen::Index nt = y_series.rows();
  ObserverTrajectory traj;
  traj.t_grid.resize(static_cast<size_t>(nt));
  traj.x_hat.resize(nt, red.m);
  traj.y_hat.resize(nt, red.n_y());
  traj.e_y.resize(nt, red.n_y());
  traj.f_hat_s.resize(nt, red.m);

  ObserverState st{x_hat0, Eigen::VectorXd::Zero(red.n_y()), 0.0};
  for (Eigen::Index k = 0; k < nt; ++k) {
    traj.t_grid[static_cast<size_t>(k)] = st.t;
    traj.x_hat.row(k) = st.x_hat.transpose();
    const Eigen::VectorXd yh = red.C_s * st.x_hat;
    traj.y_hat.row(k) = yh.transpose();
    const Eigen::VectorXd ey = yh - y_series.row(k).transpose();
    traj.e_y.row(k) = ey.transpose();
    traj.f_hat_s.row(k) = source_estimate_pi(ey, st.ey_integral, gains).transpose();
    if (k + 1 < nt)
      st = observer_step(st, y_series.row(k).transpose(), y_series.row(k + 1).transpose(),
                         u_series.row(k).transpose(), red, gains, dt);
  }
  return traj;
}

SpatioTemporalField synthesize_source(const ObserverTrajectory& traj,
                                      const std::vector<EigenPair>& phi_s,
                                      const std::vector<double>& z_grid) {
  if (traj.f_hat_s.cols() != static_cast<Eigen::Index>(phi_s.size()))
    throw std::invalid_argument("synthesize_source: basis size != estimate width");
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(phi_s.size()),
                      static_cast<Eigen::Index>(z_grid.size()));
  for (size_t j = 0; j < phi_s.size(); ++j)
    for (size_t i = 0; i < z_grid.size(); ++i)
      phi(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = phi_s[j].phi(z_grid[i]);

  SpatioTemporalField f;
  f.z_grid = z_grid;
  f.t_grid = traj.t_grid;
  f.values = kernels::synthesize_field(traj.f_hat_s, phi);
  return f;
}

}  // namespace dps
