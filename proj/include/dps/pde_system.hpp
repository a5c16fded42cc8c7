#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "dps/grid.hpp"

namespace dps {

/// Robin boundary data c*x + d*x' = r at each end of the domain.
struct BoundaryConditions {
  double c1 = 1.0, d1 = 0.0, r1 = 0.0;  // left
  double c2 = 1.0, d2 = 0.0, r2 = 0.0;  // right

  bool left_dirichlet() const { return d1 == 0.0; }
  bool right_dirichlet() const { return d2 == 0.0; }
  bool homogeneous() const { return r1 == 0.0 && r2 == 0.0; }
};

/// A measurement shape: either a point (Dirac) sensor or a distributed weight.
/// Point sensors evaluate profiles by linear interpolation instead of
/// integrating a discretized delta.
struct SensorShape {
  enum class Kind { point, distributed };
  Kind kind = Kind::point;
  double position = 0.0;
  ScalarFn weight;  // distributed only

  static SensorShape at(double z) { return {Kind::point, z, nullptr}; }
  static SensorShape spread(ScalarFn w) { return {Kind::distributed, 0.0, std::move(w)}; }

  /// Apply the sensor to a sampled profile (already scaled by the output gain).
  double apply(const Grid& g, const Eigen::VectorXd& profile) const;
  /// Apply the sensor to a callable profile.
  double apply(double lo, double hi, const ScalarFn& profile) const;
};

/// The 1-D linear parabolic plant
///   x_t = a1 x_z + a2 x_zz + a3 x + k_u b_u^T(z) u(t) + f(z,t)
///   y(t) = integral c(z) k_y x(z,t) dz
/// on [alpha1, alpha2] with Robin boundary conditions.
struct PdeSystem {
  double a1 = 0.0;  // advection
  double a2 = 1.0;  // diffusion (> 0)
  double a3 = 0.0;  // reaction
  double k_u = 1.0;
  double k_y = 1.0;
  std::vector<ScalarFn> b_u;       // actuator shapes, one per input
  std::vector<SensorShape> c;      // sensor shapes, one per output
  double alpha1 = 0.0;
  double alpha2 = 1.0;
  BoundaryConditions bc;
  ScalarFn x0;                     // initial profile

  int n_u() const { return static_cast<int>(b_u.size()); }
  int n_y() const { return static_cast<int>(c.size()); }
};

/// Returns `sys` unchanged iff every type invariant holds; otherwise throws
/// std::invalid_argument naming the first violated invariant.
const PdeSystem& validate_system(const PdeSystem& sys);

/// x(z,t) or f(z,t) sampled on a space-time grid; one row per time stamp.
struct SpatioTemporalField {
  std::vector<double> z_grid;
  std::vector<double> t_grid;
  Eigen::MatrixXd values;  // t_grid.size() x z_grid.size()

  void validate(double alpha1, double alpha2) const;
  Grid space_grid() const;
};

}  // namespace dps
