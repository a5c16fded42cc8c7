#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "dps/pde_system.hpp"
#include "dps/source_model.hpp"

namespace dps {

/// Point thermocouples strictly inside the domain, strictly increasing.
struct SensorArray {
  std::vector<double> positions;

  void validate(double alpha1, double alpha2) const;
  std::vector<SensorShape> shapes() const;
};

/// Interior-uniform placement z_i = alpha1 + i (alpha2-alpha1)/(n_y+1);
/// boundaries are excluded (Dirichlet ends read identically zero).
SensorArray place_sensors_uniform(int n_y, double alpha1, double alpha2);

struct SimulationResult {
  SpatioTemporalField x;
  Eigen::MatrixXd y;  // one row per time stamp, one column per sensor
  SpatioTemporalField f_true;
  double dt = 0.0;
  std::string scheme;
};

using InputFn = std::function<Eigen::VectorXd(double)>;

/// Crank-Nicolson march of the full PDE with the injected source.
/// Dirichlet values are imposed exactly each step; Robin ends are kept as
/// unknowns with second-order ghost elimination. Outputs are sampled through
/// the system's sensor shapes.
SimulationResult simulate_forward(const PdeSystem& sys, const SourceModel& source,
                                  const InputFn& u, double horizon, double dt, int n_nodes);

/// k_y-scaled point samples of a field at the sensor positions (linear
/// interpolation), one row per time stamp.
Eigen::MatrixXd sample_outputs(const SpatioTemporalField& x, const SensorArray& sensors,
                               double k_y);

}  // namespace dps
