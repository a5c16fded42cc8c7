#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dps/grid.hpp"

namespace dps {

/// Abnormal source models:
///  - modal_step / modal_incipient: f(z,t) = sum_j shape_j(z) * a_j(t), where
///    a_j is a step to `amplitude` at t_on, or amplitude - exp(-rate (t-t_on)).
///  - separable_window: f(z,t) = f(t) * (H(z - z_a) - H(z - z_b)), with f(t)
///    a step to `amplitude` at t_on.
///  - zero: no source.
struct SourceModel {
  enum class Kind { zero, modal_step, modal_incipient, separable_window };

  struct Mode {
    ScalarFn shape;
    double t_on = 0.0;
    double amplitude = 0.0;
    double rate = 0.0;  // incipient only (1/s)
  };

  Kind kind = Kind::zero;
  std::vector<Mode> modes;          // modal kinds
  double z_a = 0.0, z_b = 0.0;      // window
  double t_on = 0.0, amplitude = 0.0;

  static SourceModel zero() { return {}; }
  static SourceModel modal_step(std::vector<Mode> modes);
  static SourceModel modal_incipient(std::vector<Mode> modes);
  static SourceModel window(double z_a, double z_b, double t_on, double amplitude);

  bool separable() const { return kind == Kind::separable_window || kind == Kind::zero; }

  /// Temporal coefficient of mode j (modal kinds) at time t.
  double mode_value(size_t j, double t) const;
  /// Temporal factor f(t) of the window kind.
  double window_value(double t) const;

  /// Exact mean of the mode-j / window time law over [t0, t1]. Keeps the
  /// injected onset mass independent of the step size when a jump falls
  /// inside an integration step.
  double mode_average(size_t j, double t0, double t1) const;
  double window_average(double t0, double t1) const;

  /// Validates onsets against the horizon and finiteness of amplitudes.
  void validate(double horizon) const;
};

/// f(.,t) sampled on the grid. Window indicators use the H(0)=1 convention
/// at the nodes.
Eigen::VectorXd eval_source(const SourceModel& model, const Grid& g, double t);

/// Whole space-time table of the source, one row per time stamp.
Eigen::MatrixXd eval_source_field(const SourceModel& model, const Grid& g,
                                  const std::vector<double>& t_grid);

/// Spatial profile of the source time-averaged over [t0, t1] (exact in t).
Eigen::VectorXd eval_source_average(const SourceModel& model, const Grid& g, double t0,
                                    double t1);

}  // namespace dps
