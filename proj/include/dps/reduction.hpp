#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dps/pde_system.hpp"
#include "dps/source_model.hpp"
#include "dps/spectral.hpp"

namespace dps {

/// The m-mode slow subsystem obtained by Galerkin truncation:
///   x_s' = A_s x_s + B_us u + f_s(t),   y_s = C_s x_s
struct ReducedSystem {
  Eigen::MatrixXd A_s;   // m x m, diag(lambda_1..lambda_m)
  Eigen::MatrixXd B_us;  // m x n_u
  Eigen::MatrixXd C_s;   // n_y x m
  std::vector<EigenPair> phi_s;
  int m = 0;

  int n_y() const { return static_cast<int>(C_s.rows()); }
  int n_u() const { return static_cast<int>(B_us.cols()); }
};

/// Builds (A_s, B_us, C_s) on the slow modes of `partition` and verifies
/// observability of (A_s, C_s) and full column rank of C_s.
/// Point sensors evaluate eigenfunctions directly; distributed sensors are
/// integrated on `quad`.
ReducedSystem build_slow_subsystem(const PdeSystem& sys, const SpectrumPartition& partition,
                                   const Grid& quad);

/// Modal coefficients of the source over time: f_s (slow) and the retained
/// fast head, one row per time stamp.
struct ModalSourceSignal {
  std::vector<double> t_grid;
  Eigen::MatrixXd f_s;
  Eigen::MatrixXd f_f_head;
};

/// Projects a source model onto the partition per time stamp. Window sources
/// are integrated segment-wise (exact across the jump), modal sources reuse
/// their shape projections.
ModalSourceSignal modal_source_coefficients(const SourceModel& source,
                                            const SpectrumPartition& partition, const Grid& quad,
                                            const std::vector<double>& t_grid);

/// Same for an already-sampled field.
ModalSourceSignal modal_source_coefficients(const SpatioTemporalField& field,
                                            const SpectrumPartition& partition);

/// Numerical rank via singular values (threshold rel * sigma_max).
int numeric_rank(const Eigen::MatrixXd& a, double rel = 1e-8);

}  // namespace dps
