#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dps/pde_system.hpp"

namespace dps {

/// One eigenpair of the spatial operator A = a1 d/dz + a2 d2/dz2 + a3.
/// phi is normalized to unit L2 norm, sign fixed positive just inside the
/// left boundary.
struct EigenPair {
  double lambda = 0.0;
  ScalarFn phi;
  int index = 0;  // 1-based mode number
};

/// Slow/fast split of the spectrum with gap ratio
/// epsilon = |Re lambda_1| / |Re lambda_{m+1}|.
struct SpectrumPartition {
  std::vector<EigenPair> slow;
  std::vector<EigenPair> fast_head;  // retained fast modes (diagnostics)
  int m = 0;
  double epsilon = 0.0;
};

/// Analytic eigenpairs of the canonical rod: a1=0, a2=1, a3=-beta_u,
/// homogeneous Dirichlet on [0, pi].
///   lambda_j = -j^2 - beta_u,  phi_j(z) = sqrt(2/pi) sin(jz)
std::vector<EigenPair> dirichlet_eigenpairs(double beta_u, int count);

/// Same, but verifies that `sys` is the canonical rod first.
std::vector<EigenPair> dirichlet_eigenpairs(const PdeSystem& sys, int count);

/// Finite-difference eigensolve of the spatial operator with the system's
/// (homogeneous) boundary conditions. Eigenfunctions are returned as
/// piecewise-linear interpolants of the unit-L2-normalized grid vectors.
std::vector<EigenPair> numeric_eigenpairs(const PdeSystem& sys, int count, int grid_nodes = 401);

/// Modal coefficients (<profile, phi_1>, ..., <profile, phi_n>) by Simpson
/// quadrature on `g`.
Eigen::VectorXd project_onto_modes(const Grid& g, const Eigen::VectorXd& profile,
                                   const std::vector<EigenPair>& basis);
Eigen::VectorXd project_onto_modes(const Grid& g, const ScalarFn& profile,
                                   const std::vector<EigenPair>& basis);

/// Split `eigs` into the first m slow modes and the retained fast head.
/// Fails if Re lambda_{m+1} >= 0 or the gap ratio is not < 1.
SpectrumPartition spectral_gap(const std::vector<EigenPair>& eigs, int m);

}  // namespace dps
