#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace dps {

using ScalarFn = std::function<double(double)>;

/// Uniform grid of `nodes` points covering [lo, hi].
struct Grid {
  double lo = 0.0;
  double hi = 1.0;
  int nodes = 0;

  Grid() = default;
  Grid(double lo_, double hi_, int nodes_);

  double step() const { return (hi - lo) / (nodes - 1); }
  double point(int i) const { return lo + i * step(); }
  std::vector<double> points() const;

  // index of the cell containing z, clamped to [0, nodes-2]
  int cell(double z) const;
};

Eigen::VectorXd sample(const Grid& g, const ScalarFn& f);

/// Composite Simpson integral of nodal values on a uniform grid.
/// Requires an odd node count >= 3.
double simpson_integral(const Eigen::VectorXd& values, double step);

/// Simpson nodal weights (step/3 * {1,4,2,...,4,1}).
Eigen::VectorXd simpson_weights(int nodes, double step);

/// L2 inner product <f,g> of two sampled profiles on the same grid.
double inner_product(const Grid& g, const Eigen::VectorXd& f, const Eigen::VectorXd& v);

/// Inner product of two callables sampled on the grid.
double inner_product(const Grid& g, const ScalarFn& f, const ScalarFn& v);

double l2_norm_profile(const Grid& g, const Eigen::VectorXd& f);
double l2_norm_profile(const Grid& g, const ScalarFn& f);

/// Composite Simpson of a callable over [a, b] with at least `min_nodes`
/// points (count rounded up to odd). For integrands that are smooth on [a, b].
double integrate_fn(const ScalarFn& f, double a, double b, int min_nodes = 201);

/// Linear interpolation of sampled values at z (z inside [lo, hi]).
double interpolate(const Grid& g, const Eigen::VectorXd& values, double z);

}  // namespace dps
