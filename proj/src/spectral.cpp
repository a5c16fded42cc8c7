#include "dps/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace dps {

std::vector<EigenPair> dirichlet_eigenpairs(double beta_u, int count) {
  if (count < 1) throw std::invalid_argument("dirichlet_eigenpairs: count must be >= 1");
  const double amp = std::sqrt(2.0 / std::numbers::pi);
  std::vector<EigenPair> out;
  out.reserve(count);
  for (int j = 1; j <= count; ++j) {
    out.push_back({-static_cast<double>(j) * j - beta_u,
                   [amp, j](double z) { return amp * std::sin(j * z); }, j});
  }
  return out;
}

std::vector<EigenPair> dirichlet_eigenpairs(const PdeSystem& sys, int count) {
  const bool canonical = sys.a1 == 0.0 && sys.a2 == 1.0 && std::abs(sys.alpha1) < 1e-12 &&
                         std::abs(sys.alpha2 - std::numbers::pi) < 1e-12 &&
                         sys.bc.left_dirichlet() && sys.bc.right_dirichlet() &&
                         sys.bc.homogeneous();
  if (!canonical)
    throw std::invalid_argument(
        "dirichlet_eigenpairs: system is not the canonical Dirichlet rod on [0, pi]");
  return dirichlet_eigenpairs(-sys.a3, count);
}

namespace {

// Tridiagonal discretization of a1 d/dz + a2 d2/dz2 + a3 over the unknown
// nodes. Dirichlet ends are excluded from the unknowns; a Robin end keeps
// its boundary node, eliminating the ghost value through the BC.
struct DiscreteOperator {
  Eigen::MatrixXd M;
  int first_node = 0;  // grid index of the first unknown
  int n_unknown = 0;
};

DiscreteOperator assemble_operator(const PdeSystem& sys, const Grid& g) {
  const double h = g.step();
  const double a1 = sys.a1, a2 = sys.a2, a3 = sys.a3;
  const double lower = a2 / (h * h) - a1 / (2 * h);
  const double upper = a2 / (h * h) + a1 / (2 * h);
  const double diag = -2.0 * a2 / (h * h) + a3;

  const int first = sys.bc.left_dirichlet() ? 1 : 0;
  const int last = sys.bc.right_dirichlet() ? g.nodes - 2 : g.nodes - 1;
  const int n = last - first + 1;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    M(i, i) = diag;
    if (i > 0) M(i, i - 1) = lower;
    if (i + 1 < n) M(i, i + 1) = upper;
  }
  if (!sys.bc.left_dirichlet()) {
    // ghost elimination: x_{-1} = x_1 + (2h c1/d1) x_0  (homogeneous r1)
    M(0, 0) = diag + lower * 2.0 * h * sys.bc.c1 / sys.bc.d1;
    M(0, 1) = lower + upper;
  }
  if (!sys.bc.right_dirichlet()) {
    M(n - 1, n - 1) = diag - upper * 2.0 * h * sys.bc.c2 / sys.bc.d2;
    M(n - 1, n - 2) = lower + upper;
  }
  return {std::move(M), first, n};
}

ScalarFn make_interpolant(const Grid& g, Eigen::VectorXd values) {
  auto data = std::make_shared<Eigen::VectorXd>(std::move(values));
  return [g, data](double z) { return interpolate(g, *data, z); };
}

}  // namespace

std::vector<EigenPair> numeric_eigenpairs(const PdeSystem& sys, int count, int grid_nodes) {
  validate_system(sys);
  if (!sys.bc.homogeneous())
    throw std::invalid_argument("numeric_eigenpairs: boundary conditions must be homogeneous");
  if (count < 1) throw std::invalid_argument("numeric_eigenpairs: count must be >= 1");
  if (count > grid_nodes / 4)
    throw std::invalid_argument("numeric_eigenpairs: count exceeds grid resolution (> nodes/4)");
  if (grid_nodes % 2 == 0) ++grid_nodes;

  const Grid g(sys.alpha1, sys.alpha2, grid_nodes);
  const auto op = assemble_operator(sys, g);

  Eigen::VectorXd lambdas;
  Eigen::MatrixXd vectors;
  const bool symmetric = (op.M - op.M.transpose()).cwiseAbs().maxCoeff() < 1e-12;
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.M);
    lambdas = es.eigenvalues();
    vectors = es.eigenvectors();
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(op.M);
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    if (es.eigenvalues().imag().cwiseAbs().maxCoeff() > 1e-8 * scale)
      throw std::runtime_error("numeric_eigenpairs: complex eigenvalues beyond tolerance");
    lambdas = es.eigenvalues().real();
    vectors = es.eigenvectors().real();
  }

  std::vector<int> order(op.n_unknown);
  for (int i = 0; i < op.n_unknown; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lambdas[a] > lambdas[b]; });

  std::vector<EigenPair> out;
  out.reserve(count);
  for (int j = 0; j < count; ++j) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(g.nodes);
    full.segment(op.first_node, op.n_unknown) = vectors.col(order[j]);
    if (full[1] < 0.0) full = -full;  // positive just inside the left boundary
    full /= l2_norm_profile(g, full);
    out.push_back({lambdas[order[j]], make_interpolant(g, std::move(full)), j + 1});
  }
  return out;
}

Eigen::VectorXd project_onto_modes(const Grid& g, const Eigen::VectorXd& profile,
                                   const std::vector<EigenPair>& basis) {
  Eigen::VectorXd coeffs(static_cast<Eigen::Index>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    coeffs[static_cast<Eigen::Index>(j)] = inner_product(g, profile, sample(g, basis[j].phi));
  return coeffs;
}

Eigen::VectorXd project_onto_modes(const Grid& g, const ScalarFn& profile,
                                   const std::vector<EigenPair>& basis) {
  return project_onto_modes(g, sample(g, profile), basis);
}

SpectrumPartition spectral_gap(const std::vector<EigenPair>& eigs, int m) {
  if (m < 1) throw std::invalid_argument("spectral_gap: m must be >= 1");
  if (static_cast<int>(eigs.size()) < m + 1)
    throw std::invalid_argument("spectral_gap: need at least m+1 eigenpairs");
  const double next = eigs[m].lambda;
  if (!(next < 0.0))
    throw std::invalid_argument("spectral_gap: fast spectrum not stable (Re lambda_{m+1} >= 0)");
  const double eps = std::abs(eigs.front().lambda) / std::abs(next);
  if (!(eps < 1.0))
    throw std::invalid_argument("spectral_gap: no slow/fast gap (epsilon >= 1)");
  SpectrumPartition part;
  part.slow.assign(eigs.begin(), eigs.begin() + m);
  part.fast_head.assign(eigs.begin() + m, eigs.end());
  part.m = m;
  part.epsilon = eps;
  return part;
}

}  // namespace dps
