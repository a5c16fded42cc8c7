#include "dps/reduction.hpp"

#include <algorithm>
#include <stdexcept>

#include "dps/kernels.hpp"

namespace dps {

int numeric_rank(const Eigen::MatrixXd& a, double rel) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] >= rel * s[0]) ++r;
  return r;
}

ReducedSystem build_slow_subsystem(const PdeSystem& sys, const SpectrumPartition& partition,
                                   const Grid& quad) {
  validate_system(sys);
  const int m = partition.m;
  ReducedSystem red;
  red.m = m;
  red.phi_s = partition.slow;
  red.A_s = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) red.A_s(i, i) = partition.slow[i].lambda;

  red.B_us = Eigen::MatrixXd(m, sys.n_u());
  for (int j = 0; j < sys.n_u(); ++j) {
    const ScalarFn& b = sys.b_u[j];
    red.B_us.col(j) =
        project_onto_modes(quad, [&](double z) { return sys.k_u * b(z); }, partition.slow);
  }

  red.C_s = Eigen::MatrixXd(sys.n_y(), m);
  for (int i = 0; i < sys.n_y(); ++i)
    for (int j = 0; j < m; ++j) {
      const ScalarFn& phi = partition.slow[j].phi;
      red.C_s(i, j) =
          sys.c[i].apply(sys.alpha1, sys.alpha2, [&](double z) { return sys.k_y * phi(z); });
    }

  if (numeric_rank(red.C_s) < m)
    throw std::invalid_argument("build_slow_subsystem: C_s is column-rank deficient");
  Eigen::MatrixXd obs(static_cast<Eigen::Index>(sys.n_y()) * m, m);
  Eigen::MatrixXd block = red.C_s;
  for (int i = 0; i < m; ++i) {
    obs.middleRows(static_cast<Eigen::Index>(i) * sys.n_y(), sys.n_y()) = block;
    block = block * red.A_s;
  }
  if (numeric_rank(obs) < m)
    throw std::invalid_argument("build_slow_subsystem: (A_s, C_s) not observable");
  return red;
}

namespace {

// Spatial projection of each source component onto the basis; window kinds
// integrate each smooth segment separately so the jump costs no accuracy.
Eigen::MatrixXd shape_projections(const SourceModel& source, const std::vector<EigenPair>& basis,
                                  const Grid& quad) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  switch (source.kind) {
    case SourceModel::Kind::zero:
      return Eigen::MatrixXd::Zero(n, 0);
    case SourceModel::Kind::modal_step:
    case SourceModel::Kind::modal_incipient: {
      Eigen::MatrixXd p(n, static_cast<Eigen::Index>(source.modes.size()));
      for (size_t j = 0; j < source.modes.size(); ++j)
        p.col(static_cast<Eigen::Index>(j)) =
            project_onto_modes(quad, source.modes[j].shape, basis);
      return p;
    }
    case SourceModel::Kind::separable_window: {
      Eigen::MatrixXd p(n, 1);
      const int seg_nodes = std::max(quad.nodes, 201);
      for (Eigen::Index i = 0; i < n; ++i)
        p(i, 0) = integrate_fn(basis[static_cast<size_t>(i)].phi, source.z_a, source.z_b,
                               seg_nodes);
      return p;
    }
  }
  throw std::invalid_argument("shape_projections: unknown source kind");
}

Eigen::VectorXd time_values(const SourceModel& source, double t) {
  switch (source.kind) {
    case SourceModel::Kind::zero:
      return Eigen::VectorXd(0);
    case SourceModel::Kind::modal_step:
    case SourceModel::Kind::modal_incipient: {
      Eigen::VectorXd v(static_cast<Eigen::Index>(source.modes.size()));
      for (size_t j = 0; j < source.modes.size(); ++j)
        v[static_cast<Eigen::Index>(j)] = source.mode_value(j, t);
      return v;
    }
    case SourceModel::Kind::separable_window: {
      Eigen::VectorXd v(1);
      v[0] = source.window_value(t);
      return v;
    }
  }
  throw std::invalid_argument("time_values: unknown source kind");
}

}  // namespace

ModalSourceSignal modal_source_coefficients(const SourceModel& source,
                                            const SpectrumPartition& partition, const Grid& quad,
                                            const std::vector<double>& t_grid) {
  const Eigen::MatrixXd ps = shape_projections(source, partition.slow, quad);
  const Eigen::MatrixXd pf = shape_projections(source, partition.fast_head, quad);
  const auto nt = static_cast<Eigen::Index>(t_grid.size());
  ModalSourceSignal sig;
  sig.t_grid = t_grid;
  sig.f_s.resize(nt, static_cast<Eigen::Index>(partition.slow.size()));
  sig.f_f_head.resize(nt, static_cast<Eigen::Index>(partition.fast_head.size()));
  for (Eigen::Index k = 0; k < nt; ++k) {
    const Eigen::VectorXd ft = time_values(source, t_grid[static_cast<size_t>(k)]);
    sig.f_s.row(k) = (ps * ft).transpose();
    sig.f_f_head.row(k) = (pf * ft).transpose();
  }
  return sig;
}

ModalSourceSignal modal_source_coefficients(const SpatioTemporalField& field,
                                            const SpectrumPartition& partition) {
  const Grid g = field.space_grid();
  const Eigen::VectorXd w = simpson_weights(g.nodes, g.step());
  auto basis_matrix = [&](const std::vector<EigenPair>& basis) {
    Eigen::MatrixXd phi(g.nodes, static_cast<Eigen::Index>(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j)
      phi.col(static_cast<Eigen::Index>(j)) = sample(g, basis[j].phi);
    return phi;
  };
  ModalSourceSignal sig;
  sig.t_grid = field.t_grid;
  sig.f_s = kernels::project_rows(field.values, basis_matrix(partition.slow), w);
  sig.f_f_head = kernels::project_rows(field.values, basis_matrix(partition.fast_head), w);
  return sig;
}

}  // namespace dps
