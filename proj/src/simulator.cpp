#include "dps/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace dps {

void SensorArray::validate(double alpha1, double alpha2) const {
  if (positions.empty()) throw std::invalid_argument("sensor array: empty");
  double prev = alpha1;
  for (double p : positions) {
    if (!(p > alpha1 && p < alpha2))
      throw std::invalid_argument("sensor array: position not strictly inside the domain");
    if (!(p > prev)) throw std::invalid_argument("sensor array: positions must strictly increase");
    prev = p;
  }
}

std::vector<SensorShape> SensorArray::shapes() const {
  std::vector<SensorShape> out;
  out.reserve(positions.size());
  for (double p : positions) out.push_back(SensorShape::at(p));
  return out;
}

SensorArray place_sensors_uniform(int n_y, double alpha1, double alpha2) {
  if (n_y < 1) throw std::invalid_argument("place_sensors_uniform: n_y must be >= 1");
  SensorArray arr;
  arr.positions.reserve(n_y);
  for (int i = 1; i <= n_y; ++i)
    arr.positions.push_back(alpha1 + i * (alpha2 - alpha1) / (n_y + 1));
  return arr;
}

namespace {

// Constant-coefficient tridiagonal Crank-Nicolson system; the LHS factors
// once (Thomas) and every step is a single sweep.
class TridiagSolver {
 public:
  TridiagSolver(const Eigen::VectorXd& lower, const Eigen::VectorXd& diag,
                const Eigen::VectorXd& upper)
      : lower_(lower), cp_(diag.size()), denom_(diag.size()) {
    const Eigen::Index n = diag.size();
    double d = diag[0];
    if (d == 0.0) throw std::runtime_error("tridiagonal solve: singular pivot");
    denom_[0] = 1.0 / d;
    cp_[0] = upper.size() ? upper[0] * denom_[0] : 0.0;
    for (Eigen::Index i = 1; i < n; ++i) {
      d = diag[i] - lower[i - 1] * cp_[i - 1];
      if (d == 0.0) throw std::runtime_error("tridiagonal solve: singular pivot");
      denom_[i] = 1.0 / d;
      cp_[i] = (i < n - 1) ? upper[i] * denom_[i] : 0.0;
    }
  }

  void solve_in_place(Eigen::VectorXd& rhs) const {
    const Eigen::Index n = rhs.size();
    rhs[0] *= denom_[0];
    for (Eigen::Index i = 1; i < n; ++i)
      rhs[i] = (rhs[i] - lower_[i - 1] * rhs[i - 1]) * denom_[i];
    for (Eigen::Index i = n - 2; i >= 0; --i) rhs[i] -= cp_[i] * rhs[i + 1];
  }

 private:
  Eigen::VectorXd lower_, cp_, denom_;
};

struct Discretization {
  Eigen::VectorXd lower, diag, upper;  // tridiagonal of the spatial operator
  Eigen::VectorXd affine;              // inhomogeneous BC contribution
  int first = 0;                       // grid index of the first unknown
  int n = 0;
  double left_value = 0.0, right_value = 0.0;  // fixed Dirichlet values
};

Discretization discretize(const PdeSystem& sys, const Grid& g) {
  const double h = g.step();
  const double lo = sys.a2 / (h * h) - sys.a1 / (2 * h);
  const double up = sys.a2 / (h * h) + sys.a1 / (2 * h);
  const double di = -2.0 * sys.a2 / (h * h) + sys.a3;

  Discretization d;
  d.first = sys.bc.left_dirichlet() ? 1 : 0;
  const int last = sys.bc.right_dirichlet() ? g.nodes - 2 : g.nodes - 1;
  d.n = last - d.first + 1;
  d.lower = Eigen::VectorXd::Constant(d.n - 1, lo);
  d.upper = Eigen::VectorXd::Constant(d.n - 1, up);
  d.diag = Eigen::VectorXd::Constant(d.n, di);
  d.affine = Eigen::VectorXd::Zero(d.n);

  if (sys.bc.left_dirichlet()) {
    d.left_value = sys.bc.r1 / sys.bc.c1;
    d.affine[0] += lo * d.left_value;
  } else {
    // ghost: x_{-1} = x_1 + (2h c1/d1) x_0 - (2h/d1) r1
    d.diag[0] = di + lo * 2.0 * h * sys.bc.c1 / sys.bc.d1;
    d.upper[0] = lo + up;
    d.affine[0] += -lo * 2.0 * h / sys.bc.d1 * sys.bc.r1;
  }
  if (sys.bc.right_dirichlet()) {
    d.right_value = sys.bc.r2 / sys.bc.c2;
    d.affine[d.n - 1] += up * d.right_value;
  } else {
    d.diag[d.n - 1] = di - up * 2.0 * h * sys.bc.c2 / sys.bc.d2;
    d.lower[d.n - 2] = lo + up;
    d.affine[d.n - 1] += up * 2.0 * h / sys.bc.d2 * sys.bc.r2;
  }
  return d;
}

Eigen::VectorXd apply_tridiag(const Discretization& d, const Eigen::VectorXd& x) {
  Eigen::VectorXd y = d.diag.cwiseProduct(x);
  y.head(d.n - 1) += d.upper.cwiseProduct(x.tail(d.n - 1));
  y.tail(d.n - 1) += d.lower.cwiseProduct(x.head(d.n - 1));
  return y;
}

}  // namespace

SimulationResult simulate_forward(const PdeSystem& sys, const SourceModel& source,
                                  const InputFn& u, double horizon, double dt, int n_nodes) {
  validate_system(sys);
  if (!(dt > 0.0)) throw std::invalid_argument("simulate_forward: dt must be > 0");
  if (n_nodes < 51) throw std::invalid_argument("simulate_forward: need at least 51 nodes");
  if (n_nodes % 2 == 0) ++n_nodes;  // Simpson-friendly grid
  source.validate(horizon);

  const Grid g(sys.alpha1, sys.alpha2, n_nodes);
  const double h = g.step();
  const int steps = static_cast<int>(std::llround(horizon / dt));

  // initial profile must satisfy the boundary conditions
  const auto bc_residual = [&](double c, double dcoef, double r, double z, int dir) {
    const double x = sys.x0(z);
    // second-order one-sided derivative
    const double xp =
        dir * (-3.0 * x + 4.0 * sys.x0(z + dir * h) - sys.x0(z + 2.0 * dir * h)) / (2.0 * h);
    return std::abs(c * x + dcoef * xp - r);
  };
  if (bc_residual(sys.bc.c1, sys.bc.d1, sys.bc.r1, sys.alpha1, +1) > 1e-4 ||
      bc_residual(sys.bc.c2, sys.bc.d2, sys.bc.r2, sys.alpha2, -1) > 1e-4)
    throw std::invalid_argument("simulate_forward: initial profile violates boundary conditions");

  const Discretization d = discretize(sys, g);
  // (I - dt/2 M) on the unknowns
  TridiagSolver solver(-0.5 * dt * d.lower, Eigen::VectorXd::Ones(d.n) - 0.5 * dt * d.diag,
                       -0.5 * dt * d.upper);

  auto input_load = [&](double t) {
    Eigen::VectorXd l = Eigen::VectorXd::Zero(d.n);
    const Eigen::VectorXd ut = u(t);
    if (ut.size() != sys.n_u())
      throw std::invalid_argument("simulate_forward: input dimension mismatch");
    for (int j = 0; j < sys.n_u(); ++j) {
      if (ut[j] == 0.0) continue;
      for (int i = 0; i < d.n; ++i)
        l[i] += sys.k_u * sys.b_u[j](g.point(d.first + i)) * ut[j];
    }
    return l;
  };

  SimulationResult res;
  res.dt = dt;
  res.scheme = "crank-nicolson";
  res.x.z_grid = g.points();
  res.x.t_grid.resize(steps + 1);
  res.x.values.resize(steps + 1, g.nodes);
  res.y.resize(steps + 1, sys.n_y());

  Eigen::VectorXd xk = sample(g, sys.x0).segment(d.first, d.n);
  auto emit = [&](int k, const Eigen::VectorXd& xu) {
    res.x.t_grid[k] = k * dt;
    Eigen::VectorXd full = Eigen::VectorXd::Zero(g.nodes);
    full.segment(d.first, d.n) = xu;
    if (sys.bc.left_dirichlet()) full[0] = d.left_value;
    if (sys.bc.right_dirichlet()) full[g.nodes - 1] = d.right_value;
    res.x.values.row(k) = full.transpose();
    for (int i = 0; i < sys.n_y(); ++i)
      res.y(k, i) = sys.c[i].apply(g, (sys.k_y * full).eval());
  };
  emit(0, xk);

  Eigen::VectorXd ucur = input_load(0.0);
  for (int k = 0; k < steps; ++k) {
    const double t0 = k * dt, t1 = (k + 1) * dt;
    const Eigen::VectorXd unext = input_load(t1);
    // input term by endpoint average; source term by its exact time mean so
    // an onset inside the step injects the right mass at any dt
    Eigen::VectorXd rhs = xk + 0.5 * dt * apply_tridiag(d, xk) + 0.5 * dt * (ucur + unext) +
                          dt * eval_source_average(source, g, t0, t1).segment(d.first, d.n) +
                          dt * d.affine;
    solver.solve_in_place(rhs);
    xk.swap(rhs);
    if (!xk.allFinite())
      throw std::runtime_error("simulate_forward: non-finite state at step " +
                               std::to_string(k + 1));
    emit(k + 1, xk);
    ucur = unext;
  }

  res.f_true.z_grid = res.x.z_grid;
  res.f_true.t_grid = res.x.t_grid;
  res.f_true.values = eval_source_field(source, g, res.x.t_grid);
  return res;
}

Eigen::MatrixXd sample_outputs(const SpatioTemporalField& x, const SensorArray& sensors,
                               double k_y) {
  const Grid g = x.space_grid();
  sensors.validate(g.lo, g.hi);
  const auto nt = x.values.rows();
  Eigen::MatrixXd y(nt, static_cast<Eigen::Index>(sensors.positions.size()));
  for (Eigen::Index k = 0; k < nt; ++k)
    for (size_t i = 0; i < sensors.positions.size(); ++i)
      y(k, static_cast<Eigen::Index>(i)) =
          k_y * interpolate(g, x.values.row(k).transpose(), sensors.positions[i]);
  return y;
}

}  // namespace dps
