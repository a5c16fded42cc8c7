#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dps/metrics.hpp"
#include "dps/scenario.hpp"

using namespace dps;
namespace {
constexpr double kPi = std::numbers::pi;

// closed-form lower bound for the [0, pi/4] window source with f = 2 on
// [10, 80]: c_j = sqrt(2/pi)(1 - cos(j pi/4))/j
double oracle_ideal(int m, int samples_on, int samples_total) {
  double captured = 0.0;
  for (int j = 1; j <= m; ++j) {
    const double c = std::sqrt(2.0 / kPi) * (1.0 - std::cos(j * kPi / 4.0)) / j;
    captured += c * c;
  }
  const double residual = kPi / 4.0 - captured;
  const double time_mean = 4.0 * samples_on / samples_total;
  return std::sqrt(residual * time_mean / kPi);
}

SpatioTemporalField constant_field(const ScalarFn& f, int nt) {
  const Grid g(0.0, kPi, 201);
  SpatioTemporalField field;
  field.z_grid = g.points();
  field.values.resize(nt, g.nodes);
  for (int k = 0; k < nt; ++k) {
    field.t_grid.push_back(0.1 * k);
    field.values.row(k) = sample(g, f).transpose();
  }
  return field;
}
}  // namespace

TEST_CASE("rmse of trivial fields") {
  auto zero = constant_field([](double) { return 0.0; }, 5);
  CHECK(rmse(zero) == 0.0);
  auto mode1 = constant_field(
      [](double z) { return std::sqrt(2.0 / kPi) * std::sin(z); }, 5);
  CHECK(rmse(mode1) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-6));
  SpatioTemporalField empty;
  CHECK_THROWS_AS(rmse(empty), std::invalid_argument);
}

TEST_CASE("rmse is invariant under time reversal and spatial mirroring") {
  Scenario sc = abrupt_scenario();
  sc.horizon = 5.0;
  const auto eigs = dirichlet_eigenpairs(2.0, 2);
  sc.source = SourceModel::modal_step(
      {{eigs[0].phi, 1.0, 2.0, 0.0}, {eigs[1].phi, 2.0, 3.0, 0.0}});
  const auto r = run_scenario(sc);
  SpatioTemporalField e = r.f_hat;
  e.values -= r.sim.f_true.values;
  const double base = rmse(e);
  SpatioTemporalField rev = e;
  rev.values = e.values.colwise().reverse().eval();
  CHECK(rmse(rev) == doctest::Approx(base).epsilon(1e-12));
  SpatioTemporalField mir = e;
  mir.values = e.values.rowwise().reverse().eval();
  CHECK(rmse(mir) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("ideal rmse: in-span window of the basis is zero") {
  // a source already in span{phi_s} has zero projection residual; emulate
  // with the window replaced by an in-span profile via the residual formula
  const auto eigs = dirichlet_eigenpairs(2.0, 2);
  // degenerate check: enlarged basis swallows ever more of the window
  Eigen::VectorXd ft = Eigen::VectorXd::Constant(11, 2.0);
  const double r2 = ideal_rmse(dirichlet_eigenpairs(2.0, 2), 0.0, kPi / 4.0, ft, 0.0, kPi);
  const double r8 = ideal_rmse(dirichlet_eigenpairs(2.0, 8), 0.0, kPi / 4.0, ft, 0.0, kPi);
  const double r40 = ideal_rmse(dirichlet_eigenpairs(2.0, 40), 0.0, kPi / 4.0, ft, 0.0, kPi);
  CHECK(r8 < r2);
  CHECK(r40 < 0.25 * r2);  // residual -> 0 as the span grows
}

TEST_CASE("ideal rmse matches the closed-form oracle to 1e-6") {
  const int total = 8001, on = 7001;  // dt = 0.01 over [0, 80], onset 10
  Eigen::VectorXd ft(total);
  for (int k = 0; k < total; ++k) ft[k] = (0.01 * k >= 10.0) ? 2.0 : 0.0;
  for (int m : {2, 3, 4}) {
    const double impl = ideal_rmse(dirichlet_eigenpairs(2.0, m), 0.0, kPi / 4.0, ft, 0.0, kPi);
    CHECK(std::abs(impl - oracle_ideal(m, on, total)) < 1e-6);
  }
}

TEST_CASE("ideal rmse rejects non-separable sources") {
  const auto eigs = dirichlet_eigenpairs(2.0, 2);
  const auto modal = SourceModel::modal_step({{eigs[0].phi, 10.0, 2.0, 0.0}});
  CHECK_THROWS_AS(ideal_rmse(eigs, modal, {0.0, 1.0}, 0.0, kPi), std::invalid_argument);
}

TEST_CASE("peak norms") {
  Eigen::MatrixXd s(3, 2);
  s << 0.0, 0.0, 3.0, 4.0, 1.0, 0.0;
  CHECK(peak_norm(s) == doctest::Approx(5.0));
  CHECK(derivative_peak(s, 0.5) == doctest::Approx(10.0));
}
