#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dps/reduction.hpp"
#include "dps/scenario.hpp"

using namespace dps;
namespace {
constexpr double kPi = std::numbers::pi;

ReducedSystem rod_reduced(int m = 2, int n_fast = 4) {
  const PdeSystem sys = heat_rod_system();
  const auto part = spectral_gap(dirichlet_eigenpairs(2.0, m + n_fast), m);
  return build_slow_subsystem(sys, part, Grid(0.0, kPi, 201));
}
}  // namespace

TEST_CASE("rod reduction reproduces the reference matrices") {
  const auto red = rod_reduced();
  CHECK(red.A_s(0, 0) == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(red.A_s(1, 1) == doctest::Approx(-6.0).epsilon(1e-12));
  CHECK(red.A_s(0, 1) == 0.0);
  CHECK(red.B_us(0, 0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(red.B_us(1, 0) == doctest::Approx(0.0).epsilon(1e-9));
  const double c1 = std::sqrt(1.0 / kPi), c2 = std::sqrt(2.0 / kPi);
  CHECK(red.C_s(0, 0) == doctest::Approx(c1).epsilon(1e-12));
  CHECK(red.C_s(0, 1) == doctest::Approx(c2).epsilon(1e-12));
  CHECK(red.C_s(1, 0) == doctest::Approx(c1).epsilon(1e-12));
  CHECK(red.C_s(1, 1) == doctest::Approx(-c2).epsilon(1e-12));
}

TEST_CASE("duplicated sensors make C_s rank deficient") {
  PdeSystem sys = heat_rod_system();
  sys.c = {SensorShape::at(kPi / 4.0), SensorShape::at(kPi / 4.0)};
  const auto part = spectral_gap(dirichlet_eigenpairs(2.0, 4), 2);
  CHECK_THROWS_WITH_AS(build_slow_subsystem(sys, part, Grid(0.0, kPi, 201)),
                       doctest::Contains("rank"), std::invalid_argument);
}

TEST_CASE("observability of the rod pair") {
  const auto red = rod_reduced();
  Eigen::MatrixXd obs(4, 2);
  obs << red.C_s, red.C_s * red.A_s;
  CHECK(numeric_rank(obs) == 2);
}

TEST_CASE("modal coefficients of an in-span step source") {
  const auto part = spectral_gap(dirichlet_eigenpairs(2.0, 6), 2);
  const auto eigs = dirichlet_eigenpairs(2.0, 2);
  const SourceModel src = SourceModel::modal_step({{eigs[0].phi, 10.0, 2.0, 0.0}});
  const std::vector<double> t = {0.0, 5.0, 10.0, 50.0};
  const auto sig = modal_source_coefficients(src, part, Grid(0.0, kPi, 201), t);
  CHECK(sig.f_s(0, 0) == doctest::Approx(0.0));
  CHECK(sig.f_s(1, 0) == doctest::Approx(0.0));
  CHECK(sig.f_s(2, 0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(sig.f_s(3, 0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(sig.f_s.col(1).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(sig.f_f_head.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("zero source projects to zero") {
  const auto part = spectral_gap(dirichlet_eigenpairs(2.0, 6), 2);
  const auto sig =
      modal_source_coefficients(SourceModel::zero(), part, Grid(0.0, kPi, 201), {0.0, 1.0});
  CHECK(sig.f_s.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("window source projects to the closed-form coefficients") {
  const auto part = spectral_gap(dirichlet_eigenpairs(2.0, 6), 2);
  const auto src = SourceModel::window(0.0, kPi / 4.0, 10.0, 2.0);
  const auto sig =
      modal_source_coefficients(src, part, Grid(0.0, kPi, 201), {0.0, 20.0});
  for (int j = 1; j <= 2; ++j) {
    const double c = std::sqrt(2.0 / kPi) * (1.0 - std::cos(j * kPi / 4.0)) / j;
    CHECK(sig.f_s(1, j - 1) == doctest::Approx(2.0 * c).epsilon(1e-6));
  }
  CHECK(sig.f_s.row(0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("in-span reconstruction and Bessel inequality") {
  const auto part = spectral_gap(dirichlet_eigenpairs(2.0, 6), 2);
  const auto eigs = part.slow;
  const Grid g(0.0, kPi, 201);
  const SourceModel src = SourceModel::modal_step(
      {{eigs[0].phi, 0.0, 1.3, 0.0}, {eigs[1].phi, 0.0, -0.7, 0.0}});
  const std::vector<double> t = {1.0};
  const auto sig = modal_source_coefficients(src, part, g, t);
  // phi_s^T f_s reproduces the field at every grid point
  const Eigen::VectorXd field = eval_source(src, g, 1.0);
  for (int i = 0; i < g.nodes; ++i) {
    const double rec =
        sig.f_s(0, 0) * eigs[0].phi(g.point(i)) + sig.f_s(0, 1) * eigs[1].phi(g.point(i));
    CHECK(rec == doctest::Approx(field[i]).epsilon(1e-6));
  }
  // Bessel: ||f(.,t)||^2 >= ||f_s(t)||^2
  const double full = std::pow(l2_norm_profile(g, field), 2);
  CHECK(full + 1e-9 >= sig.f_s.row(0).squaredNorm());
}

TEST_CASE("field-sampled projection agrees with the model path") {
  const auto part = spectral_gap(dirichlet_eigenpairs(2.0, 6), 2);
  const Grid g(0.0, kPi, 201);
  const auto src = SourceModel::modal_step({{part.slow[0].phi, 0.5, 2.0, 0.0}});
  SpatioTemporalField f;
  f.z_grid = g.points();
  f.t_grid = {0.0, 1.0, 2.0};
  f.values = eval_source_field(src, g, f.t_grid);
  const auto from_field = modal_source_coefficients(f, part);
  const auto from_model = modal_source_coefficients(src, part, g, f.t_grid);
  CHECK((from_field.f_s - from_model.f_s).cwiseAbs().maxCoeff() < 1e-8);
}
