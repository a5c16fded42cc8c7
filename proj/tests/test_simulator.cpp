#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dps/scenario.hpp"
#include "dps/simulator.hpp"

using namespace dps;
namespace {
constexpr double kPi = std::numbers::pi;

ScalarFn phi(int j) {
  return [j](double z) { return std::sqrt(2.0 / kPi) * std::sin(j * z); };
}

InputFn unit_input() {
  return [](double) { return Eigen::VectorXd::Ones(1).eval(); };
}
InputFn zero_input() {
  return [](double) { return Eigen::VectorXd::Zero(1).eval(); };
}
}  // namespace

TEST_CASE("source evaluation over time") {
  const auto src = SourceModel::modal_step({{phi(1), 10.0, 2.0, 0.0},
                                            {phi(2), 40.0, 3.0, 0.0}});
  const Grid g(0.0, kPi, 201);
  CHECK(eval_source(src, g, 5.0).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXd f50 = eval_source(src, g, 50.0);
  for (int i : {30, 100, 150}) {
    const double z = g.point(i);
    CHECK(f50[i] == doctest::Approx(2.0 * phi(1)(z) + 3.0 * phi(2)(z)).epsilon(1e-12));
  }
  const auto inc = SourceModel::modal_incipient({{phi(1), 10.0, 2.0, 0.01}});
  const Eigen::VectorXd f10 = eval_source(inc, g, 10.0);
  CHECK(f10[100] == doctest::Approx(1.0 * phi(1)(g.point(100))).epsilon(1e-12));
}

TEST_CASE("window source uses the H(0)=1 node convention") {
  const auto src = SourceModel::window(0.0, kPi / 4.0, 0.0, 2.0);
  const Grid g(0.0, kPi, 201);  // pi/4 is node 50
  const Eigen::VectorXd f = eval_source(src, g, 1.0);
  CHECK(f[0] == 2.0);
  CHECK(f[49] == 2.0);
  CHECK(f[50] == 0.0);
  CHECK(f[51] == 0.0);
}

TEST_CASE("unknown onset outside horizon is rejected") {
  const auto src = SourceModel::modal_step({{phi(1), 100.0, 2.0, 0.0}});
  CHECK_THROWS_AS(src.validate(80.0), std::invalid_argument);
}

TEST_CASE("steady state under constant input") {
  // a2 x'' - 2 x = -2 phi_1  =>  x_ss = (2/3) phi_1
  const PdeSystem sys = heat_rod_system();
  const auto res = simulate_forward(sys, SourceModel::zero(), unit_input(), 80.0, 0.01, 201);
  const Grid g = res.x.space_grid();
  const Eigen::Index last = res.x.values.rows() - 1;
  double sup = 0.0;
  for (int i = 0; i < g.nodes; ++i)
    sup = std::max(sup,
                   std::abs(res.x.values(last, i) - 2.0 / 3.0 * phi(1)(g.point(i))));
  CHECK(sup < 1e-3);
}

TEST_CASE("modal decay of the unforced rod") {
  PdeSystem sys = heat_rod_system(2.0, 1.0);  // x0 = phi_1
  const auto res = simulate_forward(sys, SourceModel::zero(), zero_input(), 1.0, 0.01, 201);
  const Grid g = res.x.space_grid();
  const Eigen::Index last = res.x.values.rows() - 1;
  double sup = 0.0;
  for (int i = 0; i < g.nodes; ++i)
    sup = std::max(sup, std::abs(res.x.values(last, i) -
                                 std::exp(-3.0) * phi(1)(g.point(i))));
  CHECK(sup < 1e-3);
}

TEST_CASE("Dirichlet values are imposed exactly") {
  const PdeSystem sys = heat_rod_system();
  const auto res = simulate_forward(sys, SourceModel::zero(), unit_input(), 1.0, 0.01, 101);
  CHECK(res.x.values.col(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(res.x.values.col(100).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("superposition of the linear solver") {
  const PdeSystem sys = heat_rod_system(2.0, 1.0);
  const auto f1 = SourceModel::modal_step({{phi(1), 0.5, 2.0, 0.0}});
  const auto f2 = SourceModel::modal_step({{phi(2), 1.0, -1.5, 0.0}});
  const auto f12 = SourceModel::modal_step({{phi(1), 0.5, 2.0, 0.0},
                                            {phi(2), 1.0, -1.5, 0.0}});
  const auto a = simulate_forward(sys, f1, unit_input(), 4.0, 0.01, 101);
  const auto b = simulate_forward(sys, f2, unit_input(), 4.0, 0.01, 101);
  const auto zero = simulate_forward(sys, SourceModel::zero(), unit_input(), 4.0, 0.01, 101);
  const auto both = simulate_forward(sys, f12, unit_input(), 4.0, 0.01, 101);
  const Eigen::MatrixXd rhs = a.x.values + b.x.values - zero.x.values;
  CHECK((both.x.values - rhs).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("free energy decays") {
  PdeSystem sys = heat_rod_system(2.0, 1.0);
  const auto res = simulate_forward(sys, SourceModel::zero(), zero_input(), 2.0, 0.01, 101);
  const Grid g = res.x.space_grid();
  double prev = 1e300;
  for (Eigen::Index k = 0; k < res.x.values.rows(); k += 20) {
    const double n = l2_norm_profile(g, res.x.values.row(k).transpose().eval());
    CHECK(n <= prev + 1e-12);
    prev = n;
  }
}

TEST_CASE("grid refinement changes outputs below 1e-3") {
  const PdeSystem sys = heat_rod_system(2.0, 1.0);
  const auto src = SourceModel::modal_step({{phi(1), 10.0, 2.0, 0.0},
                                            {phi(2), 40.0, 3.0, 0.0}});
  const auto coarse = simulate_forward(sys, src, unit_input(), 80.0, 0.01, 201);
  const auto fine = simulate_forward(sys, src, unit_input(), 80.0, 0.005, 401);
  double sup = 0.0;
  for (Eigen::Index k = 0; k < coarse.y.rows(); ++k)
    sup = std::max(sup, (coarse.y.row(k) - fine.y.row(2 * k)).cwiseAbs().maxCoeff());
  CHECK(sup < 1e-3);
}

TEST_CASE("Robin boundary is honored") {
  // insulated left end: x'(0) = 0, right Dirichlet; constant initial profile
  // stays compatible and the left flux remains ~0
  PdeSystem sys = heat_rod_system();
  sys.a3 = 0.0;
  sys.bc.c1 = 0.0;
  sys.bc.d1 = 1.0;
  sys.x0 = [](double z) { return std::cos(z / 2.0); };
  const auto res = simulate_forward(sys, SourceModel::zero(), zero_input(), 0.5, 0.005, 201);
  const Grid g = res.x.space_grid();
  const Eigen::Index last = res.x.values.rows() - 1;
  const double flux = (res.x.values(last, 1) - res.x.values(last, 0)) / g.step();
  CHECK(std::abs(flux) < 5e-3);
  // exact cosine mode decay: x = e^{-t/4} cos(z/2)
  double sup = 0.0;
  for (int i = 0; i < g.nodes; ++i)
    sup = std::max(sup, std::abs(res.x.values(last, i) -
                                 std::exp(-0.125) * std::cos(g.point(i) / 2.0)));
  CHECK(sup < 1e-3);
}

TEST_CASE("sampling outputs at sensor points") {
  const Grid g(0.0, kPi, 201);
  SpatioTemporalField x;
  x.z_grid = g.points();
  x.t_grid = {0.0};
  x.values = sample(g, phi(2)).transpose();
  const Eigen::MatrixXd y = sample_outputs(x, heat_rod_sensors(), 1.0);
  CHECK(y(0, 0) == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-5));
  CHECK(y(0, 1) == doctest::Approx(-std::sqrt(2.0 / kPi)).epsilon(1e-5));
  x.values.setZero();
  CHECK(sample_outputs(x, heat_rod_sensors(), 1.0).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(sample_outputs(x, SensorArray{{4.0}}, 1.0), std::invalid_argument);
}

TEST_CASE("uniform interior sensor placement") {
  const auto two = place_sensors_uniform(2, 0.0, kPi);
  CHECK(two.positions[0] == doctest::Approx(kPi / 3.0));
  CHECK(two.positions[1] == doctest::Approx(2.0 * kPi / 3.0));
  const auto one = place_sensors_uniform(1, 0.0, kPi);
  CHECK(one.positions[0] == doctest::Approx(kPi / 2.0));
  const auto three = place_sensors_uniform(3, 0.0, kPi);
  CHECK(three.positions[0] == doctest::Approx(kPi / 4.0));
  CHECK(three.positions[1] == doctest::Approx(kPi / 2.0));
  CHECK(three.positions[2] == doctest::Approx(3.0 * kPi / 4.0));
}

TEST_CASE("sensor array invariants") {
  SensorArray arr{{0.5, 0.5}};
  CHECK_THROWS_AS(arr.validate(0.0, kPi), std::invalid_argument);
  arr.positions = {0.0};
  CHECK_THROWS_AS(arr.validate(0.0, kPi), std::invalid_argument);
}

TEST_CASE("simulate_forward guards") {
  const PdeSystem sys = heat_rod_system();
  CHECK_THROWS_AS(simulate_forward(sys, SourceModel::zero(), unit_input(), 1.0, 0.0, 201),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_forward(sys, SourceModel::zero(), unit_input(), 1.0, 0.01, 21),
                  std::invalid_argument);
  PdeSystem bad = heat_rod_system();
  bad.x0 = [](double) { return 1.0; };  // violates Dirichlet ends
  CHECK_THROWS_AS(simulate_forward(bad, SourceModel::zero(), unit_input(), 1.0, 0.01, 201),
                  std::invalid_argument);
}
