#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dps/grid.hpp"
#include "dps/pde_system.hpp"
#include "dps/scenario.hpp"

using namespace dps;
namespace {
constexpr double kPi = std::numbers::pi;
ScalarFn phi(int j) {
  return [j](double z) { return std::sqrt(2.0 / kPi) * std::sin(j * z); };
}
}  // namespace

TEST_CASE("validate_system accepts the heat rod") {
  const PdeSystem sys = heat_rod_system();
  CHECK_NOTHROW(validate_system(sys));
}

TEST_CASE("validate_system rejects non-parabolic and degenerate BCs") {
  PdeSystem sys = heat_rod_system();
  sys.a2 = 0.0;
  CHECK_THROWS_WITH_AS(validate_system(sys), doctest::Contains("not parabolic"),
                       std::invalid_argument);
  sys = heat_rod_system();
  sys.bc.c1 = sys.bc.d1 = 0.0;
  CHECK_THROWS_WITH_AS(validate_system(sys), doctest::Contains("degenerate left BC"),
                       std::invalid_argument);
  sys = heat_rod_system();
  sys.b_u.clear();
  CHECK_THROWS_AS(validate_system(sys), std::invalid_argument);
  sys = heat_rod_system();
  sys.alpha2 = sys.alpha1;
  CHECK_THROWS_AS(validate_system(sys), std::invalid_argument);
}

TEST_CASE("inner product on the sine family") {
  const Grid g(0.0, kPi, 201);
  CHECK(inner_product(g, phi(1), phi(1)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(inner_product(g, phi(1), phi(2)) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("window overlap against the closed form") {
  // <b_f, phi_2> with b_f = H(z) - H(z - pi/4); the jump is a segment edge
  const double expected = std::sqrt(2.0 / kPi) * (1.0 - std::cos(kPi / 2.0)) / 2.0;
  const double got = integrate_fn(phi(2), 0.0, kPi / 4.0, 201);
  CHECK(got == doctest::Approx(expected).epsilon(1e-6));
  CHECK(got == doctest::Approx(0.39894).epsilon(1e-4));
}

TEST_CASE("l2 norm") {
  const Grid g(0.0, kPi, 201);
  CHECK(l2_norm_profile(g, phi(1)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(l2_norm_profile(g, Eigen::VectorXd::Zero(201)) == 0.0);
  // ||b_f||_2 = sqrt(pi/4), integrating the window segment only
  const double norm = std::sqrt(integrate_fn([](double) { return 1.0; }, 0.0, kPi / 4.0));
  CHECK(norm == doctest::Approx(std::sqrt(kPi / 4.0)).epsilon(1e-9));
}

TEST_CASE("norm squared equals the inner product exactly") {
  const Grid g(0.0, kPi, 101);
  std::mt19937 rng(7);
  std::normal_distribution<double> d;
  Eigen::VectorXd f(101);
  for (auto& v : f.reshaped()) v = d(rng);
  const double n = l2_norm_profile(g, f);
  CHECK(n * n == doctest::Approx(inner_product(g, f, f)).epsilon(1e-15));
}

TEST_CASE("quadrature is symmetric and bilinear") {
  const Grid g(0.0, kPi, 101);
  std::mt19937 rng(11);
  std::normal_distribution<double> d;
  Eigen::VectorXd f(101), v(101), w(101);
  for (int i = 0; i < 101; ++i) {
    f[i] = d(rng);
    v[i] = d(rng);
    w[i] = d(rng);
  }
  CHECK(inner_product(g, f, v) == doctest::Approx(inner_product(g, v, f)).epsilon(1e-14));
  const double lhs = inner_product(g, (2.0 * f + 3.0 * v).eval(), w);
  const double rhs = 2.0 * inner_product(g, f, w) + 3.0 * inner_product(g, v, w);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("simpson guards") {
  CHECK_THROWS_AS(simpson_integral(Eigen::VectorXd::Zero(4), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(simpson_integral(Eigen::VectorXd::Zero(1), 0.1), std::invalid_argument);
  const Grid g(0.0, 1.0, 11);
  CHECK_THROWS_AS(inner_product(g, Eigen::VectorXd::Zero(5), Eigen::VectorXd::Zero(11)),
                  std::invalid_argument);
}

TEST_CASE("dirichlet sine family is orthonormal at 201 Simpson nodes") {
  const Grid g(0.0, kPi, 201);
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j) {
      const double ip = inner_product(g, phi(i), phi(j));
      CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-6));
    }
}

TEST_CASE("point sensors evaluate by interpolation") {
  const Grid g(0.0, kPi, 201);
  const auto shape = SensorShape::at(kPi / 4.0);
  CHECK(shape.apply(g, sample(g, phi(2))) ==
        doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-5));
}

TEST_CASE("field validation") {
  SpatioTemporalField f;
  f.z_grid = {0.0, kPi / 2.0, kPi};
  f.t_grid = {0.0, 1.0};
  f.values = Eigen::MatrixXd::Zero(2, 3);
  CHECK_NOTHROW(f.validate(0.0, kPi));
  f.values.resize(2, 4);
  CHECK_THROWS_AS(f.validate(0.0, kPi), std::invalid_argument);
  f.values.resize(2, 3);
  CHECK_THROWS_AS(f.validate(0.0, 2.0), std::invalid_argument);
}
