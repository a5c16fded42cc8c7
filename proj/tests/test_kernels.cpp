#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dps/kernels.hpp"

using namespace dps;

namespace {
Eigen::MatrixXd random_matrix(int r, int c, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  Eigen::MatrixXd a(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) a(i, j) = d(rng);
  return a;
}
}  // namespace

TEST_CASE("parallel kernels match the serial reference bit for bit") {
  const auto coeffs = random_matrix(257, 4, 1);
  const auto phi = random_matrix(4, 101, 2);
  const auto field = random_matrix(257, 101, 3);
  const auto basis = random_matrix(101, 4, 4);
  Eigen::VectorXd w = random_matrix(101, 1, 5).col(0).cwiseAbs();

  CHECK(kernels::synthesize_field(coeffs, phi) == kernels::serial::synthesize_field(coeffs, phi));
  CHECK(kernels::row_square_integrals(field, w) ==
        kernels::serial::row_square_integrals(field, w));
  CHECK(kernels::project_rows(field, basis, w) == kernels::serial::project_rows(field, basis, w));
}

TEST_CASE("kernels are deterministic across repeated calls") {
  const auto field = random_matrix(128, 51, 9);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(51, 0.01);
  const auto a = kernels::row_square_integrals(field, w);
  const auto b = kernels::row_square_integrals(field, w);
  CHECK(a == b);
}

TEST_CASE("kernel dimension guards") {
  CHECK_THROWS_AS(kernels::synthesize_field(Eigen::MatrixXd::Zero(3, 2),
                                            Eigen::MatrixXd::Zero(3, 5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(kernels::row_square_integrals(Eigen::MatrixXd::Zero(3, 4),
                                                Eigen::VectorXd::Zero(5)),
                  std::invalid_argument);
}
