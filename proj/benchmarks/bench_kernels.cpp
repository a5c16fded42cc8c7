// Serial-vs-OpenMP timing of the field kernels at production sizes
// (8001 time samples x 201 nodes, 4 modes), plus a full-pipeline timing.
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif
#include <chrono>

#include "dps/kernels.hpp"
#include "dps/scenario.hpp"

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

Eigen::MatrixXd random_matrix(Eigen::Index r, Eigen::Index c, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  Eigen::MatrixXd a(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) a(i, j) = d(rng);
  return a;
}

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const double t0 = now();
    f();
    best = std::min(best, now() - t0);
  }
  return best;
}

}  // namespace

int main() {
  const Eigen::Index nt = 8001, nz = 201, m = 4;
  const auto coeffs = random_matrix(nt, m, 1);
  const auto phi = random_matrix(m, nz, 2);
  const auto field = random_matrix(nt, nz, 3);
  const auto basis = random_matrix(nz, m, 4);
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(nz, 0.005);

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel variants run serially\n");
#endif
  std::printf("%-24s %12s %12s %8s\n", "kernel", "serial (ms)", "parallel (ms)", "speedup");

  struct Row {
    const char* name;
    double ser, par;
  };
  Row rows[] = {
      {"synthesize_field",
       1e3 * time_best_of(5, [&] { dps::kernels::serial::synthesize_field(coeffs, phi); }),
       1e3 * time_best_of(5, [&] { dps::kernels::synthesize_field(coeffs, phi); })},
      {"row_square_integrals",
       1e3 * time_best_of(5, [&] { dps::kernels::serial::row_square_integrals(field, w); }),
       1e3 * time_best_of(5, [&] { dps::kernels::row_square_integrals(field, w); })},
      {"project_rows",
        1e3 * time_best_of(5, [&] { dps::kernels::serial::project_rows(field, basis, w); }),
       1e3 * time_best_of(5, [&] { dps::kernels::project_rows(field, basis, w); })},
  };
  for (const auto& r : rows)
    std::printf("%-24s %12.3f %12.3f %8.2fx\n", r.name, r.ser, r.par, r.ser / r.par);

  const double t0 = now();
  const auto result = dps::run_scenario(dps::abrupt_scenario());
  std::printf("\nfull identification pipeline: %.3f s (rmse %.4f)\n", now() - t0,
              result.metrics.rmse);
  return 0;
}
