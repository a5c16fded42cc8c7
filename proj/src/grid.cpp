#include "dps/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dps {

Grid::Grid(double lo_, double hi_, int nodes_) : lo(lo_), hi(hi_), nodes(nodes_) {
  if (!(lo < hi)) throw std::invalid_argument("grid: lo must be < hi");
  if (nodes < 2) throw std::invalid_argument("grid: need at least 2 nodes");
}

std::vector<double> Grid::points() const {
  std::vector<double> z(nodes);
  const double h = step();
  for (int i = 0; i < nodes; ++i) z[i] = lo + i * h;
  z.back() = hi;  // avoid drift at the far end
  return z;
}

int Grid::cell(double z) const {
  int k = static_cast<int>((z - lo) / step());
  return std::clamp(k, 0, nodes - 2);
}

Eigen::VectorXd sample(const Grid& g, const ScalarFn& f) {
  Eigen::VectorXd v(g.nodes);
  for (int i = 0; i < g.nodes; ++i) v[i] = f(g.point(i));
  return v;
}

double simpson_integral(const Eigen::VectorXd& values, double step) {
  const int n = static_cast<int>(values.size());
  if (n < 3) throw std::invalid_argument("simpson: need at least 3 nodes");
  if (n % 2 == 0) throw std::invalid_argument("simpson: node count must be odd");
  double s4 = 0.0, s2 = 0.0;
  for (int i = 1; i < n - 1; i += 2) s4 += values[i];
  for (int i = 2; i < n - 1; i += 2) s2 += values[i];
  return step / 3.0 * (values[0] + values[n - 1] + 4.0 * s4 + 2.0 * s2);
}

Eigen::VectorXd simpson_weights(int nodes, double step) {
  if (nodes < 3) throw std::invalid_argument("simpson: need at least 3 nodes");
  if (nodes % 2 == 0) throw std::invalid_argument("simpson: node count must be odd");
  Eigen::VectorXd w(nodes);
  w.setConstant(2.0 * step / 3.0);
  for (int i = 1; i < nodes - 1; i += 2) w[i] = 4.0 * step / 3.0;
  w[0] = w[nodes - 1] = step / 3.0;
  return w;
}

double inner_product(const Grid& g, const Eigen::VectorXd& f, const Eigen::VectorXd& v) {
  if (f.size() != g.nodes || v.size() != g.nodes)
    throw std::invalid_argument("inner_product: profile size does not match grid");
  return simpson_integral(f.cwiseProduct(v), g.step());
}

double inner_product(const Grid& g, const ScalarFn& f, const ScalarFn& v) {
  return inner_product(g, sample(g, f), sample(g, v));
}

double l2_norm_profile(const Grid& g, const Eigen::VectorXd& f) {
  return std::sqrt(inner_product(g, f, f));
}

double l2_norm_profile(const Grid& g, const ScalarFn& f) {
  const Eigen::VectorXd v = sample(g, f);
  return std::sqrt(inner_product(g, v, v));
}

double integrate_fn(const ScalarFn& f, double a, double b, int min_nodes) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw std::invalid_argument("integrate_fn: a must be <= b");
  }
  int n = std::max(min_nodes, 3);
  if (n % 2 == 0) ++n;
  Grid g(a, b, n);
  return simpson_integral(sample(g, f), g.step());
}

double interpolate(const Grid& g, const Eigen::VectorXd& values, double z) {
  if (values.size() != g.nodes)
    throw std::invalid_argument("interpolate: profile size does not match grid");
  if (z < g.lo - 1e-12 || z > g.hi + 1e-12)
    throw std::invalid_argument("interpolate: position outside grid");
  const int k = g.cell(z);
  const double w = (z - g.point(k)) / g.step();
  return (1.0 - w) * values[k] + w * values[k + 1];
}

}  // namespace dps
