#include "dps/pde_system.hpp"

#include <cmath>
#include <stdexcept>

namespace dps {

double SensorShape::apply(const Grid& g, const Eigen::VectorXd& profile) const {
  if (kind == Kind::point) return interpolate(g, profile, position);
  return inner_product(g, sample(g, weight), profile);
}

double SensorShape::apply(double lo, double hi, const ScalarFn& profile) const {
  if (kind == Kind::point) return profile(position);
  return integrate_fn([&](double z) { return weight(z) * profile(z); }, lo, hi);
}

const PdeSystem& validate_system(const PdeSystem& sys) {
  if (!(sys.alpha1 < sys.alpha2))
    throw std::invalid_argument("invalid domain: alpha1 must be < alpha2");
  if (!(sys.a2 > 0.0))
    throw std::invalid_argument("not parabolic: diffusion coefficient a2 must be > 0");
  if (sys.b_u.empty())
    throw std::invalid_argument("empty actuator shape list: need n_u >= 1");
  if (sys.c.empty())
    throw std::invalid_argument("empty sensor shape list: need n_y >= 1");
  if (sys.bc.c1 == 0.0 && sys.bc.d1 == 0.0)
    throw std::invalid_argument("degenerate left BC: c1 and d1 both zero");
  if (sys.bc.c2 == 0.0 && sys.bc.d2 == 0.0)
    throw std::invalid_argument("degenerate right BC: c2 and d2 both zero");
  return sys;
}

void SpatioTemporalField::validate(double alpha1, double alpha2) const {
  const auto nt = static_cast<Eigen::Index>(t_grid.size());
  const auto nz = static_cast<Eigen::Index>(z_grid.size());
  if (values.rows() != nt || values.cols() != nz)
    throw std::invalid_argument("field: value matrix does not match grids");
  if (nz < 2) throw std::invalid_argument("field: need at least 2 spatial nodes");
  if (std::abs(z_grid.front() - alpha1) > 1e-12 || std::abs(z_grid.back() - alpha2) > 1e-12)
    throw std::invalid_argument("field: z grid endpoints must equal the domain bounds");
}

Grid SpatioTemporalField::space_grid() const {
  return Grid(z_grid.front(), z_grid.back(), static_cast<int>(z_grid.size()));
}

}  // namespace dps
