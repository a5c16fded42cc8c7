#include "dps/source_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dps {

SourceModel SourceModel::modal_step(std::vector<Mode> modes) {
  SourceModel m;
  m.kind = Kind::modal_step;
  m.modes = std::move(modes);
  return m;
}

SourceModel SourceModel::modal_incipient(std::vector<Mode> modes) {
  SourceModel m;
  m.kind = Kind::modal_incipient;
  m.modes = std::move(modes);
  return m;
}

SourceModel SourceModel::window(double z_a, double z_b, double t_on, double amplitude) {
  if (!(z_a < z_b)) throw std::invalid_argument("source window: z_a must be < z_b");
  SourceModel m;
  m.kind = Kind::separable_window;
  m.z_a = z_a;
  m.z_b = z_b;
  m.t_on = t_on;
  m.amplitude = amplitude;
  return m;
}

double SourceModel::mode_value(size_t j, double t) const {
  const Mode& md = modes.at(j);
  if (t < md.t_on) return 0.0;
  switch (kind) {
    case Kind::modal_step:
      return md.amplitude;
    case Kind::modal_incipient:
      return md.amplitude - std::exp(-md.rate * (t - md.t_on));
    default:
      throw std::logic_error("mode_value: not a modal source");
  }
}

double SourceModel::window_value(double t) const {
  if (kind != Kind::separable_window)
    throw std::logic_error("window_value: not a window source");
  return t >= t_on ? amplitude : 0.0;
}

namespace {

double step_average(double on, double amplitude, double t0, double t1) {
  const double a = std::max(t0, on);
  if (t1 <= a) return 0.0;
  return amplitude * (t1 - a) / (t1 - t0);
}

}  // namespace

double SourceModel::mode_average(size_t j, double t0, double t1) const {
  if (!(t1 > t0)) throw std::invalid_argument("mode_average: need t1 > t0");
  const Mode& md = modes.at(j);
  if (kind == Kind::modal_step) return step_average(md.t_on, md.amplitude, t0, t1);
  if (kind != Kind::modal_incipient) throw std::logic_error("mode_average: not a modal source");
  const double a = std::max(t0, md.t_on);
  if (t1 <= a) return 0.0;
  // integral of amplitude - exp(-rate (tau - t_on)) over [a, t1]
  const double tail = (std::exp(-md.rate * (a - md.t_on)) - std::exp(-md.rate * (t1 - md.t_on))) /
                      md.rate;
  return (md.amplitude * (t1 - a) - tail) / (t1 - t0);
}

double SourceModel::window_average(double t0, double t1) const {
  if (kind != Kind::separable_window)
    throw std::logic_error("window_average: not a window source");
  if (!(t1 > t0)) throw std::invalid_argument("window_average: need t1 > t0");
  return step_average(t_on, amplitude, t0, t1);
}

void SourceModel::validate(double horizon) const {
  auto check = [&](double on, double amp) {
    if (!(on >= 0.0 && on <= horizon))
      throw std::invalid_argument("source: onset time outside the simulation horizon");
    if (!std::isfinite(amp)) throw std::invalid_argument("source: amplitude not finite");
  };
  switch (kind) {
    case Kind::zero:
      return;
    case Kind::modal_step:
    case Kind::modal_incipient:
      if (modes.empty()) throw std::invalid_argument("source: no modes");
      for (const auto& md : modes) check(md.t_on, md.amplitude);
      return;
    case Kind::separable_window:
      check(t_on, amplitude);
      return;
  }
  throw std::invalid_argument("source: unknown kind");
}

Eigen::VectorXd eval_source(const SourceModel& model, const Grid& g, double t) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(g.nodes);
  switch (model.kind) {
    case SourceModel::Kind::zero:
      return out;
    case SourceModel::Kind::modal_step:
    case SourceModel::Kind::modal_incipient: {
      for (size_t j = 0; j < model.modes.size(); ++j) {
        const double a = model.mode_value(j, t);
        if (a == 0.0) continue;
        for (int i = 0; i < g.nodes; ++i) out[i] += a * model.modes[j].shape(g.point(i));
      }
      return out;
    }
    case SourceModel::Kind::separable_window: {
      const double f = model.window_value(t);
      if (f == 0.0) return out;
      for (int i = 0; i < g.nodes; ++i) {
        const double z = g.point(i);
        // H(z - z_a) - H(z - z_b) with H(0) = 1
        out[i] = (z >= model.z_a && z < model.z_b) ? f : 0.0;
      }
      return out;
    }
  }
  throw std::invalid_argument("eval_source: unknown source kind");
}

Eigen::VectorXd eval_source_average(const SourceModel& model, const Grid& g, double t0,
                                    double t1) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(g.nodes);
  switch (model.kind) {
    case SourceModel::Kind::zero:
      return out;
    case SourceModel::Kind::modal_step:
    case SourceModel::Kind::modal_incipient: {
      for (size_t j = 0; j < model.modes.size(); ++j) {
        const double a = model.mode_average(j, t0, t1);
        if (a == 0.0) continue;
        for (int i = 0; i < g.nodes; ++i) out[i] += a * model.modes[j].shape(g.point(i));
      }
      return out;
    }
    case SourceModel::Kind::separable_window: {
      const double f = model.window_average(t0, t1);
      if (f == 0.0) return out;
      for (int i = 0; i < g.nodes; ++i) {
        const double z = g.point(i);
        out[i] = (z >= model.z_a && z < model.z_b) ? f : 0.0;
      }
      return out;
    }
  }
  throw std::invalid_argument("eval_source_average: unknown source kind");
}

Eigen::MatrixXd eval_source_field(const SourceModel& model, const Grid& g,
                                  const std::vector<double>& t_grid) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(t_grid.size()), g.nodes);
  const Eigen::Index nt = out.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < nt; ++k)
    out.row(k) = eval_source(model, g, t_grid[static_cast<size_t>(k)]).transpose();
  return out;
}

}  // namespace dps
