// Command-line front end: forward simulation, observer design, full
// identification pipeline, and the bundled rod experiments.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "dps/csv.hpp"
#include "dps/scenario.hpp"

namespace {

dps::Scenario scenario_from(const std::string& config_path, const std::string& out,
                            double dt, int nodes, const std::string& pin, unsigned seed,
                            bool seed_set, bool dt_set, bool nodes_set) {
  dps::Config cfg = dps::Config::load(config_path);
  dps::Scenario sc = dps::Scenario::from_config(cfg);
  if (!out.empty()) sc.out_dir = out;
  if (dt_set) sc.dt = dt;
  if (nodes_set) sc.nodes = nodes;
  if (seed_set) sc.seed = seed;
  if (!pin.empty()) {
    sc.gains = dps::Scenario::Gains::file;
    sc.gain_file = pin;
  }
  return sc;
}

int run_simulate(const dps::Scenario& sc) {
  const auto res = dps::simulate_forward(
      sc.system, sc.source,
      [&](double) { return Eigen::VectorXd::Ones(sc.system.n_u()).eval(); }, sc.horizon, sc.dt,
      sc.nodes);
  const std::string dir = sc.out_dir.empty() ? "out/simulate" : sc.out_dir;
  dps::write_field_csv(dir + "/x.csv", res.x.z_grid, res.x.t_grid, res.x.values);
  std::vector<std::string> names;
  for (int i = 1; i <= static_cast<int>(res.y.cols()); ++i) names.push_back("y" + std::to_string(i));
  dps::write_series_csv(dir + "/y.csv", names, res.x.t_grid, res.y);
  std::cout << "wrote " << dir << "/x.csv and y.csv (" << res.x.t_grid.size() << " samples, "
            << res.x.z_grid.size() << " nodes)\n";
  return 0;
}

int run_design(const dps::Scenario& sc) {
  std::vector<dps::EigenPair> eigs;
  try {
    eigs = dps::dirichlet_eigenpairs(sc.system, 2 * sc.m);
  } catch (const std::invalid_argument&) {
    eigs = dps::numeric_eigenpairs(sc.system, 2 * sc.m);
  }
  const auto part = dps::spectral_gap(eigs, sc.m);
  const dps::Grid quad(sc.system.alpha1, sc.system.alpha2,
                       sc.nodes % 2 ? sc.nodes : sc.nodes + 1);
  const auto red = dps::build_slow_subsystem(sc.system, part, quad);
  dps::DesignProblem prob{red.A_s, red.C_s, sc.mu1, sc.mu2, sc.sigma, {}};
  const auto sol =
      dps::normalize_bandwidth(dps::solve_design(prob, {sc.seed, 5, 30000, 0.05}), sc.Gamma);
  const auto rep = dps::check_solution(prob, sol);
  std::cout << rep.to_string() << "\n";
  if (!sc.out_dir.empty()) {
    std::filesystem::create_directories(sc.out_dir);
    dps::save_design(sc.out_dir + "/gains.txt", sol);
    std::cout << "wrote " << sc.out_dir << "/gains.txt\n";
  }
  return rep.pass() ? 0 : 2;
}

int run_identify(const dps::Scenario& sc) {
  const auto r = dps::run_scenario(sc);
  std::printf("rmse %.6g\n", r.metrics.rmse);
  if (r.metrics.ideal_rmse) std::printf("ideal_rmse %.6g\n", *r.metrics.ideal_rmse);
  if (r.metrics.settle_time) std::printf("settle_time %.6g\n", *r.metrics.settle_time);
  if (!sc.out_dir.empty()) std::cout << "artifacts in " << sc.out_dir << "\n";
  return 0;
}

int run_reproduce(const std::string& what, const std::string& out, unsigned seed) {
  if (what == "table1") {
    const auto rows = dps::reproduce_table1(out.empty() ? "out/table1" : out, seed);
    std::printf("%-8s %-8s %-8s %-10s %s\n", "m", "n_y", "gamma", "rmse", "ideal_rmse");
    for (const auto& row : rows) {
      if (row.completed)
        std::printf("%-8d %-8d %-8g %-10.4f %.4f\n", row.m, row.n_y, row.gamma, row.rmse,
                    row.ideal_rmse);
      else
        std::printf("%-8d %-8d skipped: %s\n", row.m, row.n_y, row.note.c_str());
    }
    return 0;
  }
  if (what == "figures") {
    const std::string base = out.empty() ? "out/figures" : out;
    for (auto [name, sc] : {std::pair{std::string("abrupt"), dps::abrupt_scenario()},
                            std::pair{std::string("incipient"), dps::incipient_scenario()}}) {
      sc.out_dir = base + "/" + name;
      sc.seed = seed;
      const auto r = dps::run_scenario(sc);
      std::printf("%s: rmse %.4f (plot data in %s)\n", name.c_str(), r.metrics.rmse,
                  sc.out_dir.c_str());
    }
    return 0;
  }
  std::cerr << "unknown reproduce target '" << what << "' (use figures|table1)\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inverse spatio-temporal source identification for a 1-D parabolic plant"};
  app.require_subcommand(1);

  std::string config, out, pin, what;
  double dt = 0.01;
  int nodes = 201;
  unsigned seed = 1;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("config", config, "scenario config file")->required();
    cmd->add_option("--out", out, "output directory");
    cmd->add_option("--dt", dt, "time step override");
    cmd->add_option("--nodes", nodes, "spatial node count override");
    cmd->add_option("--pin-gains", pin, "design file with pinned gains");
    cmd->add_option("--seed", seed, "solver seed");
  };

  auto* sim = app.add_subcommand("simulate", "forward PDE run only");
  add_common(sim, true);
  auto* des = app.add_subcommand("design", "solve and certify observer gains");
  add_common(des, true);
  auto* ide = app.add_subcommand("identify", "full identification pipeline");
  add_common(ide, true);
  auto* rep = app.add_subcommand("reproduce", "bundled experiments (figures|table1)");
  rep->add_option("what", what, "figures or table1")->required();
  add_common(rep, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems exit 1
  }

  try {
    if (rep->parsed()) return run_reproduce(what, out, seed);
    CLI::App* active = app.get_subcommands().front();
    const dps::Scenario sc = scenario_from(config, out, dt, nodes, pin, seed,
                                           active->count("--seed") > 0,
                                           active->count("--dt") > 0,
                                           active->count("--nodes") > 0);
    if (sim->parsed()) return run_simulate(sc);
    if (des->parsed()) return run_design(sc);
    if (ide->parsed()) return run_identify(sc);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
