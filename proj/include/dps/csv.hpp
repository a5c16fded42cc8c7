#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace dps {

/// Fixed-format CSV writers ("%.12g", '\n' line endings) so repeated runs
/// produce byte-identical artifacts.
std::string format_number(double v);

/// Header `t,<names...>`; one row per time stamp.
void write_series_csv(const std::string& path, const std::vector<std::string>& names,
                      const std::vector<double>& t, const Eigen::MatrixXd& values);

/// Header `t,<z values...>`; rows are time-major field samples.
void write_field_csv(const std::string& path, const std::vector<double>& z_grid,
                     const std::vector<double>& t, const Eigen::MatrixXd& values);

/// Two-column key,value report.
void write_report_csv(const std::string& path,
                      const std::vector<std::pair<std::string, double>>& entries);

}  // namespace dps
