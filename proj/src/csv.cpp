#include "dps/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace dps {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::ofstream open_csv(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);  // '\n' endings everywhere
  if (!out) throw std::runtime_error("cannot write: " + path);
  return out;
}

}  // namespace

void write_series_csv(const std::string& path, const std::vector<std::string>& names,
                      const std::vector<double>& t, const Eigen::MatrixXd& values) {
  if (values.rows() != static_cast<Eigen::Index>(t.size()) ||
      values.cols() != static_cast<Eigen::Index>(names.size()))
    throw std::invalid_argument("write_series_csv: shape mismatch");
  auto out = open_csv(path);
  out << "t";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (Eigen::Index k = 0; k < values.rows(); ++k) {
    out << format_number(t[static_cast<size_t>(k)]);
    for (Eigen::Index j = 0; j < values.cols(); ++j) out << ',' << format_number(values(k, j));
    out << '\n';
  }
}

void write_field_csv(const std::string& path, const std::vector<double>& z_grid,
                     const std::vector<double>& t, const Eigen::MatrixXd& values) {
  if (values.rows() != static_cast<Eigen::Index>(t.size()) ||
      values.cols() != static_cast<Eigen::Index>(z_grid.size()))
    throw std::invalid_argument("write_field_csv: shape mismatch");
  auto out = open_csv(path);
  out << "t";
  for (double z : z_grid) out << ',' << format_number(z);
  out << '\n';
  for (Eigen::Index k = 0; k < values.rows(); ++k) {
    out << format_number(t[static_cast<size_t>(k)]);
    for (Eigen::Index j = 0; j < values.cols(); ++j) out << ',' << format_number(values(k, j));
    out << '\n';
  }
}

void write_report_csv(const std::string& path,
                      const std::vector<std::pair<std::string, double>>& entries) {
  auto out = open_csv(path);
  out << "metric,value\n";
  for (const auto& [k, v] : entries) out << k << ',' << format_number(v) << '\n';
}

}  // namespace dps
