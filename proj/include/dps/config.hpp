#pragma once

#include <map>
#include <string>
#include <vector>

namespace dps {

/// INI-style configuration: [section] headers, key = value lines, '#' or ';'
/// comments. Values may be single tokens or whitespace-separated lists.
/// Numeric tokens accept plain literals and pi expressions:
///   pi, 2pi, pi/4, 3pi/4, -pi/2, ...
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double number(const std::string& section, const std::string& key) const;
  double number_or(const std::string& section, const std::string& key, double fallback) const;
  int integer(const std::string& section, const std::string& key) const;
  int integer_or(const std::string& section, const std::string& key, int fallback) const;
  std::vector<std::string> tokens(const std::string& section, const std::string& key) const;
  std::vector<double> numbers(const std::string& section, const std::string& key) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Parses one numeric token (plain double or pi expression).
double parse_number(const std::string& token);

}  // namespace dps
