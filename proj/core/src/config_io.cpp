#include "irsbf/config_io.hpp"

#include <fstream>
#include <sstream>

namespace irsbf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size())
    throw ConfigError(key, "config value for " + key + " is not a number: '" + value + "'");
  return x;
}

int to_int(const std::string& key, const std::string& value) {
  const double x = to_double(key, value);
  if (x != static_cast<double>(static_cast<int>(x)))
    throw ConfigError(key, "config value for " + key + " must be an integer");
  return static_cast<int>(x);
}

}  // namespace

void apply_config_entry(RunConfig& rc, const std::string& key, const std::string& value) {
  SystemConfig& s = rc.system;
  Geometry& g = rc.geometry;
  if (key == "n_s") s.n_s = to_int(key, value);
  else if (key == "n_i") s.n_i = to_int(key, value);
  else if (key == "p_dbw") s.p = db_to_linear(to_double(key, value));
  else if (key == "kappa_s") s.kappa_s = to_double(key, value);
  else if (key == "kappa_d") s.kappa_d = to_double(key, value);
  else if (key == "sigma_n2_dbw") s.sigma_n2 = db_to_linear(to_double(key, value));
  else if (key == "d_si") g.d_si = to_double(key, value);
  else if (key == "d_v") g.d_v = to_double(key, value);
  else if (key == "d_sd_h") g.d_sd_h = to_double(key, value);
  else if (key == "pl0_db") g.pl0_db = to_double(key, value);
  else if (key == "d0") g.d0 = to_double(key, value);
  else if (key == "gamma_si") g.gamma_si = to_double(key, value);
  else if (key == "gamma_id") g.gamma_id = to_double(key, value);
  else if (key == "gamma_sd") g.gamma_sd = to_double(key, value);
  else throw ConfigError(key, "unknown config key: " + key);
}

RunConfig parse_config(std::istream& is, RunConfig base) {
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "config line " + std::to_string(line_no) + " has no '='");
    apply_config_entry(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  validate_config(base.system);
  check_geometry(base.geometry);
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_config(in, std::move(base));
}

}  // namespace irsbf
