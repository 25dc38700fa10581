#pragma once

// `key = value` configuration files. Keys follow the simulation parameter
// table: n_s, n_i, p_dbw, kappa_s, kappa_d, sigma_n2_dbw, d_si, d_v, d_sd_h,
// pl0_db, d0, gamma_si, gamma_id, gamma_sd. Blank lines and text after '#'
// are ignored. Unset keys keep their defaults.

#include <iosfwd>
#include <string>

#include "irsbf/channel.hpp"
#include "irsbf/model.hpp"

namespace irsbf {

struct RunConfig {
  SystemConfig system;
  Geometry geometry;
};

/// Throws ConfigError naming the key on unknown keys or unparsable values.
void apply_config_entry(RunConfig& rc, const std::string& key, const std::string& value);
RunConfig parse_config(std::istream& is, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

}  // namespace irsbf
