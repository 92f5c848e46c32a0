#pragma once

#include <string>

#include "seebf/config.hpp"
#include "seebf/experiments.hpp"

namespace seebf {

/// JSON text to SystemConfig. Keys are the SystemConfig field names; fields
/// left out keep the default-scenario values. Unit variants are accepted for
/// power (`*_dbm` for `*_w`), bandwidth (`bandwidth_khz`), carrier
/// (`carrier_mhz`, `carrier_ghz`) and rate (`r_aux_knats_s`). Syntax errors
/// and bad values throw ParseError with the offending line.
SystemConfig parse_config(const std::string& text);
/// Canonical JSON: every field, sorted keys, SI units.
std::string dump_config(const SystemConfig& c);

SystemConfig load_config(const std::string& path);
void save_config(const SystemConfig& c, const std::string& path);

/// An experiment file is a config with an extra "experiment" object holding
/// id, grid, trials, master_seed and grid_divisions. Missing experiment
/// fields take the defaults of the named experiment.
ExperimentSpec parse_experiment(const std::string& text);
std::string dump_experiment(const ExperimentSpec& s);

ExperimentSpec load_experiment(const std::string& path);
void save_experiment(const ExperimentSpec& s, const std::string& path);

}  // namespace seebf
