#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "uas/scenario.hpp"

namespace uas {

/// Invalid configuration value. what() starts with the dotted field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Fig4Settings {
  std::vector<std::string> environments{"suburban", "urban"};
  std::vector<double> radii{400.0, 600.0, 800.0, 1000.0};
  std::vector<int> gn_counts{5, 10, 15, 20, 25, 30};
};

struct Fig5Settings {
  int n_cells = 10;
  std::vector<double> deltas{0.1, 0.5, 1.0, 2.0};
};

struct Fig6Settings {
  std::string environment = "suburban";
  int n_gns = 25;
  std::vector<double> radii{200.0, 400.0, 600.0, 800.0, 1000.0, 1200.0};
  std::vector<double> deltas{0.1, 0.5, 1.0, 2.0};
  std::vector<double> thresholds{0.9, 0.99, 0.999};
};

/// Everything a run needs, after defaults and command-line overrides.
struct RunConfig {
  ScenarioConfig scenario;
  Fig4Settings fig4;
  Fig5Settings fig5;
  Fig6Settings fig6;
};

/// Built-in reference setup (urban, R = 600 m, N = 15, reference radio).
RunConfig default_run_config();

/// Sections: region, radio, environment, traffic, experiment. Only radio is
/// mandatory, and when present every radio field is required. Angles are in
/// degrees. Throws ConfigError.
RunConfig parse_run_config(const nlohmann::json& doc);

/// Throws IoError if the file cannot be read, ConfigError if it is not a
/// valid configuration.
RunConfig load_run_config(const std::filesystem::path& path);

/// Canonical, fully resolved form (object keys sorted).
nlohmann::json to_json(const RunConfig& cfg);

/// 16 hex digits: FNV-1a 64 of the canonical JSON text.
std::string config_hash(const RunConfig& cfg);

/// Named preset, throwing ConfigError(field) for unknown names.
EnvironmentProfile resolve_environment(const std::string& name, const std::string& field);

}  // namespace uas
