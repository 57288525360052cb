#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "polyqp/isoenergetic.hpp"
#include "polyqp/synthesis.hpp"

namespace polyqp {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSettings {
  int phi_resolution = 1024;
  int k_grid = 64;
  GridSpec spatial;
};

struct ExperimentConfig {
  PotentialSpec potential;
  GrowthSchedule schedule;
  ResonanceThresholds thresholds;
  SelectionFloors floors;
  RadialSolveOptions radial;
  GridSettings grids;
  std::vector<double> lambdas;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string out_dir = "out";
};

// Strict parse: unknown fields are rejected at every level.
// Throws ConfigError (semantic) or nlohmann::json::exception (parse).
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

// Canonical re-serialization (sorted keys, fixed float format) and its
// FNV-1a hash; stable across runs.
std::string canonical_config_json(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

struct RunManifest {
  std::uint64_t config_hash = 0;
  std::string version;
  std::vector<std::string> outputs;
  double wall_seconds = 0;
};

void write_manifest(const RunManifest& m, const std::string& path);

inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace polyqp
