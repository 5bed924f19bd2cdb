#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "degenfront/kinetics.hpp"

namespace degenfront {

struct GridConfig {
  std::size_t n_nodes = 4001;
  double left_tol = 1e-8;
  double right_pad = 1.0;
  double phi_at_zero = 0.5;
};

struct SpectralConfig {
  std::vector<double> epsilons{1e-1, 1e-2, 1e-3, 1e-4};
  int n_refinements = 3;
  /// Grid for inline (non-file) spectral runs; the profile grid when unset.
  std::optional<std::size_t> n_nodes;
  std::size_t sweep_n_nodes = 1001;
};

struct InitialCondition {
  std::string kind = "gaussian";  // gaussian | random | shift | phi_x | zero
  double amplitude = 0.05;
  double center = 0.0;
  double width = 1.0;
  double shift = 0.1;
  int bumps = 6;
};

struct EvolutionConfig {
  double dt = 0.01;
  std::optional<double> t_end;  // linear run; 30 / |lambda1| when unset
  double theta = 1.0;
  double t_burn = 1.0;
  double nonlinear_t_end = 20.0;
  std::size_t track_every = 10;
  std::size_t snapshot_every = 0;
  InitialCondition initial;
};

struct RunConfig {
  std::optional<KineticsPair> kinetics;
  bool alpha_auto = false;
  GridConfig grid;
  SpectralConfig spectral;
  EvolutionConfig evolution;
  std::string output = "out";
  std::uint64_t seed = 0;
  std::optional<std::string> profile_path;
};

/// Validates and fills defaults; unknown keys and out-of-range values raise
/// ConfigError naming the key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

nlohmann::json kinetics_to_json(const KineticsPair& k);
KineticsPair kinetics_from_json(const nlohmann::json& j);

/// Canonical JSON of the resolved configuration.
nlohmann::json config_to_json(const RunConfig& c);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace degenfront
