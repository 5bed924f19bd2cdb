#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "degenfront/config.hpp"

namespace degenfront {

enum class Subcommand { front, spectrum, evolve, sweep, check, report };

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

std::optional<Subcommand> parse_subcommand(const std::string& name);
std::string to_string(Subcommand s);

/// Runs one subcommand and writes its artifacts under cfg.output. Returns 0, or 1
/// when `check` has a failing criterion. Errors propagate; files written by the
/// failed run are removed first.
int run_subcommand(Subcommand cmd, const RunConfig& cfg, std::ostream& log);

/// Loads the config, applies overrides and maps errors to exit codes.
int dispatch(const std::string& subcommand, const std::string& config_path,
             const std::optional<std::string>& out_dir, const std::optional<std::uint64_t>& seed,
             std::ostream& log, std::ostream& err);

}  // namespace degenfront
