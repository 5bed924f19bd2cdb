#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "degenfront/evolution.hpp"
#include "degenfront/profile.hpp"
#include "degenfront/semigroup.hpp"
#include "degenfront/spectrum.hpp"

namespace degenfront {

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// "%.17g"
std::string format_double(double v);

/// Sidecar path: the CSV path with its extension replaced by .json.
std::string sidecar_path(const std::string& csv_path);

nlohmann::json profile_sidecar(const FrontProfile& p);
std::string profile_csv(const FrontProfile& p);

/// Writes x,phi,phi_x,phi_xx at 17 significant digits plus the JSON sidecar.
void write_profile_csv(const FrontProfile& p, const std::string& path);

struct ProfileReadResult {
  FrontProfile profile;
  /// omega0 of the sidecar differs from the CSV support of phi = 0 by more than h.
  bool omega0_inconsistent = false;
  std::vector<std::string> warnings;
};

ProfileReadResult read_profile_csv(const std::string& path);

nlohmann::json spectrum_to_json(const SpectrumReport& r);
/// re, im, localization_mass_left, alignment_with_phi_x
std::string eigenvalues_csv(const SpectrumReport& r);

std::string trajectory_csv(const Trajectory& t);
nlohmann::json decay_fit_to_json(const DecayFit& f);
/// t, residual, shift, min_v, max_v
std::string run_csv(const NonlinearRun& r);
std::string snapshot_csv(const std::vector<double>& x, const std::vector<double>& v);

}  // namespace degenfront
