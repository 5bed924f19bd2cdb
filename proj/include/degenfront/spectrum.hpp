#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "degenfront/kinetics.hpp"
#include "degenfront/linop.hpp"
#include "degenfront/profile.hpp"

namespace degenfront {

struct ModeDiagnostics {
  /// Fraction of |v|^2 in x < x_L + 2.
  double mass_left = 0.0;
  /// |cos| of the angle between the eigenvector and the phi_x samples.
  double alignment_with_phi_x = 0.0;
  /// h (sum |v|^2)^2 / sum |v|^4, in units of x.
  double participation_length = 0.0;
  bool delocalized = false;
};

struct SpectrumReport {
  std::size_t n = 0;
  double h = 0.0;
  double epsilon = 0.0;
  /// Sorted by descending real part, ties by descending imaginary part.
  std::vector<std::complex<double>> eigenvalues;
  std::vector<ModeDiagnostics> modes;  // empty when vectors were not computed
  bool has_vectors = false;
  double max_imag = 0.0;
  double scale = 0.0;  // max |L_ij|
  double zero_tolerance = 0.0;
  std::size_t zero_index = 0;
  std::complex<double> lambda0;
  double zero_mode_alignment = 0.0;
  std::size_t second_index = 0;
  std::complex<double> lambda1;
  double gap = 0.0;
  double mu1 = 0.0;
  double beta = 0.0;
  double border_max = 0.0;  // max over k of both Fredholm borders
  /// Leading eigenvectors (first few of the sorted order), unit 2-norm.
  Eigen::MatrixXcd leading_vectors;
};

inline constexpr double kBetaMargin = 0.9;
inline constexpr double kDelocalizedFraction = 0.25;
inline constexpr int kLeadingVectors = 8;

struct SpectrumOptions {
  bool want_vectors = true;
};

SpectrumReport eigen_spectrum(const OperatorDiscretization& d, const KineticsPair& k,
                              const SpectrumOptions& opt = {});

/// max(5e-3, 10 h^2 s) with s the coefficient scale of the discretization.
double zero_tolerance(const OperatorDiscretization& d);

struct SpectrumClass {
  bool stable = false;
  bool gap_ok = false;
  bool zero_simple = false;
  std::vector<std::string> notes;
};

SpectrumClass classify_spectrum(const SpectrumReport& r, const KineticsPair& k);

struct SweepResult {
  std::vector<double> epsilons;  // as given, then 0
  std::vector<SpectrumReport> reports;
  std::vector<double> lambda1;
  bool continuity_ok = false;
  double continuity_at_smallest = 0.0;  // |lambda1(eps_min) - lambda1(0)|
  bool monotone_ok = false;
  int unstable_count = 0;  // eigenvalues with Re > 1e-2 other than lambda0, summed
  /// Largest real part among delocalized modes, per report.
  std::vector<double> delocalized_ceiling;
  bool delocalized_ok = false;
};

/// Threads from DEGENFRONT_THREADS, else the hardware concurrency.
unsigned sweep_threads();

SweepResult epsilon_sweep(const FrontProfile& p, const std::vector<double>& epsilons,
                          unsigned threads = 0);

/// Number of eigenvalues with Re > 1e-2 other than lambda0.
int unstable_count(const SpectrumReport& r);

/// Largest Re among eigenvalues whose eigenvectors carry >= 50% of their mass in x < x_L + 2.
double left_localized_ceiling(const SpectrumReport& r, bool* any = nullptr);

}  // namespace degenfront
