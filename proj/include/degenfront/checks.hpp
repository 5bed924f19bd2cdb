#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "degenfront/kinetics.hpp"
#include "degenfront/profile.hpp"
#include "degenfront/spectrum.hpp"

namespace degenfront {

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus s);

struct CheckResult {
  int id = 0;
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  std::string detail;
  double seconds = 0.0;
};

struct CheckContext {
  KineticsPair kinetics = KineticsPair::quadratic_cubic(1.0, 0.625);
  double phi_at_zero = 0.5;
  ExtentOptions extent;
  std::uint64_t seed = 20240601;
};

/// True for D = u^2 + u with f cubic at alpha = 5/8 and phi(0) = 1/2, the case
/// with published reference numbers.
bool is_reference_case(const CheckContext& c);

inline constexpr int kCriteriaCount = 11;

/// Runs the acceptance criteria, sharing profiles and eigensolves between them.
class AcceptanceSuite {
 public:
  explicit AcceptanceSuite(CheckContext ctx);
  ~AcceptanceSuite();

  CheckResult run(int id);
  std::vector<CheckResult> run_all(const std::function<void(const CheckResult&)>& on_result = {});

  const FrontProfile& profile(std::size_t n_nodes);
  const SpectrumReport& spectrum(std::size_t n_nodes);

 private:
  CheckResult balance();
  CheckResult arrival();
  CheckResult decay_rates();
  CheckResult zero_mode();
  CheckResult real_gap();
  CheckResult energy();
  CheckResult projection();
  CheckResult resolvent();
  CheckResult semigroup();
  CheckResult regularization();
  CheckResult nonlinear();

  CheckContext ctx_;
  std::map<std::size_t, FrontProfile> profiles_;
  std::map<std::size_t, SpectrumReport> spectra_;
};

std::string format_check_line(const CheckResult& r);

}  // namespace degenfront
