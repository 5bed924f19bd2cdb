#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "degenfront/profile.hpp"

namespace degenfront {

struct ShiftEstimate {
  double shift = 0.0;
  double distance = 0.0;  // discrete L2 distance at the minimizer
  bool at_boundary = false;
};

/// argmin over s in [-2, 2] of || v - phi(. - s) || by golden-section search,
/// with phi(. - s) from monotone cubic interpolation of the profile samples.
class ShiftModulator {
 public:
  explicit ShiftModulator(const FrontProfile& p);
  ~ShiftModulator();
  ShiftModulator(const ShiftModulator&) = delete;
  ShiftModulator& operator=(const ShiftModulator&) = delete;

  /// phi(x_i - s) on all profile nodes.
  std::vector<double> translate(double s) const;
  double distance(const std::vector<double>& v, double s) const;
  ShiftEstimate estimate(const std::vector<double>& v) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// `v_snapshot` holds all profile nodes, boundaries included.
ShiftEstimate modulate_shift(const std::vector<double>& v_snapshot, const FrontProfile& p);

/// phi(x_i - s) at the profile nodes from the exact level inversion.
std::vector<double> shifted_front(const FrontProfile& p, double s);

struct NonlinearRecord {
  double t = 0.0;
  double residual = 0.0;  // || v - phi(. - s) ||
  double shift = 0.0;
  double min_v = 0.0;
  double max_v = 0.0;
};

struct RangeFlag {
  double t = 0.0;
  double min_v = 0.0;
  double max_v = 0.0;
};

using FullStateObserver =
    std::function<void(std::size_t step, double t, const std::vector<double>& v)>;

struct NonlinearOptions {
  double t_end = 20.0;
  double dt = 0.01;
  std::size_t track_every = 10;  // steps between shift/residual records
  bool track_shift = true;
  double range_delta = 0.05;
  double abort_excursion = 0.5;
  FullStateObserver observer;
};

struct NonlinearRun {
  std::vector<NonlinearRecord> records;
  std::vector<RangeFlag> range_flags;
  std::vector<double> v_final;
  /// max over steps of max_i |v_i - phi_i|.
  double max_drift = 0.0;
  /// Set when v left [-delta, 1 + delta] in the degenerate region x > omega0, where
  /// results depend on the polynomial extension of D and f.
  bool extension_dependent = false;
};

/// Degenerate PDE v_t = (D(v) v_x)_x + f(v) around the front, v = phi + u.
///
/// The flux is the second difference of the Kirchhoff potential Phi(v) = int_0^v D,
/// i.e. conservation form with the face diffusivity equal to the mean of D between
/// neighbouring values. Steps are linearly implicit Euler with the full Jacobian
/// T diag(D(v)) + diag(f'(v)) frozen at the previous level. The discrete residual
/// of the sampled front is subtracted so that u = 0 stays stationary exactly.
/// `u0` lives on the interior nodes.
NonlinearRun evolve_nonlinear(const FrontProfile& p, const std::vector<double>& u0,
                              const NonlinearOptions& opt = {});

struct ConsistencyResult {
  std::vector<double> deltas;
  std::vector<double> discrepancy;  // max_t || u_nonlinear - u_linear ||
  std::vector<double> orders;
  double min_order = 0.0;
};

/// Compares nonlinear and linear (implicit Euler) runs from u0 = delta * shape.
ConsistencyResult linear_nonlinear_consistency(const FrontProfile& p,
                                               const std::vector<double>& shape,
                                               const std::vector<double>& deltas,
                                               double t_end = 5.0, double dt = 0.01);

}  // namespace degenfront
