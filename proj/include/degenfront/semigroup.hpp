#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "degenfront/linop.hpp"
#include "degenfront/profile.hpp"

namespace degenfront {

/// Adjoint zero mode psi = (D(phi)/D0) phi_x, Theta = <psi, phi_x> and the
/// projection P u = u - <u, psi> phi_x / Theta, all on the interior nodes.
///
/// The sampled phi_x is a kernel vector of L only up to O(h^2). For exact
/// invariance under the discrete flow the discrete kernel v0 and co-kernel w0 of L
/// can be attached; P_d u = u - (w0 . u) v0 is then the discrete spectral projector.
struct ProjectionData {
  std::vector<double> psi;
  std::vector<double> phi_x;
  double theta = 0.0;
  /// psi at the two boundary nodes, for stencil residuals.
  double psi_left = 0.0;
  double psi_right = 0.0;
  double D0 = 0.0;
  double x0 = 0.0;
  double h = 0.0;

  std::vector<double> kernel;    // unit 2-norm, oriented like phi_x
  std::vector<double> cokernel;  // scaled so that cokernel . kernel = 1
  double kernel_eigenvalue = 0.0;
  bool has_discrete = false;
};

ProjectionData build_projection(const FrontProfile& p, double x0_anchor = 0.0);

/// Fills kernel/cokernel by inverse iteration on L and L^T (epsilon = 0 operator).
void attach_discrete_kernel(ProjectionData& pd, const OperatorDiscretization& d);

std::vector<double> project(const ProjectionData& pd, const std::vector<double>& u);
std::vector<double> project_discrete(const ProjectionData& pd, const std::vector<double>& u);
/// The discrete projector when attached, else the sampled one.
std::vector<double> project_best(const ProjectionData& pd, const std::vector<double>& u);

/// ||L^T psi|| / ||psi|| with the boundary samples of psi kept in the stencil.
double adjoint_residual(const OperatorDiscretization& d, const ProjectionData& pd);

struct Eta0Bound {
  double C0 = 0.0;
  double M_ratio = 0.0;
  double epsilon_star = 0.0;
  double eta0 = 0.0;
  /// D(phi)_x^2 / D(phi) at omega0 from the left and at the far-left node.
  double ratio_limit_omega0 = 0.0;
  double ratio_left_end = 0.0;
};

/// C0 = max |D(phi)_xx / 2 + f'(phi)|, M = max_{x < omega0} D(phi)_x^2 / D(phi),
/// eta0 = C0 + M / 2.
Eta0Bound eta0_bound(const FrontProfile& p);

struct ResolventSample {
  std::complex<double> lambda;
  double smin = 0.0;
  double bound = 0.0;  // 0.95 |lambda - eta0| / 2
  bool bound_ok = false;
};

/// Smallest singular value of lambda I - L (square root of the least eigenvalue of
/// the pentadiagonal Hermitian (lambda I - L)^H (lambda I - L)).
double smallest_singular_value(const OperatorDiscretization& d, std::complex<double> lambda);

std::vector<ResolventSample> resolvent_check(const OperatorDiscretization& d, double eta0,
                                             const std::vector<std::complex<double>>& samples);

struct Trajectory {
  std::vector<double> t;
  std::vector<double> norm_u;
  std::vector<double> norm_Pu;
  std::vector<double> u_final;
};

using StateObserver = std::function<void(std::size_t step, double t, const std::vector<double>& u)>;

/// theta scheme (I - theta dt L) u+ = (I + (1 - theta) dt L) u.
Trajectory evolve_linear(const OperatorDiscretization& d, const std::vector<double>& u0,
                         double t_end, double dt = 0.01, double theta_scheme = 1.0,
                         const ProjectionData* pd = nullptr, const StateObserver& observer = {});

struct DecayFit {
  std::vector<double> times;
  std::vector<double> norms;
  double fitted_rate = 0.0;
  double r_squared = 0.0;
  double window_start = 0.0;
  double window_end = 0.0;
  double prefactor = 0.0;
  bool rejected = false;
  std::string note;
};

inline constexpr double kNormFloor = 1e-14;
/// Relative spread of the fitted norms below which the run counts as non-decaying.
inline constexpr double kFlatSpread = 1e-3;

DecayFit fit_decay(const Trajectory& traj, double t_burn = 1.0);

}  // namespace degenfront
