#pragma once

#include <memory>
#include <vector>

#include "degenfront/kinetics.hpp"
#include "degenfront/polynomial.hpp"

namespace degenfront {

/// Level of the front at a point: phi and the gap w = 1 - phi, the latter kept
/// separately so that the exponential tail at -infinity stays resolved.
struct Level {
  double phi = 0.0;
  double w = 1.0;
};

/// Analytic description of the stationary decreasing front for balanced kinetics.
///
/// With 𝒟 = phi^3 (1 - phi)^2 K(phi), q = D/phi and fr = f/(phi (1 - phi)),
///   phi_x = -sqrt(phi) (1 - phi) s / q,   s = sqrt(-2K),
/// which is regular at both ends. Positions come from x(phi) = -int dphi / phi_x,
/// integrated in t = sqrt(phi) towards 0 and in tau = -log(1 - phi) towards 1.
class FrontShape {
 public:
  FrontShape(const KineticsPair& k, double phi_at_zero);

  const KineticsPair& kinetics() const { return k_; }
  double phi_at_zero() const { return phi0_; }
  double omega0() const { return omega0_; }
  /// Error estimate reported by the adaptive quadrature for omega0.
  double omega0_error() const { return omega0_err_; }

  double K(double phi) const { return K_(phi); }
  double q(double phi) const { return q_(phi); }
  double fr(double phi) const { return fr_(phi); }
  double s(double phi) const;

  double phi_x(const Level& l) const;
  double phi_xx(const Level& l) const;
  /// D(phi) phi_xx / phi_x = sqrt(phi) fr q / s - D'(phi) phi_x.
  double ratio(double phi, double phi_x) const;
  /// f(phi) / phi_x = -sqrt(phi) fr q / s.
  double f_over_phi_x(double phi) const;
  /// phi_x^2 / D(phi) = w^2 s^2 / q^3.
  double phi_x_sq_over_D(const Level& l) const;

  /// phi_xx at omega0 from the left; the right limit is 0.
  double phi_xx_left_limit() const;

  /// x at which the front takes the level phi in (0, 1).
  double position_of(double phi) const;
  /// x at which 1 - phi = w, for w in (0, 1).
  double position_of_gap(double w) const;
  /// Level at x; 0 for x >= omega0.
  Level level_at(double x) const;

  /// t-integrand 2 q / (w s) of omega0 - x.
  double right_integrand(double t) const;
  /// tau-integrand q / (sqrt(phi) s) of -x.
  double left_integrand(double tau) const;

 private:
  KineticsPair k_;
  double phi0_;
  Polynomial K_, q_, fr_;
  double omega0_ = 0.0;
  double omega0_err_ = 0.0;
  double t0_ = 0.0;
  double tau0_ = 0.0;
};

struct Anchor {
  double x = 0.0;
  double phi = 0.5;
};

struct ResidualStats {
  /// max |D(phi) phi_x + sqrt(-2 𝒟(phi))| over nodes left of omega0.
  double first_order = 0.0;
  /// max |(D(phi) phi_x)_x + f(phi)| by fourth-order central differences on
  /// stencils lying left of omega0.
  double second_order = 0.0;
};

struct ExtentOptions {
  double left_tol = 1e-8;
  double right_pad = 1.0;
};

struct FrontProfile {
  std::vector<double> x;
  std::vector<double> phi;
  std::vector<double> phi_x;
  std::vector<double> phi_xx;
  double omega0 = 0.0;
  double h = 0.0;
  Anchor anchor;
  ExtentOptions extent;
  double phi_xx_left_limit = 0.0;
  ResidualStats residuals;
  std::shared_ptr<const FrontShape> shape;

  const KineticsPair& kinetics() const { return shape->kinetics(); }
  std::size_t size() const { return x.size(); }
  /// Index of the first node with x >= omega0.
  std::size_t first_degenerate() const;
};

/// Stationary decreasing front sampled on a uniform grid over [x_L, omega0 + right_pad]
/// with 1 - phi(x_L) = left_tol.
FrontProfile solve_profile(const KineticsPair& k, double phi_at_zero = 0.5,
                           const ExtentOptions& extent = {}, std::size_t n_nodes = 4001);

/// Rebuilds the shape of a profile whose arrays were loaded from disk.
FrontProfile profile_from_samples(const KineticsPair& k, const Anchor& anchor,
                                  const ExtentOptions& extent, std::vector<double> x,
                                  std::vector<double> phi, std::vector<double> phi_x,
                                  std::vector<double> phi_xx, double omega0);

ResidualStats profile_residuals(const FrontProfile& p);

struct AsymptoticRates {
  double eta = 0.0;
  double a0 = 0.0;
  double curvature_limit = 0.0;
  double ratio_sup = 0.0;

  double eta_measured = 0.0;
  double a0_measured = 0.0;
  double curvature_measured = 0.0;
  /// Coefficient of phi^{3/2} in phi_x = -a0 sqrt(phi) + b0 phi^{3/2} + ...
  double b0_measured = 0.0;
};

AsymptoticRates asymptotic_rates(const FrontProfile& p);

struct RatioBound {
  double sup_value = 0.0;
  double limit_left_infinity = 0.0;
  double limit_at_omega0 = 0.0;
};

RatioBound ratio_bound_sup(const FrontProfile& p);

struct ArrivalConvergence {
  std::vector<int> panels;
  std::vector<double> omega0;
  double order = 0.0;
};

/// omega0 by composite three-point Gauss-Legendre in t with 2, 4, 8 panels.
ArrivalConvergence arrival_point_convergence(const FrontShape& s);

}  // namespace degenfront
