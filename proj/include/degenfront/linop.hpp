#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "degenfront/kinetics.hpp"
#include "degenfront/profile.hpp"

namespace degenfront {

/// Tridiagonal discretization of u -> (D_eps(phi) u)_xx + f'(phi) u on the interior
/// nodes with homogeneous Dirichlet ends:
///   (L u)_i = (De_{i-1} u_{i-1} - 2 De_i u_i + De_{i+1} u_{i+1}) / h^2 + f'_i u_i.
struct OperatorDiscretization {
  std::vector<double> x;       // interior nodes
  double h = 0.0;
  double epsilon = 0.0;
  std::vector<double> weight;  // D(phi) at interior nodes
  std::vector<double> d_eps;   // D(phi) + epsilon
  std::vector<double> fprime;  // f'(phi)
  std::vector<double> lower;   // L(i, i-1), lower[0] = 0
  std::vector<double> diag;    // L(i, i)
  std::vector<double> upper;   // L(i, i+1), upper[n-1] = 0
  /// phi_x at the interior nodes (empty for coefficient-only assemblies).
  std::vector<double> phi_x;
  double x_left = 0.0;   // Dirichlet ends
  double x_right = 0.0;
  double omega0 = 0.0;

  std::size_t n() const { return diag.size(); }
  Eigen::MatrixXd dense() const;
  /// Largest absolute entry of L.
  double max_abs() const;
  /// Coefficient scale max|f'| + max D_eps used by the zero tolerance.
  double coefficient_scale() const;
};

OperatorDiscretization assemble_operator(const FrontProfile& p, double epsilon = 0.0);

/// Assembly from nodal coefficients on a uniform grid of interior nodes.
OperatorDiscretization assemble_from_coefficients(const std::vector<double>& x_interior,
                                                  const std::vector<double>& D,
                                                  const std::vector<double>& fprime,
                                                  double epsilon = 0.0);

std::vector<double> apply_L(const OperatorDiscretization& d, const std::vector<double>& u);
std::vector<double> apply_LT(const OperatorDiscretization& d, const std::vector<double>& u);

/// u^T W L u h with W = diag(D(phi)).
double weighted_product(const OperatorDiscretization& d, const std::vector<double>& u);

/// Q(u) = -int_{x < omega0} g^2,  g = (D(phi) u)_x + (f(phi)/phi_x) u,
/// with (D u)_x by fourth-order central differences on the zero-padded grid.
double weighted_form(const FrontProfile& p, const std::vector<double>& u);

struct FredholmBorders {
  std::vector<double> plus;   // -eps k^2 + f'(0)
  std::vector<double> minus;  // -(eps + D(1)) k^2 + f'(1)
};

FredholmBorders fredholm_borders(const KineticsPair& k, double epsilon,
                                 const std::vector<double>& k_samples);

/// Matrix Market coordinate dump of L.
void write_matrix_market(const OperatorDiscretization& d, const std::string& path);

}  // namespace degenfront
