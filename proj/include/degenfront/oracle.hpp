#pragma once

#include <vector>

#include "degenfront/linop.hpp"
#include "degenfront/profile.hpp"

namespace degenfront {

/// Eigenvalues of L through its symmetric form, descending.
///
/// Columns of nodes with D_eps = 0 vanish off the diagonal, so L is block lower
/// triangular; the remaining block T D + F is similar to D^{1/2} T D^{1/2} + F.
std::vector<double> symmetrized_eigenvalues(const OperatorDiscretization& d);

/// Largest eigenvalue other than the one nearest zero.
double symmetrized_lambda1(const OperatorDiscretization& d);

struct RichardsonOracle {
  std::vector<std::size_t> n_nodes;
  std::vector<double> lambda1;
  /// Observed refinement order from the three levels.
  double order = 0.0;
  /// Second-order Richardson extrapolation from the two finest levels.
  double extrapolated = 0.0;
};

/// n_nodes must double in intervals, e.g. {1001, 2001, 4001}.
RichardsonOracle lambda1_oracle(const KineticsPair& k, double phi_at_zero,
                                const ExtentOptions& extent,
                                const std::vector<std::size_t>& n_nodes = {1001, 2001, 4001});

/// Observed order log2(|a - b| / |b - c|) for three successive halvings.
double observed_order(double a, double b, double c);

}  // namespace degenfront
