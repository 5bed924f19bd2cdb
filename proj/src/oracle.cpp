#include "degenfront/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "degenfront/error.hpp"
#include "degenfront/lapack.hpp"

namespace degenfront {

std::vector<double> symmetrized_eigenvalues(const OperatorDiscretization& d) {
  const std::size_t n = d.n();
  const double ih2 = 1.0 / (d.h * d.h);
  std::vector<double> out;
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i) {
    if (d.d_eps[i] > 0.0) {
      active.push_back(i);
    } else {
      out.push_back(d.diag[i]);
    }
  }
  std::vector<double> diag(active.size()), off(active.size(), 0.0);
  for (std::size_t a = 0; a < active.size(); ++a) {
    const std::size_t i = active[a];
    diag[a] = d.diag[i];
    if (a + 1 < active.size() && active[a + 1] == i + 1) {
      off[a] = std::sqrt(d.d_eps[i] * d.d_eps[i + 1]) * ih2;
    }
  }
  const auto ev = lapack::dstev(diag, off);
  out.insert(out.end(), ev.begin(), ev.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double symmetrized_lambda1(const OperatorDiscretization& d) {
  const auto ev = symmetrized_eigenvalues(d);
  if (ev.size() < 2) throw Error("operator too small for a second eigenvalue");
  std::size_t z = 0;
  for (std::size_t i = 1; i < ev.size(); ++i) {
    if (std::abs(ev[i]) < std::abs(ev[z])) z = i;
  }
  return z == 0 ? ev[1] : ev[0];
}

double observed_order(double a, double b, double c) {
  const double d1 = std::abs(a - b);
  const double d2 = std::abs(b - c);
  if (d2 == 0.0) return 99.0;
  return std::log2(d1 / d2);
}

RichardsonOracle lambda1_oracle(const KineticsPair& k, double phi_at_zero,
                                const ExtentOptions& extent,
                                const std::vector<std::size_t>& n_nodes) {
  if (n_nodes.size() != 3) throw Error("oracle needs three refinement levels");
  RichardsonOracle o;
  o.n_nodes = n_nodes;
  for (std::size_t n : n_nodes) {
    const auto p = solve_profile(k, phi_at_zero, extent, n);
    o.lambda1.push_back(symmetrized_lambda1(assemble_operator(p, 0.0)));
  }
  o.order = observed_order(o.lambda1[0], o.lambda1[1], o.lambda1[2]);
  o.extrapolated = o.lambda1[2] + (o.lambda1[2] - o.lambda1[1]) / 3.0;
  return o;
}

}  // namespace degenfront
