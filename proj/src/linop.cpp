#include "degenfront/linop.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "degenfront/error.hpp"

namespace degenfront {

namespace {

void fill_bands(OperatorDiscretization& d) {
  const std::size_t n = d.d_eps.size();
  const double ih2 = 1.0 / (d.h * d.h);
  d.lower.assign(n, 0.0);
  d.diag.assign(n, 0.0);
  d.upper.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    d.diag[i] = -2.0 * d.d_eps[i] * ih2 + d.fprime[i];
    if (i > 0) d.lower[i] = d.d_eps[i - 1] * ih2;
    if (i + 1 < n) d.upper[i] = d.d_eps[i + 1] * ih2;
  }
}

}  // namespace

Eigen::MatrixXd OperatorDiscretization::dense() const {
  const auto m = static_cast<Eigen::Index>(n());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    L(i, i) = diag[i];
    if (i > 0) L(i, i - 1) = lower[i];
    if (i + 1 < m) L(i, i + 1) = upper[i];
  }
  return L;
}

double OperatorDiscretization::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < n(); ++i) {
    m = std::max({m, std::abs(lower[i]), std::abs(diag[i]), std::abs(upper[i])});
  }
  return m;
}

double OperatorDiscretization::coefficient_scale() const {
  double f = 0.0, D = 0.0;
  for (double v : fprime) f = std::max(f, std::abs(v));
  for (double v : d_eps) D = std::max(D, std::abs(v));
  return f + D;
}

OperatorDiscretization assemble_from_coefficients(const std::vector<double>& x_interior,
                                                  const std::vector<double>& D,
                                                  const std::vector<double>& fprime,
                                                  double epsilon) {
  const std::size_t n = x_interior.size();
  if (n < 1 || D.size() != n || fprime.size() != n) {
    throw Error("assemble: coefficient arrays have inconsistent lengths");
  }
  if (epsilon < 0.0) throw Error("assemble: epsilon must be nonnegative");
  OperatorDiscretization d;
  d.x = x_interior;
  d.h = n > 1 ? x_interior[1] - x_interior[0] : 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(x_interior[i] - x_interior[i - 1] - d.h) > 1e-9 * std::max(1.0, d.h)) {
      throw Error("assemble: non-uniform grid");
    }
  }
  if (!(d.h > 0.0)) throw Error("assemble: non-uniform grid");
  d.epsilon = epsilon;
  d.weight = D;
  d.d_eps.resize(n);
  for (std::size_t i = 0; i < n; ++i) d.d_eps[i] = D[i] + epsilon;
  d.fprime = fprime;
  d.x_left = x_interior.front() - d.h;
  d.x_right = x_interior.back() + d.h;
  d.omega0 = d.x_right;
  fill_bands(d);
  return d;
}

OperatorDiscretization assemble_operator(const FrontProfile& p, double epsilon) {
  const KineticsPair& k = p.kinetics();
  const std::size_t n = p.size() - 2;
  std::vector<double> xi(p.x.begin() + 1, p.x.end() - 1);
  std::vector<double> D(n), fp(n);
  for (std::size_t i = 0; i < n; ++i) {
    D[i] = k.D(p.phi[i + 1]);
    fp[i] = k.fp(p.phi[i + 1]);
  }
  OperatorDiscretization d = assemble_from_coefficients(xi, D, fp, epsilon);
  d.h = p.h;
  fill_bands(d);
  d.phi_x.assign(p.phi_x.begin() + 1, p.phi_x.end() - 1);
  d.x_left = p.x.front();
  d.x_right = p.x.back();
  d.omega0 = p.omega0;
  return d;
}

std::vector<double> apply_L(const OperatorDiscretization& d, const std::vector<double>& u) {
  const std::size_t n = d.n();
  if (u.size() != n) throw Error("apply_L: dimension mismatch");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = d.diag[i] * u[i];
    if (i > 0) v += d.lower[i] * u[i - 1];
    if (i + 1 < n) v += d.upper[i] * u[i + 1];
    out[i] = v;
  }
  return out;
}

std::vector<double> apply_LT(const OperatorDiscretization& d, const std::vector<double>& u) {
  const std::size_t n = d.n();
  if (u.size() != n) throw Error("apply_LT: dimension mismatch");
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = d.diag[j] * u[j];
    if (j > 0) v += d.upper[j - 1] * u[j - 1];
    if (j + 1 < n) v += d.lower[j + 1] * u[j + 1];
    out[j] = v;
  }
  return out;
}

double weighted_product(const OperatorDiscretization& d, const std::vector<double>& u) {
  const auto Lu = apply_L(d, u);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * d.weight[i] * Lu[i];
  return s * d.h;
}

double weighted_form(const FrontProfile& p, const std::vector<double>& u) {
  const std::size_t N = p.size();
  if (u.size() != N - 2) throw Error("weighted_form: dimension mismatch");
  const KineticsPair& k = p.kinetics();
  // node-indexed D(phi) u with two layers of zero padding beyond the Dirichlet ends
  std::vector<double> Du(N + 2, 0.0);
  for (std::size_t i = 0; i + 2 < N; ++i) Du[i + 2] = k.D(p.phi[i + 1]) * u[i];
  const std::size_t m = p.first_degenerate();
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < N && i < m; ++i) {
    const std::size_t c = i + 1;
    const double dDu = (Du[c - 2] - 8.0 * Du[c - 1] + 8.0 * Du[c + 1] - Du[c + 2]) / (12.0 * p.h);
    const double g = dDu + p.shape->f_over_phi_x(p.phi[i]) * u[i - 1];
    sum += g * g;
  }
  return -p.h * sum;
}

FredholmBorders fredholm_borders(const KineticsPair& k, double epsilon,
                                 const std::vector<double>& k_samples) {
  FredholmBorders b;
  const double fp0 = k.fp(0.0), fp1 = k.fp(1.0), D1 = k.D(1.0);
  for (double kk : k_samples) {
    b.plus.push_back(-epsilon * kk * kk + fp0);
    b.minus.push_back(-(epsilon + D1) * kk * kk + fp1);
  }
  return b;
}

void write_matrix_market(const OperatorDiscretization& d, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path);
  const std::size_t n = d.n();
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < n; ++i) {
    nnz += (d.diag[i] != 0.0) + (i > 0 && d.lower[i] != 0.0) + (i + 1 < n && d.upper[i] != 0.0);
  }
  os << "%%MatrixMarket matrix coordinate real general\n" << n << ' ' << n << ' ' << nnz << '\n';
  char buf[64];
  auto put = [&](std::size_t r, std::size_t c, double v) {
    if (v == 0.0) return;
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << r + 1 << ' ' << c + 1 << ' ' << buf << '\n';
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) put(i, i - 1, d.lower[i]);
    put(i, i, d.diag[i]);
    if (i + 1 < n) put(i, i + 1, d.upper[i]);
  }
  if (!os) throw Error("failed writing " + path);
}

}  // namespace degenfront
