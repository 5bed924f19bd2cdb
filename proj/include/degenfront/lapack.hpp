#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace degenfront::lapack {

struct GeneralEigen {
  std::vector<std::complex<double>> values;
  /// Right eigenvectors as columns; empty when not requested.
  Eigen::MatrixXcd vectors;
};

/// Eigenvalues (and optionally right eigenvectors) of a dense real matrix (dgeev).
GeneralEigen dgeev(const Eigen::MatrixXd& a, bool want_vectors);

/// Eigenvalues of a symmetric tridiagonal matrix, ascending (dstev).
std::vector<double> dstev(std::vector<double> diag, std::vector<double> off);

/// LU factorization of a real tridiagonal matrix with partial pivoting (dgttrf).
class TridiagonalLU {
 public:
  /// lower[i] = A(i, i-1) for i >= 1, diag[i] = A(i, i), upper[i] = A(i, i+1).
  TridiagonalLU(const std::vector<double>& lower, const std::vector<double>& diag,
                const std::vector<double>& upper);
  /// Solves A x = b in place; `transpose` solves A^T x = b.
  void solve(std::vector<double>& b, bool transpose = false) const;
  std::size_t size() const { return d_.size(); }

 private:
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<int> ipiv_;
};

/// Smallest eigenvalue of a Hermitian band matrix given in LAPACK upper band
/// storage with kd superdiagonals, ab is (kd+1) x n column-major (zhbevx).
double zhb_smallest_eigenvalue(std::vector<std::complex<double>> ab, int n, int kd);

}  // namespace degenfront::lapack
