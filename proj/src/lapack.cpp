#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>

#include <lapacke.h>

#include "degenfront/lapack.hpp"

#include <sstream>

#include "degenfront/error.hpp"

namespace degenfront::lapack {

namespace {

void fail(const char* routine, lapack_int info) {
  std::ostringstream os;
  os << routine << " failed with info = " << info;
  if (info > 0) os << " (no convergence)";
  throw NumericalError(os.str());
}

}  // namespace

GeneralEigen dgeev(const Eigen::MatrixXd& a, bool want_vectors) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  if (a.cols() != a.rows()) throw Error("dgeev: matrix is not square");
  Eigen::MatrixXd work = a;
  std::vector<double> wr(n), wi(n);
  Eigen::MatrixXd vr;
  if (want_vectors) vr.resize(n, n);
  double dummy = 0.0;
  const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n,
                                        work.data(), n, wr.data(), wi.data(), &dummy, 1,
                                        want_vectors ? vr.data() : &dummy, want_vectors ? n : 1);
  if (info != 0) fail("dgeev", info);
  GeneralEigen out;
  out.values.resize(n);
  for (lapack_int i = 0; i < n; ++i) out.values[i] = {wr[i], wi[i]};
  if (want_vectors) {
    out.vectors.resize(n, n);
    for (lapack_int j = 0; j < n; ++j) {
      if (wi[j] != 0.0 && j + 1 < n) {
        out.vectors.col(j) = vr.col(j).cast<std::complex<double>>() +
                             std::complex<double>(0.0, 1.0) * vr.col(j + 1);
        out.vectors.col(j + 1) = out.vectors.col(j).conjugate();
        ++j;
      } else {
        out.vectors.col(j) = vr.col(j).cast<std::complex<double>>();
      }
    }
  }
  return out;
}

std::vector<double> dstev(std::vector<double> diag, std::vector<double> off) {
  const lapack_int n = static_cast<lapack_int>(diag.size());
  if (n == 0) return {};
  off.resize(n > 1 ? n - 1 : 1);
  double dummy = 0.0;
  const lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'N', n, diag.data(), off.data(), &dummy, 1);
  if (info != 0) fail("dstev", info);
  return diag;
}

TridiagonalLU::TridiagonalLU(const std::vector<double>& lower, const std::vector<double>& diag,
                             const std::vector<double>& upper)
    : d_(diag) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n) throw Error("tridiagonal bands have wrong size");
  dl_.assign(n > 1 ? n - 1 : 1, 0.0);
  du_.assign(n > 1 ? n - 1 : 1, 0.0);
  du2_.assign(n > 2 ? n - 2 : 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    dl_[i] = lower[i + 1];
    du_[i] = upper[i];
  }
  ipiv_.assign(n, 0);
  const lapack_int info = LAPACKE_dgttrf(static_cast<lapack_int>(n), dl_.data(), d_.data(),
                                         du_.data(), du2_.data(), ipiv_.data());
  if (info < 0) fail("dgttrf", info);
  if (info > 0) {
    std::ostringstream os;
    os << "tridiagonal matrix is singular at row " << info;
    throw NumericalError(os.str());
  }
}

void TridiagonalLU::solve(std::vector<double>& b, bool transpose) const {
  const lapack_int n = static_cast<lapack_int>(d_.size());
  if (b.size() != d_.size()) throw Error("tridiagonal solve: dimension mismatch");
  const lapack_int info =
      LAPACKE_dgttrs(LAPACK_COL_MAJOR, transpose ? 'T' : 'N', n, 1, dl_.data(), d_.data(),
                     du_.data(), du2_.data(), ipiv_.data(), b.data(), n);
  if (info != 0) fail("dgttrs", info);
}

double zhb_smallest_eigenvalue(std::vector<std::complex<double>> ab, int n, int kd) {
  lapack_int m = 0;
  std::vector<double> w(n);
  std::vector<lapack_int> ifail(n);
  std::complex<double> qdummy{};
  std::complex<double> zdummy{};
  const lapack_int info =
      LAPACKE_zhbevx(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, kd, ab.data(), kd + 1, &qdummy, 1, 0.0,
                     0.0, 1, 1, 0.0, &m, w.data(), &zdummy, 1, ifail.data());
  if (info != 0) fail("zhbevx", info);
  if (m < 1) throw NumericalError("zhbevx returned no eigenvalue");
  return w[0];
}

}  // namespace degenfront::lapack
