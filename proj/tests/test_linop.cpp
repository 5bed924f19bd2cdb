#include <doctest.h>

#include <cmath>
#include <random>

#include "degenfront/error.hpp"
#include "degenfront/grid.hpp"
#include "degenfront/linop.hpp"
#include "fixtures.hpp"

using namespace degenfront;

namespace {

// L phi_x at the interior nodes, with the boundary samples of phi_x kept in the stencil.
// Returns the max over all nodes and the max over nodes at distance > 0.5 from omega0.
std::pair<double, double> kernel_residual(const FrontProfile& p) {
  const auto d = assemble_operator(p, 0.0);
  auto r = apply_L(d, d.phi_x);
  const auto& k = p.kinetics();
  r.front() += k.D(p.phi.front()) * p.phi_x.front() / (d.h * d.h);
  double away = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (std::abs(d.x[i] - p.omega0) > 0.5) away = std::max(away, std::abs(r[i]));
  }
  return {max_abs(r), away};
}

std::vector<double> gaussian(const std::vector<double>& x, double c, double w) {
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = std::exp(-std::pow((x[i] - c) / w, 2));
  return u;
}

}  // namespace

TEST_CASE("constant coefficients reduce to the Laplacian stencil") {
  const auto d = assemble_from_coefficients({1.0, 2.0, 3.0}, {1.0, 1.0, 1.0}, {0.0, 0.0, 0.0});
  Eigen::MatrixXd expect(3, 3);
  expect << -2, 1, 0, 1, -2, 1, 0, 1, -2;
  CHECK((d.dense() - expect).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(assemble_from_coefficients({0.0, 1.0, 3.0}, {1, 1, 1}, {0, 0, 0}), Error);
}

TEST_CASE("rows are tridiagonal and degenerate rows are diagonal") {
  const auto& p = fixtures::front(1001);
  const auto d = assemble_operator(p, 0.0);
  const auto A = d.dense();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (std::abs(i - j) > 1) CHECK(A(i, j) == 0.0);
    }
  }
  const std::size_t m = p.first_degenerate();  // profile index; interior index is m - 1
  for (std::size_t i = m; i < d.n(); ++i) {
    CHECK(A(i, i) == doctest::Approx(-0.625));
    if (i > 0) CHECK(A(i, i - 1) == 0.0);
    if (i + 1 < d.n()) CHECK(A(i, i + 1) == 0.0);
  }
}

TEST_CASE("operator action on simple inputs") {
  const auto& p = fixtures::front(1001);
  const auto d = assemble_operator(p, 0.0);
  CHECK(max_abs(apply_L(d, std::vector<double>(d.n(), 0.0))) == 0.0);
  std::vector<double> bump(d.n(), 0.0);
  for (std::size_t i = 0; i < d.n(); ++i) {
    if (d.x[i] > p.omega0 + 0.2) bump[i] = std::exp(-std::pow((d.x[i] - p.omega0 - 0.6) / 0.1, 2));
  }
  const auto Lb = apply_L(d, bump);
  for (std::size_t i = 0; i < d.n(); ++i) CHECK(Lb[i] == doctest::Approx(-0.625 * bump[i]));
}

TEST_CASE("translation mode is a discrete kernel vector up to O(h^2)") {
  std::vector<double> away;
  for (std::size_t n : {1001u, 2001u, 4001u}) {
    const auto& p = fixtures::front(n);
    const auto [all, far] = kernel_residual(p);
    // the kink of phi_xx at omega0 keeps the constant grid-position dependent
    CHECK(all <= p.h * p.h);
    away.push_back(far);
  }
  CHECK(std::log2(away[0] / away[1]) >= 1.5);
  CHECK(std::log2(away[1] / away[2]) >= 1.5);
}

TEST_CASE("transpose application agrees with the dense matrix") {
  const auto& p = fixtures::front(501);
  const auto d = assemble_operator(p, 1e-2);
  std::mt19937_64 rng(31);
  const auto u = smooth_random_field(d.x, rng);
  const Eigen::Map<const Eigen::VectorXd> uv(u.data(), u.size());
  const Eigen::VectorXd a = d.dense() * uv;
  const Eigen::VectorXd at = d.dense().transpose() * uv;
  const auto Lu = apply_L(d, u);
  const auto LTu = apply_LT(d, u);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(Lu[i] == doctest::Approx(a(i)).epsilon(1e-12));
    CHECK(LTu[i] == doctest::Approx(at(i)).epsilon(1e-12));
  }
}

TEST_CASE("energy identity on random smooth vectors") {
  const auto& p = fixtures::front(4001);
  const auto d = assemble_operator(p, 0.0);
  std::mt19937_64 rng(32);
  SmoothFieldOptions opt;
  opt.center_lo = -20.0;
  opt.center_hi = p.omega0;
  for (int i = 0; i < 100; ++i) {
    const auto u = smooth_random_field(d.x, rng, opt);
    const double Q = weighted_form(p, u);
    CHECK(Q <= 1e-12);
    CHECK(std::abs(weighted_product(d, u) - Q) <= 0.01 * std::abs(Q));
  }
}

TEST_CASE("energy identity error decreases under refinement") {
  std::vector<double> err;
  for (std::size_t n : {1001u, 2001u, 4001u}) {
    const auto& p = fixtures::front(n);
    const auto d = assemble_operator(p, 0.0);
    const auto u = gaussian(d.x, -1.0, 1.5);
    const double Q = weighted_form(p, u);
    err.push_back(std::abs(weighted_product(d, u) - Q) / std::abs(Q));
  }
  CHECK(std::log2(err[0] / err[1]) >= 1.0);
  CHECK(std::log2(err[1] / err[2]) >= 1.0);
}

TEST_CASE("weighted form special inputs") {
  const auto& p = fixtures::front(4001);
  const auto d = assemble_operator(p, 0.0);
  CHECK(std::abs(weighted_form(p, d.phi_x)) <= 1e-8);
  std::vector<double> right(d.n(), 0.0);
  for (std::size_t i = 0; i < d.n(); ++i) {
    if (d.x[i] > p.omega0 + 0.2) right[i] = std::sin(d.x[i]);
  }
  CHECK(weighted_form(p, right) == 0.0);
}

TEST_CASE("weighted operator is symmetric") {
  for (std::size_t n : {501u, 1001u}) {
    const auto d = assemble_operator(fixtures::front(n), 0.0);
    Eigen::MatrixXd WL = d.dense();
    for (std::size_t i = 0; i < d.n(); ++i) WL.row(i) *= d.weight[i];
    CHECK((WL - WL.transpose()).cwiseAbs().maxCoeff() <= std::max(d.h, 1e-12) * d.max_abs());
    CHECK((WL - WL.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * d.max_abs());
  }
}

TEST_CASE("Fredholm borders") {
  const auto& k = fixtures::reference();
  const auto b0 = fredholm_borders(k, 0.0, {0.0, 1.0, 10.0});
  CHECK(b0.plus[0] == doctest::Approx(-0.625));
  CHECK(b0.minus[0] == doctest::Approx(-0.375));
  for (double v : b0.plus) CHECK(v == doctest::Approx(-0.625));
  std::vector<double> ks;
  for (int i = 0; i <= 50; ++i) ks.push_back(0.5 * i);
  const auto b = fredholm_borders(k, 1e-2, ks);
  double mx = -1e300;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    mx = std::max({mx, b.plus[i], b.minus[i]});
    if (i > 0) {
      CHECK(b.plus[i] < b.plus[i - 1]);
      CHECK(b.minus[i] < b.minus[i - 1]);
    }
  }
  CHECK(mx == doctest::Approx(-k.mu1()));
  CHECK(b.minus.back() < -100.0 * 1e-2);
}
