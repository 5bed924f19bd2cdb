#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/SVD>

#include "degenfront/error.hpp"
#include "degenfront/grid.hpp"
#include "degenfront/linop.hpp"
#include "degenfront/semigroup.hpp"
#include "degenfront/spectrum.hpp"
#include "fixtures.hpp"

using namespace degenfront;

namespace {

struct Setup {
  OperatorDiscretization d;
  ProjectionData pd;
};

const Setup& setup1001() {
  static const Setup s = [] {
    Setup s{assemble_operator(fixtures::front(1001), 0.0), build_projection(fixtures::front(1001))};
    attach_discrete_kernel(s.pd, s.d);
    return s;
  }();
  return s;
}

std::vector<double> random_start(const OperatorDiscretization& d, std::mt19937_64& rng) {
  SmoothFieldOptions opt;
  opt.center_lo = -15.0;
  opt.center_hi = 2.5;
  return smooth_random_field(d.x, rng, opt);
}

}  // namespace

TEST_CASE("adjoint mode and Theta") {
  const auto& p = fixtures::front(2001);
  const auto pd = build_projection(p, 0.0);
  CHECK(pd.theta > 0.0);
  for (std::size_t i = 0; i < pd.psi.size(); ++i) {
    CHECK(pd.psi[i] == doctest::Approx(p.kinetics().D(p.phi[i + 1]) / pd.D0 * pd.phi_x[i]));
    if (p.x[i + 1] >= p.omega0) CHECK(pd.psi[i] == 0.0);
  }
  CHECK(adjoint_residual(assemble_operator(p, 0.0), pd) <= 5e-3);
}

TEST_CASE("Theta times D at the anchor does not depend on the anchor") {
  const auto& p = fixtures::front(2001);
  const auto a = build_projection(p, 0.0), b = build_projection(p, -3.0), c = build_projection(p, 1.5);
  CHECK(std::abs(a.theta * a.D0 - b.theta * b.D0) <= 1e-8);
  CHECK(std::abs(a.theta * a.D0 - c.theta * c.D0) <= 1e-8);
  CHECK_THROWS_AS(build_projection(p, p.omega0 + 0.1), ConfigError);
}

TEST_CASE("projection is idempotent and removes the translation mode") {
  const auto& s = setup1001();
  std::mt19937_64 rng(41);
  CHECK(max_abs(project(s.pd, s.pd.phi_x)) <= 1e-10);
  for (int i = 0; i < 20; ++i) {
    const auto u = random_start(s.d, rng);
    const auto Pu = project(s.pd, u);
    CHECK(max_abs_diff(project(s.pd, Pu), Pu) <= 1e-10);
    const auto Pd = project_discrete(s.pd, u);
    CHECK(max_abs_diff(project_discrete(s.pd, Pd), Pd) <= 1e-10);
  }
}

TEST_CASE("adjoint residual converges at second order") {
  std::vector<double> r;
  for (std::size_t n : {1001u, 2001u, 4001u}) {
    const auto& p = fixtures::front(n);
    r.push_back(adjoint_residual(assemble_operator(p, 0.0), build_projection(p)));
  }
  CHECK(std::log2(r[0] / r[1]) >= 1.5);
  CHECK(std::log2(r[1] / r[2]) >= 1.5);
}

TEST_CASE("self-adjoint constant-coefficient case") {
  const std::size_t n = 60;
  std::vector<double> x(n), D(n, 1.0), fp(n, -1.0);
  const double h = 0.1;
  for (std::size_t i = 0; i < n; ++i) x[i] = (i + 1) * h;
  const auto d = assemble_from_coefficients(x, D, fp);
  const Eigen::MatrixXd A = d.dense();
  CHECK((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  std::vector<double> v(n);
  const double kpi = std::numbers::pi / ((n + 1) * h);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(kpi * x[i]);
  const double lambda = -4.0 / (h * h) * std::pow(std::sin(kpi * h / 2), 2) - 1.0;
  const auto LTv = apply_LT(d, v);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(LTv[i] - lambda * v[i]) <= 1e-12);
}

TEST_CASE("eta0 recipe") {
  const auto b = eta0_bound(fixtures::front(4001));
  CHECK(b.ratio_limit_omega0 == doctest::Approx(5.0 / 12.0).epsilon(1e-10));
  CHECK(b.ratio_left_end <= 1e-6);
  CHECK(b.eta0 > 0.0);
  CHECK(b.eta0 == doctest::Approx(b.C0 + b.M_ratio / 2.0));
}

TEST_CASE("smallest singular value matches a dense SVD") {
  const auto& p = fixtures::front(301);
  const auto d = assemble_operator(p, 0.0);
  const Eigen::MatrixXcd A = d.dense().cast<std::complex<double>>();
  for (std::complex<double> lam : {std::complex<double>(1.0, 0.0), {0.9, 3.0}, {-0.2, 0.5}, {50.0, -7.0}}) {
    const Eigen::MatrixXcd M = lam * Eigen::MatrixXcd::Identity(A.rows(), A.cols()) - A;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    const double ref = svd.singularValues().minCoeff();
    CHECK(smallest_singular_value(d, lam) == doctest::Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("resolvent bound right of eta0") {
  const auto& p = fixtures::front(2001);
  const auto d = assemble_operator(p, 0.0);
  const double eta0 = eta0_bound(p).eta0;
  const auto out = resolvent_check(d, eta0, {{eta0 + 10.0, 0.0}, {eta0 + 1.0, 50.0}, {eta0 + 0.01, -0.3}});
  for (const auto& s : out) CHECK(s.bound_ok);
  const double big = 1e6;
  CHECK(smallest_singular_value(d, {big, 0.0}) / big == doctest::Approx(1.0).epsilon(1e-2));
  CHECK_THROWS(resolvent_check(d, eta0, {{eta0 - 0.1, 0.0}}));
}

TEST_CASE("translation mode is stationary under the linear flow") {
  const auto& p = fixtures::front(24001);
  const auto d = assemble_operator(p, 0.0);
  double drift = 0.0;
  evolve_linear(d, d.phi_x, 10.0, 0.01, 1.0, nullptr,
                [&](std::size_t, double, const std::vector<double>& u) {
                  double s = 0.0;
                  for (std::size_t i = 0; i < u.size(); ++i) s += std::pow(u[i] - d.phi_x[i], 2);
                  drift = std::max(drift, std::sqrt(d.h * s));
                });
  CHECK(drift <= 1e-6);
}

TEST_CASE("kernel start stays in the kernel") {
  const auto& s = setup1001();
  const auto tr = evolve_linear(s.d, s.pd.kernel, 10.0, 0.01, 1.0, &s.pd);
  for (double v : tr.norm_Pu) CHECK(v <= 1e-8);
}

TEST_CASE("projection commutes with the flow") {
  const auto& s = setup1001();
  std::mt19937_64 rng(42);
  const auto u0 = random_start(s.d, rng);
  const auto a = evolve_linear(s.d, u0, 5.0, 0.01, 1.0).u_final;
  const auto b = evolve_linear(s.d, project_discrete(s.pd, u0), 5.0, 0.01, 1.0).u_final;
  CHECK(max_abs_diff(project_discrete(s.pd, a), b) <= 1e-8);
}

TEST_CASE("projected norm is non-increasing for implicit Euler") {
  const auto& s = setup1001();
  std::mt19937_64 rng(43);
  int violations = 0;
  for (int k = 0; k < 50; ++k) {
    const auto tr = evolve_linear(s.d, random_start(s.d, rng), 10.0, 0.02, 1.0, &s.pd);
    for (std::size_t i = 1; i < tr.norm_Pu.size(); ++i) {
      if (tr.t[i] >= 1.0 && tr.norm_Pu[i] > tr.norm_Pu[i - 1] * (1.0 + 1e-12)) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("decay rate of random starts matches the gap") {
  const auto& s = setup1001();
  const double l1 = eigen_spectrum(s.d, fixtures::reference(), {false}).lambda1.real();
  std::mt19937_64 rng(44);
  for (int k = 0; k < 5; ++k) {
    const auto f = fit_decay(evolve_linear(s.d, random_start(s.d, rng), 30.0 / std::abs(l1), 0.01, 1.0, &s.pd));
    CHECK_FALSE(f.rejected);
    CHECK(f.fitted_rate == doctest::Approx(-l1).epsilon(0.10));
    CHECK(f.r_squared >= 0.99);
  }
}

TEST_CASE("pure second mode decays at the second eigenvalue") {
  const auto& s = setup1001();
  const auto r = eigen_spectrum(s.d, fixtures::reference());
  const Eigen::VectorXd v = r.leading_vectors.col(r.second_index).real();
  const std::vector<double> u0(v.data(), v.data() + v.size());
  const double t_end = 30.0 / std::abs(r.lambda1.real());
  const auto f1 = fit_decay(evolve_linear(s.d, u0, t_end, 0.01, 1.0, &s.pd));
  CHECK(f1.fitted_rate == doctest::Approx(-r.lambda1.real()).epsilon(0.02));
  const auto f2 = fit_decay(evolve_linear(s.d, u0, t_end, 0.005, 1.0, &s.pd));
  CHECK(std::abs(f1.fitted_rate - f2.fitted_rate) <= 0.01 * f2.fitted_rate);
}

TEST_CASE("constant norms are rejected by the decay fit") {
  const auto& s = setup1001();
  const auto f = fit_decay(evolve_linear(s.d, s.d.phi_x, 20.0, 0.01, 1.0));
  CHECK(f.rejected);
  CHECK(std::abs(f.fitted_rate) <= 1e-3);
}
