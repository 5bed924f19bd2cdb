#include <doctest.h>

#include <cmath>
#include <random>

#include "degenfront/error.hpp"
#include "degenfront/profile.hpp"
#include "fixtures.hpp"

using namespace degenfront;

namespace {
// Independent quadrature of int_0^{1/2} D / sqrt(-2 𝒟).
constexpr double kOmega0 = 3.0310672854;
}

TEST_CASE("arrival point of the reference front") {
  const auto& p = fixtures::front(4001);
  CHECK(std::abs(p.omega0 - kOmega0) <= 1e-8);
  CHECK(std::abs(p.omega0 - p.shape->position_of(0.625) - 3.8017) <= 1e-3);
  CHECK(p.shape->omega0_error() <= 1e-10);
}

TEST_CASE("profile shape invariants") {
  const auto& p = fixtures::front(4001);
  const std::size_t m = p.first_degenerate();
  REQUIRE(m > 0);
  REQUIRE(m < p.size());
  CHECK(p.phi.front() >= 1.0 - 1e-6);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p.phi[i] >= 0.0);
    CHECK(p.phi[i] < 1.0);
  }
  bool decreasing = true, flat = true;
  for (std::size_t i = 1; i < m; ++i) decreasing = decreasing && p.phi[i] < p.phi[i - 1];
  for (std::size_t i = m; i < p.size(); ++i) flat = flat && p.phi[i] == 0.0 && p.phi_x[i] == 0.0;
  CHECK(decreasing);
  CHECK(flat);
  CHECK(p.shape->level_at(p.omega0 + 0.3).phi == 0.0);
  CHECK(p.shape->phi_x(p.shape->level_at(p.omega0 + 0.3)) == 0.0);
}

TEST_CASE("profile equation residuals") {
  const auto& p = fixtures::front(4001);
  CHECK(p.residuals.first_order <= 1e-8);
  CHECK(p.residuals.second_order <= 1e-6);
}

TEST_CASE("front is C1 but not C2 at the arrival point") {
  const auto& sh = *fixtures::front(4001).shape;
  CHECK(std::abs(sh.phi_x(Level{1e-14, 1.0 - 1e-14})) <= 1e-6);
  CHECK(sh.phi_xx_left_limit() >= 0.1 * 5.0 / 24.0);
  CHECK(fixtures::front(4001).phi_xx_left_limit == doctest::Approx(5.0 / 24.0).epsilon(1e-10));
}

TEST_CASE("analytic and measured tail rates") {
  const auto a = asymptotic_rates(fixtures::front(4001));
  CHECK(a.eta == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));
  CHECK(a.a0 == doctest::Approx(std::sqrt(5.0 / 12.0)).epsilon(1e-12));
  CHECK(a.curvature_limit == doctest::Approx(5.0 / 24.0).epsilon(1e-12));
  CHECK(a.eta_measured == doctest::Approx(a.eta).epsilon(0.02));
  CHECK(a.a0_measured == doctest::Approx(a.a0).epsilon(0.02));
  CHECK(a.curvature_measured == doctest::Approx(a.curvature_limit).epsilon(0.02));
}

TEST_CASE("ratio bound limits") {
  const auto r = ratio_bound_sup(fixtures::front(4001));
  CHECK(r.limit_left_infinity == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-6));
  CHECK(std::abs(r.limit_at_omega0) <= 1e-4);
  CHECK(std::isfinite(r.sup_value));
  CHECK(r.sup_value >= r.limit_left_infinity - 1e-12);
  CHECK(r.sup_value >= r.limit_at_omega0);
}

TEST_CASE("arrival point converges at high order") {
  const auto c = arrival_point_convergence(*fixtures::front(4001).shape);
  CHECK(c.order >= 4.0);
  CHECK(std::abs(c.omega0.back() - kOmega0) <= 1e-6);
}

TEST_CASE("anchor translation moves the arrival point rigidly") {
  const auto& ref = fixtures::front(4001);
  const FrontShape moved(fixtures::reference(), 0.3);
  CHECK(std::abs(moved.omega0() - (ref.omega0 - ref.shape->position_of(0.3))) <= 1e-8);
}

TEST_CASE("random balanced quadratic kinetics give valid fronts") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ub(0.25, 4.0), ua(0.3, 0.7);
  for (int i = 0; i < 6; ++i) {
    const double b = ub(rng);
    const auto k = KineticsPair::quadratic_cubic(b, balance_alpha(b));
    const auto p = solve_profile(k, ua(rng), {}, 1001);
    CHECK(p.residuals.first_order <= 1e-8);
    CHECK(p.phi.front() >= 1.0 - 1e-6);
    CHECK(p.phi_xx_left_limit == doctest::Approx(-k.fp(0.0) / (3.0 * k.Dp(0.0))).epsilon(1e-8));
    const auto r = ratio_bound_sup(p);
    CHECK(r.sup_value >= r.limit_left_infinity - 1e-12);
  }
}

TEST_CASE("unbalanced kinetics are rejected") {
  CHECK_THROWS_AS(FrontShape(KineticsPair::quadratic_cubic(1.0, 0.5), 0.5), Error);
  CHECK_THROWS_AS(solve_profile(fixtures::reference(), 1.5), ConfigError);
}
