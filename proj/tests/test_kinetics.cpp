#include <doctest.h>

#include <cmath>
#include <random>

#include "degenfront/error.hpp"
#include "degenfront/kinetics.hpp"
#include "fixtures.hpp"

using namespace degenfront;

TEST_CASE("reference kinetics values at the ends") {
  const auto& k = fixtures::reference();
  CHECK(k.D(0.0) == 0.0);
  CHECK(k.f(0.0) == 0.0);
  CHECK(k.D(1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(k.f(1.0)) <= 1e-15);
  CHECK(k.fp(1.0) == doctest::Approx(-0.375).epsilon(1e-15));
  CHECK(k.fp(0.0) == doctest::Approx(-0.625).epsilon(1e-15));
  CHECK(k.Dp(0.0) == doctest::Approx(1.0));
  const auto v = eval_kinetics(k, 0.3);
  CHECK(v.D == doctest::Approx(k.D(0.3)));
  CHECK(v.fp == doctest::Approx(k.fp(0.3)));
}

TEST_CASE("bistable zeros and derivative signs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(0.05, 0.95);
  for (int i = 0; i < 20; ++i) {
    const double a = ua(rng);
    const auto k = KineticsPair::quadratic_cubic(1.0, a);
    CHECK(std::abs(k.f(a)) <= 1e-12);
    CHECK(std::abs(k.f(1.0)) <= 1e-12);
    CHECK(k.fp(0.0) < 0.0);
    CHECK(k.fp(1.0) < 0.0);
    CHECK(k.fp(a) > 0.0);
  }
}

TEST_CASE("potential values") {
  const PotentialD pot(fixtures::reference());
  CHECK(pot(0.0) == 0.0);
  CHECK(std::abs(pot.at_one()) <= 1e-15);
  CHECK(pot(0.5) == doctest::Approx(-7.0 / 768.0).epsilon(1e-13));
  CHECK(pot.by_quadrature(0.5) == doctest::Approx(-7.0 / 768.0).epsilon(1e-11));
  for (double phi : {0.1, 0.37, 0.8, 0.99}) {
    const double closed = -(phi * phi * phi / 24.0) * (phi - 1) * (phi - 1) * (4 * phi + 5);
    CHECK(pot(phi) == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("potential derivative matches D f at random points") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  const auto k = KineticsPair::quadratic_cubic(0.7, 0.4);
  const PotentialD pot(k);
  const double h = 1e-5;
  for (int i = 0; i < 50; ++i) {
    const double phi = u(rng);
    const double fd = (pot(phi + h) - pot(phi - h)) / (2 * h);
    CHECK(std::abs(fd - k.D(phi) * k.f(phi)) <= 1e-8);
  }
}

TEST_CASE("balance formula against the closed form") {
  CHECK(balance_alpha(1.0) == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(std::abs(balance_alpha(2.0) - 8.0 / 13.0) <= 1e-10);
  CHECK(std::abs(balance_alpha(1e6) - 0.6) <= 1e-6);
  for (double b : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double a = balance_alpha(b);
    CHECK(std::abs(a - balance_alpha_closed_form(b)) <= 1e-10);
    CHECK(std::abs(potential_D(KineticsPair::quadratic_cubic(b, a), 1.0)) <= 1e-10);
  }
}

TEST_CASE("balanced potential is nonpositive on the unit interval") {
  for (double b : {0.25, 1.0, 4.0}) {
    const PotentialD pot(KineticsPair::quadratic_cubic(b, balance_alpha(b)));
    double worst = -1.0;
    for (int i = 0; i <= 10000; ++i) worst = std::max(worst, pot(i / 10000.0));
    CHECK(worst <= 1e-15);
  }
}

TEST_CASE("balance for custom polynomial diffusion") {
  // D = u^2 + u written as a polynomial reproduces the quadratic branch
  const double a = balance_alpha(DiffusionSpec{CustomPolynomial{{0.0, 1.0, 1.0}}});
  CHECK(a == doctest::Approx(0.625).epsilon(1e-10));
  // D = u: alpha = 2/3 makes int_0^1 u f = 0
  const double a1 = balance_alpha(DiffusionSpec{CustomPolynomial{{0.0, 1.0}}});
  CHECK(std::abs(potential_D(KineticsPair(CustomPolynomial{{0.0, 1.0}}, CubicReaction{a1}), 1.0)) <= 1e-12);
}

TEST_CASE("speed sign") {
  CHECK(speed_sign(fixtures::reference(), Orientation::decreasing_1_to_0) == SpeedSign::zero);
  CHECK(speed_sign(KineticsPair::quadratic_cubic(1.0, 0.5), Orientation::increasing_0_to_1) ==
        SpeedSign::negative);
  CHECK(speed_sign(KineticsPair::quadratic_cubic(1.0, 0.7), Orientation::increasing_0_to_1) ==
        SpeedSign::positive);
  const auto s = speed_sign(KineticsPair::quadratic_cubic(1.0, 0.5), Orientation::decreasing_1_to_0);
  CHECK(s == SpeedSign::positive);
}

TEST_CASE("speed sign is invariant under positive rescaling of f") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ua(0.1, 0.9), us(0.01, 100.0);
  for (int i = 0; i < 30; ++i) {
    const double a = ua(rng), scale = us(rng);
    const auto base = KineticsPair::quadratic_cubic(1.0, a);
    std::vector<double> c;
    for (std::size_t j = 0; j <= 3; ++j) c.push_back(scale * base.reaction().coefficients()[j]);
    const KineticsPair scaled(QuadraticDiffusion{1.0}, CustomPolynomial{c});
    for (auto o : {Orientation::increasing_0_to_1, Orientation::decreasing_1_to_0}) {
      CHECK(speed_sign(scaled, o) == speed_sign(base, o));
    }
  }
}

TEST_CASE("hypothesis validation") {
  CHECK(validate_hypotheses(fixtures::reference(), 1000).ok);
  auto has = [](const HypothesisReport& r, const std::string& what) {
    for (const auto& v : r.violations) {
      if (v.what == what) return true;
    }
    return false;
  };
  CHECK(has(validate_hypotheses(KineticsPair::quadratic_cubic(-0.5, 0.6), 1000), "D'(0) ≤ 0"));
  CHECK(has(validate_hypotheses(KineticsPair::quadratic_cubic(1.0, 0.0), 1000), "α ∉ (0,1)"));
  CHECK_FALSE(validate_hypotheses(KineticsPair(CustomPolynomial{{0.1, 1.0}}, CubicReaction{0.5}), 200).ok);
}

TEST_CASE("interior root of a custom reaction") {
  // f = u (1 - u)(u - 0.3) expanded
  const KineticsPair k(QuadraticDiffusion{1.0}, CustomPolynomial{{0.0, -0.3, 1.3, -1.0}});
  CHECK(k.alpha() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(k.mu1() == doctest::Approx(0.3));
}

TEST_CASE("kinetics degree limit") {
  std::vector<double> c(14, 0.0);
  c[1] = 1.0;
  c[13] = 1.0;
  CHECK_THROWS_AS(KineticsPair(CustomPolynomial{c}, CubicReaction{0.5}), ConfigError);
}
