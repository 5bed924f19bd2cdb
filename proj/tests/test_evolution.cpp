#include <doctest.h>

#include <cmath>

#include "degenfront/error.hpp"
#include "degenfront/evolution.hpp"
#include "degenfront/grid.hpp"
#include "fixtures.hpp"

using namespace degenfront;

namespace {

std::vector<double> bump(const FrontProfile& p, double amp, double c, double w, bool interior) {
  std::vector<double> u;
  const std::size_t lo = interior ? 1 : 0, hi = interior ? p.size() - 1 : p.size();
  for (std::size_t i = lo; i < hi; ++i) u.push_back(amp * std::exp(-std::pow((p.x[i] - c) / w, 2)));
  return u;
}

}  // namespace

TEST_CASE("shift modulation recovers exact translates") {
  const auto& p = fixtures::front(4001);
  const ShiftModulator mod(p);
  CHECK(std::abs(mod.estimate(p.phi).shift) <= 1e-6);
  CHECK(std::abs(modulate_shift(shifted_front(p, 0.25), p).shift - 0.25) <= 1e-4);
  for (double s0 : {-0.5, -0.1, 0.1, 0.5}) {
    CHECK(std::abs(mod.estimate(shifted_front(p, s0)).shift - s0) <= 1e-4);
  }
  CHECK(mod.estimate(shifted_front(p, 2.5)).at_boundary);
}

TEST_CASE("small perturbation moves the minimizer little") {
  const auto& p = fixtures::front(2001);
  auto v = p.phi;
  const auto b = bump(p, 0.01, 0.0, 1.0, false);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b[i];
  const double s = modulate_shift(v, p).shift;
  CHECK(std::abs(s) <= 0.05);
  const ShiftModulator mod(p);
  double best = 0.0, dmin = 1e300;
  for (int i = -100; i <= 100; ++i) {
    const double d = mod.distance(v, i * 1e-3);
    if (d < dmin) dmin = d, best = i * 1e-3;
  }
  CHECK(std::abs(s - best) <= 1e-3);
}

TEST_CASE("front is stationary for the nonlinear scheme") {
  const auto& p = fixtures::front(4001);
  NonlinearOptions opt;
  opt.track_shift = false;
  const auto run = evolve_nonlinear(p, std::vector<double>(p.size() - 2, 0.0), opt);
  CHECK(run.max_drift <= 1e-8);
  CHECK(run.v_final.front() == p.phi.front());
  CHECK(run.v_final.back() == 0.0);
}

TEST_CASE("translated front stays a translate") {
  const auto& p = fixtures::front(2001);
  const auto s = shifted_front(p, 0.1);
  std::vector<double> u0(p.size() - 2);
  for (std::size_t i = 0; i < u0.size(); ++i) u0[i] = s[i + 1] - p.phi[i + 1];
  NonlinearOptions opt;
  opt.t_end = 10.0;
  const auto run = evolve_nonlinear(p, u0, opt);
  REQUIRE_FALSE(run.records.empty());
  CHECK(run.records.front().shift == doctest::Approx(0.1).epsilon(1e-3));
  for (const auto& r : run.records) CHECK(r.residual <= 1e-3);
  CHECK(run.records.back().shift == doctest::Approx(0.1).epsilon(1e-2));
}

TEST_CASE("bump perturbation decays modulo translation") {
  const auto& p = fixtures::front(2001);
  NonlinearOptions opt;
  opt.track_every = 100;
  const auto run = evolve_nonlinear(p, bump(p, 0.05, 0.0, 1.0, true), opt);
  CHECK(run.records.back().residual <= 0.1 * run.records.front().residual);
}

TEST_CASE("nonnegative perturbations create no negative overshoot") {
  const auto& p = fixtures::front(2001);
  NonlinearOptions opt;
  opt.t_end = 5.0;
  opt.track_every = 5;
  const auto run = evolve_nonlinear(p, bump(p, 0.05, p.omega0 - 0.5, 0.5, true), opt);
  for (const auto& r : run.records) CHECK(r.min_v >= -1e-6);
}

TEST_CASE("nonlinear runs approach the linearization quadratically") {
  const auto& p = fixtures::front(1001);
  const auto shape = bump(p, 1.0, 0.0, 1.0, true);
  const auto c = linear_nonlinear_consistency(p, shape, {1e-2, 5e-3, 2.5e-3});
  CHECK(c.min_order >= 1.8);
  CHECK(c.discrepancy[2] < c.discrepancy[0]);
}

TEST_CASE("nonlinear preconditions") {
  const auto& p = fixtures::front(1001);
  CHECK_THROWS(evolve_nonlinear(p, bump(p, 0.5, 0.0, 1.0, true)));
  NonlinearOptions bad;
  bad.dt = 0.0;
  CHECK_THROWS_AS(evolve_nonlinear(p, bump(p, 0.01, 0.0, 1.0, true), bad), ConfigError);
}
