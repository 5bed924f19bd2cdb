#include "degenfront/evolution.hpp"

#include <cmath>
// the Boost 1.74 pchip header calls isnan unqualified
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "degenfront/error.hpp"
#include "degenfront/grid.hpp"
#include "degenfront/lapack.hpp"
#include "degenfront/linop.hpp"
#include "degenfront/semigroup.hpp"

namespace degenfront {

struct ShiftModulator::Impl {
  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
  std::vector<double> x;
  double h = 0.0;
  double left_value = 1.0;
  std::unique_ptr<Pchip> interp;
};

ShiftModulator::ShiftModulator(const FrontProfile& p) : impl_(std::make_unique<Impl>()) {
  impl_->x = p.x;
  impl_->h = p.h;
  impl_->left_value = p.phi.front();
  impl_->interp = std::make_unique<Impl::Pchip>(std::vector<double>(p.x), std::vector<double>(p.phi));
}

ShiftModulator::~ShiftModulator() = default;

std::vector<double> ShiftModulator::translate(double s) const {
  const auto& x = impl_->x;
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double y = x[i] - s;
    if (y <= x.front()) {
      out[i] = impl_->left_value;
    } else if (y >= x.back()) {
      out[i] = 0.0;
    } else {
      out[i] = (*impl_->interp)(y);
    }
  }
  return out;
}

double ShiftModulator::distance(const std::vector<double>& v, double s) const {
  if (v.size() != impl_->x.size()) throw Error("modulate_shift: snapshot is not on the profile grid");
  const auto ph = translate(s);
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += (v[i] - ph[i]) * (v[i] - ph[i]);
  return std::sqrt(impl_->h * sum);
}

ShiftEstimate ShiftModulator::estimate(const std::vector<double>& v) const {
  constexpr double kLo = -2.0, kHi = 2.0, kTol = 1e-6;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = kLo, b = kHi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = distance(v, c), fd = distance(v, d);
  while (b - a > kTol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = distance(v, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = distance(v, d);
    }
  }
  ShiftEstimate e;
  e.shift = 0.5 * (a + b);
  e.distance = distance(v, e.shift);
  e.at_boundary = e.shift - kLo < 10.0 * kTol || kHi - e.shift < 10.0 * kTol;
  return e;
}

ShiftEstimate modulate_shift(const std::vector<double>& v_snapshot, const FrontProfile& p) {
  return ShiftModulator(p).estimate(v_snapshot);
}

std::vector<double> shifted_front(const FrontProfile& p, double s) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double y = p.x[i] - s;
    out[i] = y <= p.x.front() ? p.phi.front() : p.shape->level_at(y).phi;
  }
  return out;
}

NonlinearRun evolve_nonlinear(const FrontProfile& p, const std::vector<double>& u0,
                              const NonlinearOptions& opt) {
  const std::size_t N = p.size();
  const std::size_t n = N - 2;
  if (u0.size() != n) throw Error("evolve_nonlinear: u0 must live on the interior nodes");
  if (max_abs(u0) > 0.2) throw ConfigError("evolve_nonlinear: ||u0||_inf must not exceed 0.2");
  if (!(opt.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(opt.t_end > 0.0)) throw ConfigError("t_end must be positive");
  const KineticsPair& k = p.kinetics();
  const Polynomial& Phi = k.kirchhoff();
  const double ih2 = 1.0 / (p.h * p.h);
  const double dt = opt.dt;

  // F_i(v) = (Phi(v_{i+1}) - 2 Phi(v_i) + Phi(v_{i-1})) / h^2 + f(v_i), nodes 1..N-2
  auto rhs = [&](const std::vector<double>& v, std::vector<double>& out) {
    std::vector<double> P(N);
    for (std::size_t i = 0; i < N; ++i) P[i] = Phi(v[i]);
    for (std::size_t i = 1; i + 1 < N; ++i) {
      out[i - 1] = (P[i + 1] - 2.0 * P[i] + P[i - 1]) * ih2 + k.f(v[i]);
    }
  };
  std::vector<double> R(n);
  rhs(p.phi, R);

  std::vector<double> v(p.phi);
  for (std::size_t i = 0; i < n; ++i) v[i + 1] += u0[i];

  const std::size_t first_degenerate = p.first_degenerate();
  std::unique_ptr<ShiftModulator> mod;
  if (opt.track_shift) mod = std::make_unique<ShiftModulator>(p);

  NonlinearRun run;
  auto record = [&](double t) {
    NonlinearRecord r;
    r.t = t;
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    r.min_v = *mn;
    r.max_v = *mx;
    if (mod) {
      const ShiftEstimate e = mod->estimate(v);
      r.shift = e.shift;
      r.residual = e.distance;
    } else {
      double s = 0.0;
      for (std::size_t i = 0; i < N; ++i) s += (v[i] - p.phi[i]) * (v[i] - p.phi[i]);
      r.residual = std::sqrt(p.h * s);
    }
    run.records.push_back(r);
  };
  auto guard = [&](double t) {
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    if (*mn < -opt.abort_excursion || *mx > 1.0 + opt.abort_excursion) {
      std::ostringstream os;
      os << "range abort at t = " << t << ": v in [" << *mn << ", " << *mx << "]";
      throw NumericalError(os.str());
    }
    if (*mn < -opt.range_delta || *mx > 1.0 + opt.range_delta) {
      if (run.range_flags.size() < 1000) run.range_flags.push_back({t, *mn, *mx});
      for (std::size_t i = first_degenerate; i < N; ++i) {
        if (v[i] < -opt.range_delta || v[i] > 1.0 + opt.range_delta) run.extension_dependent = true;
      }
    }
    double drift = 0.0;
    for (std::size_t i = 0; i < N; ++i) drift = std::max(drift, std::abs(v[i] - p.phi[i]));
    run.max_drift = std::max(run.max_drift, drift);
  };

  guard(0.0);
  record(0.0);
  if (opt.observer) opt.observer(0, 0.0, v);
  const auto steps = static_cast<std::size_t>(std::llround(opt.t_end / dt));
  std::vector<double> F(n), lo(n), dg(n), up(n), Dv(N);
  for (std::size_t s = 1; s <= steps; ++s) {
    rhs(v, F);
    for (std::size_t i = 0; i < n; ++i) F[i] = dt * (F[i] - R[i]);
    for (std::size_t i = 0; i < N; ++i) Dv[i] = k.D(v[i]);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t node = i + 1;
      lo[i] = i > 0 ? -dt * Dv[node - 1] * ih2 : 0.0;
      up[i] = i + 1 < n ? -dt * Dv[node + 1] * ih2 : 0.0;
      dg[i] = 1.0 - dt * (-2.0 * Dv[node] * ih2 + k.fp(v[node]));
    }
    try {
      const lapack::TridiagonalLU lu(lo, dg, up);
      lu.solve(F);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "nonlinear solve failed at step " << s << ": " << e.what();
      throw NumericalError(os.str());
    }
    for (std::size_t i = 0; i < n; ++i) v[i + 1] += F[i];
    const double t = static_cast<double>(s) * dt;
    guard(t);
    if (s % std::max<std::size_t>(1, opt.track_every) == 0 || s == steps) record(t);
    if (opt.observer) opt.observer(s, t, v);
  }
  run.v_final = v;
  return run;
}

ConsistencyResult linear_nonlinear_consistency(const FrontProfile& p,
                                               const std::vector<double>& shape,
                                               const std::vector<double>& deltas, double t_end,
                                               double dt) {
  const std::size_t n = p.size() - 2;
  if (shape.size() != n) throw Error("consistency: shape must live on the interior nodes");
  const auto d = assemble_operator(p, 0.0);
  constexpr std::size_t kEvery = 10;
  ConsistencyResult res;
  res.deltas = deltas;
  for (double delta : deltas) {
    std::vector<double> u0(shape);
    for (double& x : u0) x *= delta;
    std::vector<std::vector<double>> lin;
    evolve_linear(d, u0, t_end, dt, 1.0, nullptr,
                  [&](std::size_t step, double, const std::vector<double>& u) {
                    if (step % kEvery == 0) lin.push_back(u);
                  });
    double worst = 0.0;
    NonlinearOptions opt;
    opt.t_end = t_end;
    opt.dt = dt;
    opt.track_shift = false;
    opt.track_every = 1000000;
    opt.observer = [&](std::size_t step, double, const std::vector<double>& v) {
      if (step % kEvery != 0) return;
      const auto& ul = lin.at(step / kEvery);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double diff = (v[i + 1] - p.phi[i + 1]) - ul[i];
        s += diff * diff;
      }
      worst = std::max(worst, std::sqrt(p.h * s));
    };
    evolve_nonlinear(p, u0, opt);
    res.discrepancy.push_back(worst);
  }
  res.min_order = 99.0;
  for (std::size_t i = 1; i < res.discrepancy.size(); ++i) {
    const double o = std::log(res.discrepancy[i - 1] / res.discrepancy[i]) /
                     std::log(deltas[i - 1] / deltas[i]);
    res.orders.push_back(o);
    res.min_order = std::min(res.min_order, o);
  }
  if (res.orders.empty()) res.min_order = 0.0;
  return res;
}

}  // namespace degenfront
