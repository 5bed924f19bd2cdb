#include "degenfront/semigroup.hpp"

#include <algorithm>
#include <memory>
#include <cmath>
#include <sstream>

#include "degenfront/error.hpp"
#include "degenfront/grid.hpp"
#include "degenfront/lapack.hpp"

namespace degenfront {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void scale(std::vector<double>& a, double s) {
  for (double& v : a) v *= s;
}

}  // namespace

ProjectionData build_projection(const FrontProfile& p, double x0_anchor) {
  if (!(x0_anchor < p.omega0)) throw ConfigError("projection anchor must lie left of omega0");
  const KineticsPair& k = p.kinetics();
  ProjectionData pd;
  pd.x0 = x0_anchor;
  pd.h = p.h;
  pd.D0 = k.D(p.shape->level_at(x0_anchor).phi);
  if (!(pd.D0 > 0.0)) throw ConfigError("D(phi(x0)) must be positive");
  const std::size_t n = p.size() - 2;
  pd.phi_x.assign(p.phi_x.begin() + 1, p.phi_x.end() - 1);
  pd.psi.resize(n);
  for (std::size_t i = 0; i < n; ++i) pd.psi[i] = k.D(p.phi[i + 1]) / pd.D0 * pd.phi_x[i];
  pd.psi_left = k.D(p.phi.front()) / pd.D0 * p.phi_x.front();
  pd.psi_right = k.D(p.phi.back()) / pd.D0 * p.phi_x.back();
  pd.theta = inner(pd.psi, pd.phi_x, pd.h);
  if (!(pd.theta > 0.0)) throw NumericalError("internal error: Theta is not positive");
  return pd;
}

void attach_discrete_kernel(ProjectionData& pd, const OperatorDiscretization& d) {
  if (d.n() != pd.phi_x.size()) throw Error("discrete kernel: dimension mismatch");
  auto factor = [&](double shift) {
    std::vector<double> dg(d.diag);
    for (double& v : dg) v -= shift;
    return lapack::TridiagonalLU(d.lower, dg, d.upper);
  };
  double shift = 0.0;
  std::unique_ptr<lapack::TridiagonalLU> lu;
  try {
    lu = std::make_unique<lapack::TridiagonalLU>(factor(shift));
  } catch (const NumericalError&) {
    shift = 1e-8;
    lu = std::make_unique<lapack::TridiagonalLU>(factor(shift));
  }
  auto iterate = [&](bool transpose, std::vector<double> v) {
    scale(v, 1.0 / norm2(v));
    for (int it = 0; it < 6; ++it) {
      lu->solve(v, transpose);
      scale(v, 1.0 / norm2(v));
    }
    if (dot(v, pd.phi_x) < 0.0) scale(v, -1.0);
    return v;
  };
  pd.kernel = iterate(false, pd.phi_x);
  pd.cokernel = iterate(true, pd.psi.empty() ? pd.phi_x : pd.psi);
  const double c = dot(pd.cokernel, pd.kernel);
  if (!(std::abs(c) > 1e-300)) throw NumericalError("discrete kernel and co-kernel are orthogonal");
  scale(pd.cokernel, 1.0 / c);
  const auto Lv = apply_L(d, pd.kernel);
  pd.kernel_eigenvalue = dot(pd.kernel, Lv);
  pd.has_discrete = true;
}

std::vector<double> project(const ProjectionData& pd, const std::vector<double>& u) {
  if (u.size() != pd.psi.size()) throw Error("project: dimension mismatch");
  const double c = inner(u, pd.psi, pd.h) / pd.theta;
  std::vector<double> out(u);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] -= c * pd.phi_x[i];
  return out;
}

std::vector<double> project_discrete(const ProjectionData& pd, const std::vector<double>& u) {
  if (!pd.has_discrete) throw Error("discrete kernel not attached");
  if (u.size() != pd.kernel.size()) throw Error("project: dimension mismatch");
  const double c = dot(pd.cokernel, u);
  std::vector<double> out(u);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] -= c * pd.kernel[i];
  return out;
}

std::vector<double> project_best(const ProjectionData& pd, const std::vector<double>& u) {
  return pd.has_discrete ? project_discrete(pd, u) : project(pd, u);
}

double adjoint_residual(const OperatorDiscretization& d, const ProjectionData& pd) {
  auto r = apply_LT(d, pd.psi);
  const double h2 = d.h * d.h;
  r.front() += d.d_eps.front() * pd.psi_left / h2;
  r.back() += d.d_eps.back() * pd.psi_right / h2;
  return norm2(r) / norm2(pd.psi);
}

Eta0Bound eta0_bound(const FrontProfile& p) {
  const KineticsPair& k = p.kinetics();
  const FrontShape& sh = *p.shape;
  Eta0Bound b;
  const std::size_t m = p.first_degenerate();
  // D(phi)_xx = D'' phi_x^2 + D' phi_xx; D(phi)_x^2 / D = D'^2 phi_x^2 / D.
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double ph = p.phi[i];
    const double q0 =
        0.5 * (k.Dpp(ph) * p.phi_x[i] * p.phi_x[i] + k.Dp(ph) * p.phi_xx[i]) + k.fp(ph);
    b.C0 = std::max(b.C0, std::abs(q0));
    if (i < m && ph > 0.0) {
      const double Dp = k.Dp(ph);
      b.M_ratio = std::max(b.M_ratio, Dp * Dp * sh.phi_x_sq_over_D(Level{ph, 1.0 - ph}));
    }
  }
  const double Dp0 = k.Dp(0.0);
  b.C0 = std::max(b.C0, std::abs(0.5 * Dp0 * p.phi_xx_left_limit + k.fp(0.0)));
  b.ratio_limit_omega0 = Dp0 * Dp0 * sh.phi_x_sq_over_D(Level{0.0, 1.0});
  b.M_ratio = std::max(b.M_ratio, b.ratio_limit_omega0);
  if (m > 0) {
    const double Dp = k.Dp(p.phi[0]);
    b.ratio_left_end = Dp * Dp * sh.phi_x_sq_over_D(Level{p.phi[0], 1.0 - p.phi[0]});
  }
  b.epsilon_star = 1.0 / (2.0 * b.M_ratio);
  b.eta0 = b.C0 + 1.0 / (4.0 * b.epsilon_star);
  return b;
}

double smallest_singular_value(const OperatorDiscretization& d, std::complex<double> lambda) {
  const int n = static_cast<int>(d.n());
  constexpr int kd = 2;
  // A = lambda I - L, tridiagonal
  auto A = [&](int r, int c) -> std::complex<double> {
    if (c == r) return lambda - d.diag[r];
    if (c == r - 1) return -d.lower[r];
    if (c == r + 1) return -d.upper[r];
    return 0.0;
  };
  std::vector<std::complex<double>> ab(static_cast<std::size_t>(kd + 1) * n, 0.0);
  for (int r = 0; r < n; ++r) {
    for (int i = std::max(0, r - 1); i <= std::min(n - 1, r + 1); ++i) {
      for (int j = i; j <= std::min(n - 1, r + 1); ++j) {
        ab[static_cast<std::size_t>(kd + i - j) + static_cast<std::size_t>(j) * (kd + 1)] +=
            std::conj(A(r, i)) * A(r, j);
      }
    }
  }
  const double ev = lapack::zhb_smallest_eigenvalue(std::move(ab), n, kd);
  return std::sqrt(std::max(0.0, ev));
}

std::vector<ResolventSample> resolvent_check(const OperatorDiscretization& d, double eta0,
                                             const std::vector<std::complex<double>>& samples) {
  std::vector<ResolventSample> out;
  for (const auto& l : samples) {
    if (!(l.real() > eta0)) {
      std::ostringstream os;
      os << "resolvent sample " << l.real() << (l.imag() < 0 ? "" : "+") << l.imag()
         << "i rejected: Re lambda <= eta0 = " << eta0;
      throw Error(os.str());
    }
    ResolventSample s;
    s.lambda = l;
    s.smin = smallest_singular_value(d, l);
    s.bound = 0.95 * std::abs(l - eta0) / 2.0;
    s.bound_ok = s.smin >= s.bound;
    out.push_back(s);
  }
  return out;
}

Trajectory evolve_linear(const OperatorDiscretization& d, const std::vector<double>& u0,
                         double t_end, double dt, double theta_scheme, const ProjectionData* pd,
                         const StateObserver& observer) {
  const std::size_t n = d.n();
  if (u0.size() != n) throw Error("evolve_linear: dimension mismatch");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(theta_scheme >= 0.5 && theta_scheme <= 1.0)) throw ConfigError("theta must lie in [0.5, 1]");
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
  std::vector<double> lo(n), dg(n), up(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = -theta_scheme * dt * d.lower[i];
    dg[i] = 1.0 - theta_scheme * dt * d.diag[i];
    up[i] = -theta_scheme * dt * d.upper[i];
  }
  const lapack::TridiagonalLU lu(lo, dg, up);

  Trajectory tr;
  std::vector<double> u = u0;
  auto record = [&](std::size_t step, double t) {
    tr.t.push_back(t);
    tr.norm_u.push_back(l2_norm(u, d.h));
    tr.norm_Pu.push_back(pd ? l2_norm(project_best(*pd, u), d.h) : tr.norm_u.back());
    if (observer) observer(step, t, u);
  };
  record(0, 0.0);
  for (std::size_t s = 1; s <= steps; ++s) {
    if (theta_scheme < 1.0) {
      const auto Lu = apply_L(d, u);
      for (std::size_t i = 0; i < n; ++i) u[i] += (1.0 - theta_scheme) * dt * Lu[i];
    }
    try {
      lu.solve(u);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "linear solve failed at step " << s << ": " << e.what();
      throw NumericalError(os.str());
    }
    record(s, static_cast<double>(s) * dt);
  }
  tr.u_final = std::move(u);
  return tr;
}

DecayFit fit_decay(const Trajectory& traj, double t_burn) {
  DecayFit fit;
  std::size_t after = 0;
  for (double t : traj.t) after += t >= t_burn;
  if (after < 20) throw Error("fit_decay: fewer than 20 samples after t_burn");
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    if (traj.t[i] < t_burn) continue;
    if (traj.norm_Pu[i] < kNormFloor) break;
    fit.times.push_back(traj.t[i]);
    fit.norms.push_back(traj.norm_Pu[i]);
  }
  if (fit.times.size() < 20) {
    fit.rejected = true;
    fit.note = "norms at the floor";
    if (!fit.times.empty()) {
      fit.window_start = fit.times.front();
      fit.window_end = fit.times.back();
    }
    return fit;
  }
  fit.window_start = fit.times.front();
  fit.window_end = fit.times.back();
  const auto [mn, mx] = std::minmax_element(fit.norms.begin(), fit.norms.end());
  std::vector<double> logs(fit.norms.size());
  for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = std::log(fit.norms[i]);
  const LineFit lf = fit_line(fit.times, logs);
  fit.fitted_rate = -lf.slope;
  fit.r_squared = lf.r_squared;
  if (!traj.norm_Pu.empty() && traj.norm_Pu.front() > 0.0) {
    fit.prefactor = std::exp(lf.intercept) / traj.norm_Pu.front();
  }
  if ((*mx - *mn) <= kFlatSpread * *mx) {
    fit.rejected = true;
    fit.note = "norms constant";
  }
  return fit;
}

}  // namespace degenfront
