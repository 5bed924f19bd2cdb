#include "degenfront/profile.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "degenfront/error.hpp"
#include "degenfront/grid.hpp"

namespace degenfront {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

template <class F>
double integrate(F&& f, double a, double b, double* err = nullptr) {
  if (a == b) return 0.0;
  double e = 0.0;
  // a single 15-point rule is exact to rounding on the short node-to-node spans
  const unsigned depth = std::abs(b - a) <= 0.05 ? 0 : 15;
  const double v = GK::integrate(f, a, b, depth, 1e-13, &e);
  if (err) *err = e;
  return v;
}

// Root of a strictly decreasing function X on [lo, hi] with X(root) = target.
template <class X, class DX>
double invert_decreasing(X&& value, DX&& slope, double target, double lo, double hi,
                         double guess) {
  double g = std::clamp(guess, lo, hi);
  for (int it = 0; it < 100; ++it) {
    const double r = value(g) - target;
    if (std::abs(r) <= 4e-16 * std::max(1.0, std::abs(target))) return g;
    if (r > 0.0) {
      lo = g;
    } else {
      hi = g;
    }
    if (hi - lo <= 1e-16 * std::max(1.0, std::abs(hi))) return 0.5 * (lo + hi);
    const double d = slope(g);
    double next = d != 0.0 ? g - r / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    g = next;
  }
  return g;
}

}  // namespace

FrontShape::FrontShape(const KineticsPair& k, double phi_at_zero) : k_(k), phi0_(phi_at_zero) {
  if (!(phi0_ > 0.0 && phi0_ < 1.0)) throw ConfigError("phi_at_zero out of (0,1)");
  const PotentialD pot(k_);
  if (std::abs(pot.at_one()) > kBalanceTolerance) {
    std::ostringstream os;
    os << "nonzero speed: potential at 1 is " << pot.at_one();
    throw Error(os.str());
  }
  const Polynomial P = (k_.diffusion() * k_.reaction()).antiderivative();
  K_ = P.dropped_low(3).divided_by_root(1.0).divided_by_root(1.0);
  constexpr int kSamples = 1000;
  for (int i = 0; i <= kSamples; ++i) {
    const double u = static_cast<double>(i) / kSamples;
    if (!(K_(u) < 0.0)) {
      std::ostringstream os;
      os << "potential sign violation near phi = " << u;
      throw Error(os.str());
    }
  }
  q_ = k_.diffusion().dropped_low(1);
  fr_ = k_.reaction().dropped_low(1).divided_by_root(1.0) * -1.0;
  t0_ = std::sqrt(phi0_);
  tau0_ = -std::log1p(-phi0_);
  omega0_ = integrate([this](double t) { return right_integrand(t); }, 0.0, t0_, &omega0_err_);
  if (!(omega0_err_ <= 1e-10)) {
    std::ostringstream os;
    os << "arrival point quadrature did not converge: achieved tolerance " << omega0_err_;
    throw NumericalError(os.str());
  }
}

double FrontShape::s(double phi) const { return std::sqrt(std::max(0.0, -2.0 * K_(phi))); }

double FrontShape::phi_x(const Level& l) const {
  if (l.phi <= 0.0) return 0.0;
  return -std::sqrt(l.phi) * l.w * s(l.phi) / q_(l.phi);
}

double FrontShape::phi_xx(const Level& l) const {
  const double qq = q_(l.phi);
  const double ss = s(l.phi);
  return -fr_(l.phi) * l.w / qq - k_.Dp(l.phi) * l.w * l.w * ss * ss / (qq * qq * qq);
}

double FrontShape::ratio(double phi, double phi_x) const {
  return -f_over_phi_x(phi) - k_.Dp(phi) * phi_x;
}

double FrontShape::f_over_phi_x(double phi) const {
  if (phi <= 0.0) return 0.0;
  return -std::sqrt(phi) * fr_(phi) * q_(phi) / s(phi);
}

double FrontShape::phi_x_sq_over_D(const Level& l) const {
  const double qq = q_(l.phi);
  const double ss = s(l.phi);
  return l.w * l.w * ss * ss / (qq * qq * qq);
}

double FrontShape::phi_xx_left_limit() const { return phi_xx(Level{0.0, 1.0}); }

double FrontShape::right_integrand(double t) const {
  const double phi = t * t;
  return 2.0 * q_(phi) / ((1.0 - phi) * s(phi));
}

double FrontShape::left_integrand(double tau) const {
  const double phi = -std::expm1(-tau);
  return q_(phi) / (std::sqrt(phi) * s(phi));
}

double FrontShape::position_of(double phi) const {
  if (!(phi > 0.0 && phi < 1.0)) throw Error("position_of: level out of (0,1)");
  if (phi <= phi0_) {
    return integrate([this](double t) { return right_integrand(t); }, std::sqrt(phi), t0_);
  }
  return -integrate([this](double tau) { return left_integrand(tau); }, tau0_,
                    -std::log1p(-phi));
}

double FrontShape::position_of_gap(double w) const {
  if (!(w > 0.0 && w < 1.0)) throw Error("position_of_gap: gap out of (0,1)");
  const double tau = -std::log(w);
  if (tau <= tau0_) return position_of(1.0 - w);
  return -integrate([this](double u) { return left_integrand(u); }, tau0_, tau);
}

Level FrontShape::level_at(double x) const {
  if (x >= omega0_) return {0.0, 1.0};
  if (x >= 0.0) {
    auto X = [&](double t) {
      return integrate([this](double u) { return right_integrand(u); }, t, t0_);
    };
    auto dX = [&](double t) { return -right_integrand(t); };
    const double t = invert_decreasing(X, dX, x, 0.0, t0_, t0_ * (1.0 - x / omega0_));
    return {t * t, 1.0 - t * t};
  }
  auto X = [&](double tau) {
    return -integrate([this](double u) { return left_integrand(u); }, tau0_, tau);
  };
  auto dX = [&](double tau) { return -left_integrand(tau); };
  double hi = tau0_ + 1.0;
  while (X(hi) > x) hi = tau0_ + 2.0 * (hi - tau0_);
  const double tau = invert_decreasing(X, dX, x, tau0_, hi, tau0_ - x / left_integrand(tau0_));
  return {-std::expm1(-tau), std::exp(-tau)};
}

std::size_t FrontProfile::first_degenerate() const {
  return static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), omega0) - x.begin());
}

namespace {

// Levels at sorted nodes, continuing each inversion from the previous node.
std::vector<Level> levels_on_grid(const FrontShape& sh, const std::vector<double>& x,
                                  double left_tol) {
  const std::size_t n = x.size();
  std::vector<Level> lv(n, Level{0.0, 1.0});
  const double w0 = sh.omega0();
  const auto right_f = [&](double t) { return sh.right_integrand(t); };
  const auto left_f = [&](double t) { return sh.left_integrand(t); };

  const std::size_t first_right =
      static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), 0.0) - x.begin());

  // right branch, t decreasing from sqrt(phi0)
  double t_ref = std::sqrt(sh.phi_at_zero());
  double x_ref = 0.0;
  for (std::size_t i = first_right; i < n && x[i] < w0; ++i) {
    const double tr = t_ref, xr = x_ref;
    auto X = [&](double t) { return xr + integrate(right_f, t, tr); };
    auto dX = [&](double t) { return -sh.right_integrand(t); };
    const double guess = tr + (x[i] - xr) / dX(tr);
    const double t = invert_decreasing(X, dX, x[i], 0.0, tr, guess);
    lv[i] = {t * t, 1.0 - t * t};
    t_ref = t;
    x_ref = x[i];
  }

  // left branch, tau increasing from -log(1 - phi0)
  double tau_ref = -std::log1p(-sh.phi_at_zero());
  x_ref = 0.0;
  const double tau_left = -std::log(left_tol);
  for (std::size_t j = first_right; j-- > 0;) {
    if (j == 0) {
      lv[0] = {1.0 - left_tol, left_tol};
      break;
    }
    const double tr = tau_ref, xr = x_ref;
    auto X = [&](double tau) { return xr - integrate(left_f, tr, tau); };
    auto dX = [&](double tau) { return -sh.left_integrand(tau); };
    double hi = std::max(tau_left + 1.0, tr + 1.0);
    while (X(hi) > x[j]) hi = tr + 2.0 * (hi - tr);
    const double guess = tr + (x[j] - xr) / dX(tr);
    const double tau = invert_decreasing(X, dX, x[j], tr, hi, guess);
    lv[j] = {-std::expm1(-tau), std::exp(-tau)};
    tau_ref = tau;
    x_ref = x[j];
  }
  return lv;
}

}  // namespace

ResidualStats profile_residuals(const FrontProfile& p) {
  ResidualStats r;
  const KineticsPair& k = p.kinetics();
  const PotentialD pot(k);
  const std::size_t m = p.first_degenerate();
  std::vector<double> G(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) G[i] = k.D(p.phi[i]) * p.phi_x[i];
  for (std::size_t i = 0; i < m; ++i) {
    // the upper tail is measured from 1 so that the rounding of 𝒟(1) does not swamp 𝒟 ~ w^2
    const double P = p.phi[i] > 0.5 ? pot(p.phi[i]) - pot.at_one() : pot(p.phi[i]);
    const double res = G[i] + std::sqrt(std::max(0.0, -2.0 * P));
    r.first_order = std::max(r.first_order, std::abs(res));
  }
  for (std::size_t i = 2; i + 2 < m; ++i) {
    const double dG = (G[i - 2] - 8.0 * G[i - 1] + 8.0 * G[i + 1] - G[i + 2]) / (12.0 * p.h);
    r.second_order = std::max(r.second_order, std::abs(dG + k.f(p.phi[i])));
  }
  return r;
}

FrontProfile solve_profile(const KineticsPair& k, double phi_at_zero, const ExtentOptions& extent,
                           std::size_t n_nodes) {
  if (n_nodes < 16) throw ConfigError("n_nodes must be at least 16");
  if (!(extent.left_tol > 0.0 && extent.left_tol < 1.0 - phi_at_zero)) {
    throw ConfigError("left_tol out of range");
  }
  if (!(extent.right_pad > 0.0)) throw ConfigError("right_pad must be positive");
  auto shape = std::make_shared<const FrontShape>(k, phi_at_zero);

  FrontProfile p;
  p.shape = shape;
  p.anchor = {0.0, phi_at_zero};
  p.extent = extent;
  p.omega0 = shape->omega0();
  const double xL = shape->position_of_gap(extent.left_tol);
  p.x = uniform_grid(xL, p.omega0 + extent.right_pad, n_nodes);
  p.h = (p.x.back() - p.x.front()) / static_cast<double>(n_nodes - 1);

  const auto lv = levels_on_grid(*shape, p.x, extent.left_tol);
  p.phi.resize(n_nodes);
  p.phi_x.resize(n_nodes);
  p.phi_xx.resize(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    if (p.x[i] >= p.omega0) {
      p.phi[i] = p.phi_x[i] = p.phi_xx[i] = 0.0;
      continue;
    }
    p.phi[i] = lv[i].phi;
    p.phi_x[i] = shape->phi_x(lv[i]);
    p.phi_xx[i] = shape->phi_xx(lv[i]);
  }
  p.phi_xx_left_limit = shape->phi_xx_left_limit();
  p.residuals = profile_residuals(p);
  return p;
}

FrontProfile profile_from_samples(const KineticsPair& k, const Anchor& anchor,
                                  const ExtentOptions& extent, std::vector<double> x,
                                  std::vector<double> phi, std::vector<double> phi_x,
                                  std::vector<double> phi_xx, double omega0) {
  const std::size_t n = x.size();
  if (n < 16 || phi.size() != n || phi_x.size() != n || phi_xx.size() != n) {
    throw Error("profile arrays have inconsistent lengths");
  }
  const double h = (x.back() - x.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(x[i] - x[i - 1] - h) > 1e-9 * std::max(1.0, h)) {
      throw Error("profile grid is not uniform");
    }
  }
  FrontProfile p;
  p.shape = std::make_shared<const FrontShape>(k, anchor.phi);
  p.anchor = anchor;
  p.extent = extent;
  p.omega0 = omega0;
  p.h = h;
  p.x = std::move(x);
  p.phi = std::move(phi);
  p.phi_x = std::move(phi_x);
  p.phi_xx = std::move(phi_xx);
  p.phi_xx_left_limit = p.shape->phi_xx_left_limit();
  p.residuals = profile_residuals(p);
  return p;
}

RatioBound ratio_bound_sup(const FrontProfile& p) {
  RatioBound r;
  const std::size_t m = p.first_degenerate();
  std::vector<double> d, v;
  for (std::size_t i = 0; i < m; ++i) {
    if (p.phi[i] <= 0.0) continue;
    const double val = std::abs(p.shape->ratio(p.phi[i], p.phi_x[i]));
    r.sup_value = std::max(r.sup_value, val);
    const double dist = p.omega0 - p.x[i];
    if (dist <= 0.1) {
      d.push_back(dist);
      v.push_back(val);
    }
  }
  if (m > 0) r.limit_left_infinity = std::abs(p.shape->ratio(p.phi[0], p.phi_x[0]));
  if (d.size() >= 3) {
    r.limit_at_omega0 = std::abs(fit_line(d, v).intercept);
  } else if (!v.empty()) {
    r.limit_at_omega0 = v.back();
  }
  return r;
}

AsymptoticRates asymptotic_rates(const FrontProfile& p) {
  const KineticsPair& k = p.kinetics();
  AsymptoticRates a;
  a.eta = std::sqrt(-k.fp(1.0) / k.D(1.0));
  a.a0 = std::sqrt(-(2.0 / 3.0) * k.fp(0.0) / k.Dp(0.0));
  a.curvature_limit = -(1.0 / 3.0) * k.fp(0.0) / k.Dp(0.0);
  a.ratio_sup = ratio_bound_sup(p).sup_value;

  std::vector<double> xs, ys;
  const double x_left = p.x.front();
  for (std::size_t i = 0; i < p.size() && p.x[i] <= x_left + 10.0 && p.x[i] < 0.0; ++i) {
    const double w = 1.0 - p.phi[i];
    if (w <= 0.0) continue;
    xs.push_back(p.x[i]);
    ys.push_back(std::log(w));
  }
  if (xs.size() < 10) throw Error("insufficient tail");
  a.eta_measured = fit_line(xs, ys).slope;

  std::vector<double> d, r;
  std::vector<double> lphi, lrat;
  for (std::size_t i = 0; i < p.first_degenerate(); ++i) {
    const double dist = p.omega0 - p.x[i];
    if (dist <= 0.3 && dist >= 0.25 * p.h && p.phi[i] > 0.0) {
      d.push_back(dist);
      r.push_back(p.phi[i] / (dist * dist));
    }
    if (p.phi[i] > 0.0 && p.phi[i] <= 0.05) {
      lphi.push_back(p.phi[i]);
      lrat.push_back(p.phi_x[i] / std::sqrt(p.phi[i]));
    }
  }
  if (d.size() < 8 || lphi.size() < 8) throw Error("insufficient tail");
  const auto c = fit_polynomial(d, r, 2);
  a.a0_measured = 2.0 * std::sqrt(c[0]);
  a.curvature_measured = 2.0 * c[0];
  a.b0_measured = fit_polynomial(lphi, lrat, 2)[1];
  return a;
}

ArrivalConvergence arrival_point_convergence(const FrontShape& s) {
  static const double node = std::sqrt(0.6);
  static const double xg[3] = {-node, 0.0, node};
  static const double wg[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  ArrivalConvergence out;
  const double t0 = std::sqrt(s.phi_at_zero());
  for (int panels : {2, 4, 8}) {
    const double len = t0 / panels;
    double sum = 0.0;
    for (int j = 0; j < panels; ++j) {
      const double mid = (j + 0.5) * len;
      for (int g = 0; g < 3; ++g) sum += wg[g] * s.right_integrand(mid + 0.5 * len * xg[g]);
    }
    out.panels.push_back(panels);
    out.omega0.push_back(0.5 * len * sum);
  }
  const double d1 = std::abs(out.omega0[0] - out.omega0[1]);
  const double d2 = std::abs(out.omega0[1] - out.omega0[2]);
  out.order = d2 > 0.0 ? std::log2(d1 / d2) : 99.0;
  return out;
}

}  // namespace degenfront
