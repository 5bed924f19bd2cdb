#include "degenfront/kinetics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "degenfront/error.hpp"

namespace degenfront {

namespace {

Polynomial diffusion_polynomial(const DiffusionSpec& spec) {
  if (const auto* q = std::get_if<QuadraticDiffusion>(&spec)) {
    return Polynomial({0.0, q->b, 1.0});
  }
  return Polynomial(std::get<CustomPolynomial>(spec).coefficients);
}

Polynomial reaction_polynomial(const ReactionSpec& spec) {
  if (const auto* c = std::get_if<CubicReaction>(&spec)) {
    // u (1 - u) (u - a) = -a u + (1 + a) u^2 - u^3
    return Polynomial({0.0, -c->alpha, 1.0 + c->alpha, -1.0});
  }
  return Polynomial(std::get<CustomPolynomial>(spec).coefficients);
}

void check_degree(const std::vector<double>& c, const char* which) {
  if (static_cast<int>(c.size()) > kMaxKineticsDegree + 1) {
    throw ConfigError(std::string(which) + " polynomial degree exceeds " +
                      std::to_string(kMaxKineticsDegree));
  }
  for (double v : c) {
    if (!std::isfinite(v)) throw ConfigError(std::string(which) + " coefficient is not finite");
  }
}

double interior_zero(const Polynomial& f) {
  constexpr int kScan = 2000;
  double prev_u = 1.0 / kScan;
  double prev = f(prev_u);
  for (int i = 2; i < kScan; ++i) {
    const double u = static_cast<double>(i) / kScan;
    const double v = f(u);
    if (prev == 0.0) return prev_u;
    if (prev < 0.0 && v > 0.0) {
      std::uintmax_t iters = 200;
      auto r = boost::math::tools::toms748_solve(
          [&](double x) { return f(x); }, prev_u, u, prev, v,
          boost::math::tools::eps_tolerance<double>(52), iters);
      return 0.5 * (r.first + r.second);
    }
    prev_u = u;
    prev = v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

KineticsPair::KineticsPair(DiffusionSpec diffusion, ReactionSpec reaction)
    : diffusion_spec_(std::move(diffusion)), reaction_spec_(std::move(reaction)) {
  if (const auto* c = std::get_if<CustomPolynomial>(&diffusion_spec_)) {
    check_degree(c->coefficients, "diffusion");
  }
  if (const auto* c = std::get_if<CustomPolynomial>(&reaction_spec_)) {
    check_degree(c->coefficients, "reaction");
  }
  D_ = diffusion_polynomial(diffusion_spec_);
  Dp_ = D_.derivative();
  Dpp_ = Dp_.derivative();
  f_ = reaction_polynomial(reaction_spec_);
  fp_ = f_.derivative();
  fpp_ = fp_.derivative();
  Phi_ = D_.antiderivative();
  if (const auto* c = std::get_if<CubicReaction>(&reaction_spec_)) {
    alpha_ = c->alpha;
  } else {
    alpha_ = interior_zero(f_);
  }
}

KineticsValues KineticsPair::eval(double u) const {
  return {D_(u), Dp_(u), Dpp_(u), f_(u), fp_(u)};
}

std::optional<double> KineticsPair::b() const {
  if (const auto* q = std::get_if<QuadraticDiffusion>(&diffusion_spec_)) return q->b;
  return std::nullopt;
}

double KineticsPair::mu1() const { return std::min(std::abs(fp_(0.0)), std::abs(fp_(1.0))); }

KineticsValues eval_kinetics(const KineticsPair& k, double u) { return k.eval(u); }

PotentialD::PotentialD(const KineticsPair& k)
    : product_(k.diffusion() * k.reaction()), from_zero_(product_.antiderivative()) {
  at_one_ = from_zero_(1.0);
  // F(1 + s) - F(1), so that 𝒟(1 + s) = 𝒟(1) + tail(s).
  auto c = from_zero_.shifted(1.0).coefficients();
  if (!c.empty()) c[0] = 0.0;
  tail_at_one_ = Polynomial(c);
}

double PotentialD::operator()(double phi) const {
  if (phi == 0.0) return 0.0;
  if (phi > 0.5) return at_one_ + tail_at_one_(phi - 1.0);
  return from_zero_(phi);
}

double PotentialD::by_quadrature(double phi) const {
  if (phi == 0.0) return 0.0;
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      [&](double u) { return product_(u); }, 0.0, phi, 15, 1e-14, &err);
  if (!(err <= 1e-12)) {
    std::ostringstream os;
    os << "potential quadrature did not converge: achieved tolerance " << err;
    throw NumericalError(os.str());
  }
  return v;
}

double potential_D(const KineticsPair& k, double phi) { return PotentialD(k)(phi); }

double balance_alpha_closed_form(double b) { return (3.0 * b + 2.0) / (5.0 * b + 3.0); }

double balance_alpha(const DiffusionSpec& diffusion) {
  const Polynomial D = diffusion_polynomial(diffusion);
  // 𝒟(1; a) = int_0^1 D u (1-u) (u - a) du
  const Polynomial u1mu({0.0, 1.0, -1.0});
  const Polynomial base = (D * u1mu).antiderivative();
  const Polynomial upper = (D * u1mu * Polynomial({0.0, 1.0})).antiderivative();
  const double A = upper(1.0);
  const double B = base(1.0);
  auto g = [&](double a) { return A - a * B; };
  const double lo = 1e-12;
  const double hi = 1.0 - 1e-12;
  const double glo = g(lo);
  const double ghi = g(hi);
  if (!(glo * ghi < 0.0)) throw Error("no balanced alpha");
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi,
                                             boost::math::tools::eps_tolerance<double>(52), iters);
  const double alpha = 0.5 * (r.first + r.second);
  if (const auto* q = std::get_if<QuadraticDiffusion>(&diffusion)) {
    const double closed = balance_alpha_closed_form(q->b);
    if (std::abs(closed - alpha) > 1e-10) {
      std::ostringstream os;
      os << "balance root " << alpha << " disagrees with closed form " << closed;
      throw NumericalError(os.str());
    }
  }
  return alpha;
}

double balance_alpha(double b) {
  if (!(b > 0.0)) throw ConfigError("b must be positive");
  return balance_alpha(DiffusionSpec{QuadraticDiffusion{b}});
}

SpeedSign speed_sign(const KineticsPair& k, Orientation orientation) {
  const double d1 = PotentialD(k).at_one();
  if (std::abs(d1) <= kBalanceTolerance) return SpeedSign::zero;
  const bool d1_positive = d1 > 0.0;
  const bool c_positive = orientation == Orientation::increasing_0_to_1 ? !d1_positive : d1_positive;
  return c_positive ? SpeedSign::positive : SpeedSign::negative;
}

std::string to_string(SpeedSign s) {
  switch (s) {
    case SpeedSign::negative: return "negative";
    case SpeedSign::zero: return "zero";
    case SpeedSign::positive: return "positive";
  }
  return "zero";
}

HypothesisReport validate_hypotheses(const KineticsPair& k, int samples) {
  if (samples < 100) throw ConfigError("validate_hypotheses needs at least 100 samples");
  HypothesisReport rep;
  auto flag = [&](std::string what, double at) {
    rep.ok = false;
    rep.violations.push_back({std::move(what), at});
  };
  // First offending sample per condition.
  auto scan = [&](auto&& bad, double from, double to, bool open_left, bool open_right,
                  const std::string& what) {
    for (int i = 0; i <= samples; ++i) {
      const double u = from + (to - from) * i / samples;
      if ((open_left && i == 0) || (open_right && i == samples)) continue;
      if (bad(u)) {
        flag(what, u);
        return;
      }
    }
  };

  if (k.D(0.0) != 0.0) flag("D(0) ≠ 0", 0.0);
  scan([&](double u) { return !(k.D(u) > 0.0); }, 0.0, 1.0, true, false, "D(u) ≤ 0 on (0,1]");
  if (!(k.Dp(0.0) > 0.0)) flag("D'(0) ≤ 0", 0.0);
  scan([&](double u) { return !(k.Dp(u) > 0.0); }, 0.0, 1.0, true, false, "D'(u) ≤ 0 on (0,1]");

  const double a = k.alpha();
  const bool alpha_ok = std::isfinite(a) && a > 0.0 && a < 1.0;
  if (!alpha_ok) flag("α ∉ (0,1)", std::isfinite(a) ? a : 0.0);
  if (std::abs(k.f(0.0)) > 1e-12) flag("f(0) ≠ 0", 0.0);
  if (std::abs(k.f(1.0)) > 1e-12) flag("f(1) ≠ 0", 1.0);
  if (!(k.fp(0.0) < 0.0)) flag("f'(0) ≥ 0", 0.0);
  if (!(k.fp(1.0) < 0.0)) flag("f'(1) ≥ 0", 1.0);
  if (alpha_ok) {
    if (std::abs(k.f(a)) > 1e-12) flag("f(α) ≠ 0", a);
    if (!(k.fp(a) > 0.0)) flag("f'(α) ≤ 0", a);
    scan([&](double u) { return !(k.f(u) < 0.0); }, 0.0, a, true, true, "f(u) ≥ 0 on (0,α)");
    scan([&](double u) { return !(k.f(u) > 0.0); }, a, 1.0, true, true, "f(u) ≤ 0 on (α,1)");
  }
  return rep;
}

}  // namespace degenfront
