#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "degenfront/polynomial.hpp"

namespace degenfront {

/// D(u) = u^2 + b u.
struct QuadraticDiffusion {
  double b = 1.0;
};

/// f(u) = u (1 - u) (u - alpha).
struct CubicReaction {
  double alpha = 0.5;
};

/// Arbitrary polynomial in ascending powers (degree <= 12).
struct CustomPolynomial {
  std::vector<double> coefficients;
};

using DiffusionSpec = std::variant<QuadraticDiffusion, CustomPolynomial>;
using ReactionSpec = std::variant<CubicReaction, CustomPolynomial>;

struct KineticsValues {
  double D = 0.0;
  double Dp = 0.0;
  double Dpp = 0.0;
  double f = 0.0;
  double fp = 0.0;
};

inline constexpr int kMaxKineticsDegree = 12;

/// Degenerate diffusion D and bistable reaction f. Both are polynomials and are
/// evaluated by their formulas on all of R; the hypotheses only concern [0, 1].
class KineticsPair {
 public:
  KineticsPair(DiffusionSpec diffusion, ReactionSpec reaction);

  static KineticsPair quadratic_cubic(double b, double alpha) {
    return KineticsPair(QuadraticDiffusion{b}, CubicReaction{alpha});
  }

  KineticsValues eval(double u) const;

  double D(double u) const { return D_(u); }
  double Dp(double u) const { return Dp_(u); }
  double Dpp(double u) const { return Dpp_(u); }
  double f(double u) const { return f_(u); }
  double fp(double u) const { return fp_(u); }
  double fpp(double u) const { return fpp_(u); }

  const Polynomial& diffusion() const { return D_; }
  const Polynomial& reaction() const { return f_; }

  /// Declared alpha for cubic reactions; for custom reactions the interior zero
  /// of f in (0, 1), or NaN when f has no sign change there.
  double alpha() const { return alpha_; }
  /// b for quadratic diffusion.
  std::optional<double> b() const;

  const DiffusionSpec& diffusion_spec() const { return diffusion_spec_; }
  const ReactionSpec& reaction_spec() const { return reaction_spec_; }

  /// min{|f'(0)|, |f'(1)|}.
  double mu1() const;

  /// Kirchhoff potential Phi(u) = int_0^u D.
  const Polynomial& kirchhoff() const { return Phi_; }

 private:
  DiffusionSpec diffusion_spec_;
  ReactionSpec reaction_spec_;
  Polynomial D_, Dp_, Dpp_, f_, fp_, fpp_, Phi_;
  double alpha_ = 0.0;
};

/// Evaluates D, D', D'', f, f' at u.
KineticsValues eval_kinetics(const KineticsPair& k, double u);

/// The potential  𝒟(phi) = int_0^phi D(u) f(u) du.
///
/// The closed form integrates the product polynomial. Near phi = 1 it is
/// evaluated as 𝒟(1) - int_phi^1 D f with the tail expanded about 1, so the
/// (small) values close to the non-degenerate end keep their relative accuracy.
class PotentialD {
 public:
  explicit PotentialD(const KineticsPair& k);

  double operator()(double phi) const;
  double at_one() const { return at_one_; }
  /// Adaptive Gauss-Kronrod evaluation of the same integral (abs tol 1e-12).
  double by_quadrature(double phi) const;

 private:
  Polynomial product_;      // D f
  Polynomial from_zero_;    // int_0^u D f
  Polynomial tail_at_one_;  // s -> int_{1+s}^{1} D f, in powers of s = u - 1
  double at_one_ = 0.0;
};

double potential_D(const KineticsPair& k, double phi);

/// Closed form alpha(b) = (3b + 2) / (5b + 3) for the quadratic/cubic pair.
double balance_alpha_closed_form(double b);

/// The unique alpha in (0, 1) with 𝒟(1) = 0 for a cubic reaction, by bracketed
/// root-finding on alpha -> int_0^1 D f_alpha. Quadratic diffusion results are
/// cross-checked against the closed form.
double balance_alpha(double b);
double balance_alpha(const DiffusionSpec& diffusion);

enum class Orientation { increasing_0_to_1, decreasing_1_to_0 };
enum class SpeedSign { negative, zero, positive };

inline constexpr double kBalanceTolerance = 1e-12;

SpeedSign speed_sign(const KineticsPair& k, Orientation orientation);
std::string to_string(SpeedSign s);

struct Violation {
  std::string what;
  double location = 0.0;
};

struct HypothesisReport {
  bool ok = true;
  std::vector<Violation> violations;
};

/// Checks the sign conditions on D and f on a uniform sample of [0, 1].
HypothesisReport validate_hypotheses(const KineticsPair& k, int samples);

}  // namespace degenfront
