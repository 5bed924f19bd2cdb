#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace degenfront {

/// Uniform grid of n points on [a, b], endpoints included.
std::vector<double> uniform_grid(double a, double b, std::size_t n);

/// Discrete L2 inner product on a uniform grid: h * sum a_i b_i. For vectors that
/// vanish at the Dirichlet ends this is the trapezoidal rule.
double inner(const std::vector<double>& a, const std::vector<double>& b, double h);
double l2_norm(const std::vector<double>& a, double h);
/// Trapezoidal rule with half weights at both ends.
double trapezoid(const std::vector<double>& y, double h);
double max_abs(const std::vector<double>& a);
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

/// Random smooth field: a sum of Gaussians with centers uniform in [lo, hi],
/// widths uniform in [wmin, wmax], amplitudes standard normal.
struct SmoothFieldOptions {
  double center_lo = -10.0;
  double center_hi = 2.0;
  double width_min = 0.5;
  double width_max = 2.0;
  int bumps = 6;
};

std::vector<double> smooth_random_field(const std::vector<double>& x, std::mt19937_64& rng,
                                        const SmoothFieldOptions& opt = {});

/// Least-squares line y = intercept + slope * t.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
};

LineFit fit_line(const std::vector<double>& t, const std::vector<double>& y);

/// Least-squares polynomial fit, ascending coefficients.
std::vector<double> fit_polynomial(const std::vector<double>& t, const std::vector<double>& y,
                                   int degree);

}  // namespace degenfront
