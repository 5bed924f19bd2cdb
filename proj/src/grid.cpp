#include "degenfront/grid.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "degenfront/error.hpp"

namespace degenfront {

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
  if (n < 2) throw Error("grid needs at least two points");
  std::vector<double> x(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) x[i] = a + h * static_cast<double>(i);
  x.back() = b;
  return x;
}

double inner(const std::vector<double>& a, const std::vector<double>& b, double h) {
  if (a.size() != b.size()) throw Error("inner: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return h * s;
}

double l2_norm(const std::vector<double>& a, double h) { return std::sqrt(inner(a, a, h)); }

double trapezoid(const std::vector<double>& y, double h) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return h * s;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> smooth_random_field(const std::vector<double>& x, std::mt19937_64& rng,
                                        const SmoothFieldOptions& opt) {
  std::uniform_real_distribution<double> center(opt.center_lo, opt.center_hi);
  std::uniform_real_distribution<double> width(opt.width_min, opt.width_max);
  std::normal_distribution<double> amp(0.0, 1.0);
  std::vector<double> u(x.size(), 0.0);
  for (int k = 0; k < opt.bumps; ++k) {
    const double c = center(rng);
    const double w = width(rng);
    const double a = amp(rng);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double z = (x[i] - c) / w;
      u[i] += a * std::exp(-0.5 * z * z);
    }
  }
  return u;
}

LineFit fit_line(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  if (n < 2 || y.size() != n) throw Error("fit_line needs matching samples");
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mt += t[i];
    my += y[i];
  }
  mt /= n;
  my /= n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    sty += (t[i] - mt) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sty / stt;
  fit.intercept = my - fit.slope * mt;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * t[i];
    sse += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  fit.slope_stderr = n > 2 ? std::sqrt(sse / (n - 2) / stt) : 0.0;
  return fit;
}

std::vector<double> fit_polynomial(const std::vector<double>& t, const std::vector<double>& y,
                                   int degree) {
  const auto n = static_cast<Eigen::Index>(t.size());
  if (n <= degree || y.size() != t.size()) throw Error("fit_polynomial: too few samples");
  Eigen::MatrixXd A(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (int j = 0; j <= degree; ++j) {
      A(i, j) = p;
      p *= t[i];
    }
    b(i) = y[i];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  return std::vector<double>(c.data(), c.data() + c.size());
}

}  // namespace degenfront
