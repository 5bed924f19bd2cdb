#pragma once

#include <initializer_list>
#include <vector>

namespace degenfront {

/// Dense real polynomial, coefficients stored in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);
  Polynomial(std::initializer_list<double> ascending);

  double operator()(double x) const;

  const std::vector<double>& coefficients() const { return coeffs_; }
  int degree() const;

  Polynomial derivative() const;
  /// Antiderivative vanishing at zero.
  Polynomial antiderivative() const;
  /// Coefficients of x -> p(x + a).
  Polynomial shifted(double a) const;
  /// Quotient of p by (x - root); the remainder p(root) is returned through `remainder`.
  Polynomial divided_by_root(double root, double* remainder = nullptr) const;
  /// Drops the k lowest coefficients, i.e. p(x)/x^k for p with a root of order k at 0.
  Polynomial dropped_low(int k) const;

  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(double s) const;

 private:
  void trim();
  std::vector<double> coeffs_;
};

}  // namespace degenfront
