#include "degenfront/polynomial.hpp"

#include <algorithm>
#include <cstddef>

namespace degenfront {

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> ascending) : coeffs_(ascending) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

int Polynomial::degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.size()) - 1; }

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  if (coeffs_.empty()) return {};
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::shifted(double a) const {
  // Repeated synthetic division (Taylor shift).
  std::vector<double> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k > i; --k) c[k - 1] += a * c[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::divided_by_root(double root, double* remainder) const {
  if (coeffs_.empty()) {
    if (remainder) *remainder = 0.0;
    return {};
  }
  const std::size_t n = coeffs_.size();
  std::vector<double> q(n > 1 ? n - 1 : 0, 0.0);
  double carry = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double value = coeffs_[k] + carry * root;
    if (k == 0) {
      if (remainder) *remainder = value;
    } else {
      q[k - 1] = value;
    }
    carry = value;
  }
  return Polynomial(std::move(q));
}

Polynomial Polynomial::dropped_low(int k) const {
  if (k <= 0) return *this;
  if (static_cast<std::size_t>(k) >= coeffs_.size()) return {};
  return Polynomial(std::vector<double>(coeffs_.begin() + k, coeffs_.end()));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (coeffs_.empty() || other.coeffs_.empty()) return {};
  std::vector<double> r(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> r(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) r[i] += other.coeffs_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> r = coeffs_;
  for (double& c : r) c *= s;
  return Polynomial(std::move(r));
}

}  // namespace degenfront
