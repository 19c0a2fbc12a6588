#pragma once

#include <complex>
#include <vector>

namespace rinv {

/// Real univariate polynomial with ascending coefficients. Leading zero
/// coefficients are trimmed.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);

  static Polynomial monomial(int k, double coeff = 1.0);
  /// x - root
  static Polynomial linear(double root);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<double>& coeffs() const { return c_; }
  /// Coefficient of x^i, 0 beyond the degree.
  double operator[](int i) const { return i >= 0 && i <= degree() ? c_[i] : 0.0; }
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }

  double operator()(double x) const;
  Polynomial derivative() const;

  /// x^j * p
  Polynomial shifted(int j) const;

  /// All complex roots: exact zero roots are deflated first, the rest come
  /// from companion-matrix eigenvalues refined by one Newton step each.
  std::vector<std::complex<double>> roots() const;

  /// Real roots in increasing order. Throws NotRealRooted when some root has
  /// |imag| > tol * max(1, max|root|).
  std::vector<double> real_roots(double tol = 1e-7) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);

 private:
  void trim();
  std::vector<double> c_;
};

/// max_i |a_i - b_i| / max(max_i |a_i|, max_i |b_i|); 0 when both vanish.
double normwise_distance(const Polynomial& a, const Polynomial& b);

/// max_i |a_i - b_i| / max(|a_i|, |b_i|) over coefficients not both zero.
double coefficient_distance(const Polynomial& a, const Polynomial& b);

}  // namespace rinv
