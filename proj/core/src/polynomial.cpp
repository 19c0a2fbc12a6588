#include "rinv/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "rinv/error.hpp"

namespace rinv {

namespace {

std::complex<double> eval_complex(const std::vector<double>& c, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> ascending) : c_(std::move(ascending)) {
  for (double x : c_) {
    if (!std::isfinite(x)) fail(ErrorCode::NonFinite, "polynomial coefficient is not finite");
  }
  trim();
}

// Only exact zeros go: a relative cutoff is not scale invariant, and a monic
// polynomial with roots near 100 already spans 12 orders of magnitude at degree 6.
void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

Polynomial Polynomial::monomial(int k, double coeff) {
  std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
  c[k] = coeff;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::linear(double root) { return Polynomial({-root, 1.0}); }

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(int j) const {
  if (c_.empty()) return {};
  std::vector<double> d(static_cast<std::size_t>(j), 0.0);
  d.insert(d.end(), c_.begin(), c_.end());
  return Polynomial(std::move(d));
}

std::vector<std::complex<double>> Polynomial::roots() const {
  if (c_.empty()) fail(ErrorCode::RootFindingFailure, "the zero polynomial has no isolated roots");
  std::vector<std::complex<double>> out;
  std::size_t low = 0;
  while (c_[low] == 0.0) {
    out.emplace_back(0.0, 0.0);
    ++low;
  }
  const std::vector<double> c(c_.begin() + static_cast<std::ptrdiff_t>(low), c_.end());
  const int d = static_cast<int>(c.size()) - 1;
  if (d == 0) return out;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::RootFindingFailure, "companion eigensolver failed");
  std::vector<double> dc(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) dc[i - 1] = i * c[i];
  for (int i = 0; i < d; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    const std::complex<double> fp = eval_complex(dc, z);
    if (std::abs(fp) > 0.0) {
      const std::complex<double> step = eval_complex(c, z) / fp;
      // Keep the polish only when it does not make the residual worse.
      if (std::abs(eval_complex(c, z - step)) <= std::abs(eval_complex(c, z))) z -= step;
    }
    out.push_back(z);
  }
  return out;
}

std::vector<double> Polynomial::real_roots(double tol) const {
  const auto zs = roots();
  double scale = 1.0;
  for (const auto& z : zs) scale = std::max(scale, std::abs(z));
  std::vector<double> out;
  out.reserve(zs.size());
  for (const auto& z : zs) {
    if (std::abs(z.imag()) > tol * scale) {
      fail(ErrorCode::NotRealRooted, "root with imaginary part " + std::to_string(z.imag()));
    }
    out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) {
  std::vector<double> c = a.c_;
  for (double& x : c) x *= s;
  return Polynomial(std::move(c));
}

double normwise_distance(const Polynomial& a, const Polynomial& b) {
  const int d = std::max(a.degree(), b.degree());
  double diff = 0.0;
  double scale = 0.0;
  for (int i = 0; i <= d; ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  }
  return scale == 0.0 ? 0.0 : diff / scale;
}

double coefficient_distance(const Polynomial& a, const Polynomial& b) {
  const int d = std::max(a.degree(), b.degree());
  double worst = 0.0;
  for (int i = 0; i <= d; ++i) {
    const double scale = std::max(std::abs(a[i]), std::abs(b[i]));
    if (scale > 0.0) worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

}  // namespace rinv
