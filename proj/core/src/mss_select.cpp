#include "rinv/mss_select.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <numbers>

#include "rinv/bounds.hpp"
#include "rinv/error.hpp"

namespace rinv {

namespace {

constexpr double kIdentityTol = 1e-8;

// e_0..e_K of the given values.
std::vector<double> elementary_symmetric(const Vec& v, int kmax) {
  std::vector<double> e(static_cast<std::size_t>(kmax) + 1, 0.0);
  e[0] = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    for (int u = kmax; u >= 1; --u) e[u] += v(i) * e[u - 1];
  }
  return e;
}

// (-1)^u K! / (K-u)!, the weight of y^u under (I - d/dy)^K at y = 0.
double falling_weight(int big_k, int u) {
  double w = 1.0;
  for (int i = 0; i < u; ++i) w *= -(big_k - i);
  return w;
}

// Monomial coefficients in x of sum_l c_l T_l(2x/U - 1).
Polynomial chebyshev_to_monomial(const std::vector<double>& c, double upper) {
  const Polynomial s({-1.0, 2.0 / upper});
  Polynomial t_prev({1.0});
  Polynomial t_cur = s;
  Polynomial acc = c[0] * t_prev;
  if (c.size() > 1) acc = acc + c[1] * t_cur;
  for (std::size_t l = 2; l < c.size(); ++l) {
    Polynomial t_next = 2.0 * (s * t_cur) - t_prev;
    acc = acc + c[l] * t_next;
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }
  return acc;
}

// h(x) = sum_l c_l T_l(2x/U - 1), the interpolant kept in the Chebyshev
// basis. Converting to monomials amplifies rounding by up to (1+sqrt 2)^{2k},
// so root finding stays in this form.
struct ChebSeries {
  std::vector<double> c;
  double upper = 1.0;

  double operator()(double x) const {
    const double t = 2.0 * x / upper - 1.0;
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t l = c.size() - 1; l >= 1; --l) {
      const double b0 = 2.0 * t * b1 - b2 + c[l];
      b2 = b1;
      b1 = b0;
    }
    return t * b1 - b2 + c[0];
  }

  ChebSeries derivative() const {
    const std::size_t deg = c.size() - 1;
    ChebSeries d{std::vector<double>(std::max<std::size_t>(deg, 1), 0.0), upper};
    if (deg == 0) return d;
    std::vector<double> e(deg + 1, 0.0);  // e[l] = coefficient of T_l in d/dt
    for (std::size_t l = deg; l >= 1; --l) e[l - 1] = (l + 1 <= deg ? e[l + 1] : 0.0) + 2.0 * l * c[l];
    e[0] *= 0.5;
    for (std::size_t l = 0; l < deg; ++l) d.c[l] = e[l] * 2.0 / upper;
    return d;
  }
};

// Newton started outside the root hull of a real-rooted h moves
// monotonically onto the nearest extreme root, multiple roots included.
// Companion eigenvalues would split a p-fold root by about eps^(1/p).
double extreme_root(const ChebSeries& h, double start) {
  const ChebSeries dh = h.derivative();
  const double dir = start < 0.5 * h.upper ? 1.0 : -1.0;
  double x = start;
  for (int it = 0; it < 100'000; ++it) {
    const double fx = h(x);
    const double dfx = dh(x);
    // h' has no zero outside the root hull, so a vanishing value or
    // derivative means x already sits in the rounding band of a root.
    if (fx == 0.0 || dfx == 0.0) return x;
    const double step = -fx / dfx;
    if (!std::isfinite(step)) break;
    if (dir * step <= 1e-15 * std::max(std::abs(x), 1e-9 * h.upper)) return x;
    x += step;
  }
  fail(ErrorCode::RootFindingFailure, "Newton iteration for an extreme root did not settle");
}

}  // namespace

Polynomial apply_shift_derivative(const Polynomial& f, double s2) { return f - s2 * f.derivative(); }

Polynomial g_poly(const Vec& s, int rank, int k) {
  if (k < 1 || rank < 1 || rank > s.size()) fail(ErrorCode::BadParams, "g_poly needs k, rank >= 1");
  Polynomial g = Polynomial::monomial(k);
  for (int i = 0; i < rank; ++i) g = apply_shift_derivative(g, s(i) * s(i));
  return g;
}

Polynomial expected_char_poly_expansion(const Vec& s, int n, int rank, int k) {
  Vec s2(rank);
  for (int i = 0; i < rank; ++i) s2(i) = s(i) * s(i);
  // prod_i (x + y s_i^2) has x^{rank-u} y^u coefficient e_u(s^2).
  const int top = std::min(k, rank);
  const std::vector<double> e = elementary_symmetric(s2, top);
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int u = 0; u <= top; ++u) c[n - u] = falling_weight(k, u) * e[u];
  return Polynomial(std::move(c));
}

Polynomial expected_char_poly(const Matrix& a, int k) {
  const int n = a.rows();
  if (k < 1 || k > n) fail(ErrorCode::BadParams, "expected_char_poly needs 1 <= k <= n");
  const int rank = numerical_rank(a);
  if (rank == 0) fail(ErrorCode::ZeroMatrix, "expected_char_poly of the zero matrix");
  const Vec& s = a.singular_values();
  const Polynomial via_g = g_poly(s, rank, k).shifted(n - k);
  const Polynomial via_det = expected_char_poly_expansion(s, n, rank, k);
  const double dist = coefficient_distance(via_g, via_det);
  if (!(dist <= kIdentityTol)) {
    fail(ErrorCode::IdentityMismatch, "x^{n-k} g and the determinant expansion differ by " + std::to_string(dist));
  }
  return via_g;
}

double smin_phi(const Polynomial& f, double phi) {
  if (!(phi > 0.0)) fail(ErrorCode::BadParams, "phi must be > 0");
  if (f.degree() < 1) fail(ErrorCode::BadParams, "smin_phi needs a nonconstant polynomial");
  (void)f.real_roots();
  const std::vector<double> r = (f.derivative() + phi * f).real_roots();
  return r.front();
}

double transform_objective(const Vec& s, int rank, int k, double phi) {
  double acc = -k / phi;
  for (int i = 0; i < rank; ++i) {
    const double s2 = s(i) * s(i);
    acc += s2 / (1.0 + phi * s2);
  }
  return acc;
}

double relaxed_objective(const Vec& s, int rank, int k, double phi) {
  double inv = 0.0;
  for (int i = 0; i < rank; ++i) inv += 1.0 / (s(i) * s(i));
  return -k / phi + rank / (phi + inv / rank);
}

BarrierEval barrier_bound(const Vec& s, int rank, int k) {
  if (k < 1) fail(ErrorCode::BadParams, "k must be >= 1");
  if (k >= rank) fail(ErrorCode::KTooLarge, "barrier bound needs k < rank(A)");
  BarrierEval out;
  out.gamma = barrier_gamma(s, rank, k);
  double inv = 0.0;
  double s4 = 0.0;
  double s2min = kInf;
  for (int i = 0; i < rank; ++i) {
    const double s2 = s(i) * s(i);
    inv += 1.0 / s2;
    s4 += s2 * s2;
    s2min = std::min(s2min, s2);
  }
  const double rk = std::sqrt(static_cast<double>(rank));
  const double kk = std::sqrt(static_cast<double>(k));
  out.phi_max = kk / (rk - kk) * inv / rank;
  out.relaxed_at_phi_max = relaxed_objective(s, rank, k, out.phi_max);

  // In psi = 1/phi the objective is concave; its derivative
  // -k + sum s^4/(psi + s^2)^2 decreases from rank - k to -k.
  auto slope = [&](double psi) {
    double acc = -static_cast<double>(k);
    for (int i = 0; i < rank; ++i) {
      const double s2 = s(i) * s(i);
      acc += (s2 / (psi + s2)) * (s2 / (psi + s2));
    }
    return acc;
  };
  double lo = 1e-12 * s2min;
  while (slope(lo) <= 0.0) lo *= 1e-6;
  double hi = 2.0 * std::sqrt(s4 / k);
  for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-15; ++it) {
    const double mid = std::sqrt(lo * hi);
    (slope(mid) > 0.0 ? lo : hi) = mid;
  }
  const double psi = std::sqrt(lo * hi);
  out.phi = 1.0 / psi;
  out.value = transform_objective(s, rank, k, out.phi);
  const double at_phi_max = transform_objective(s, rank, k, out.phi_max);
  if (at_phi_max > out.value) {
    out.value = at_phi_max;
    out.phi = out.phi_max;
  }
  out.refined = out.value;
  return out;
}

BarrierEval barrier_bound(const Matrix& a, int k) { return barrier_bound(a.singular_values(), numerical_rank(a), k); }

namespace {

// The reduced conditional polynomial h of a prefix, evaluated pointwise and
// interpolated through k+1 Chebyshev nodes on [0, hi]. Interpolation is exact
// on any interval, but the rounding error scales with max |h| there, so
// callers pick hi close to the roots they care about.
class ConditionalPoly {
 public:
  ConditionalPoly(const Matrix& a, const std::vector<int>& prefix, int k) : n_(a.rows()), k_(k) {
    const int m = a.cols();
    const int t = static_cast<int>(prefix.size());
    if (n_ > kMaxCharPolyDim) fail(ErrorCode::TooLarge, "characteristic polynomials limited to n <= 64");
    if (k < 1 || k > n_) fail(ErrorCode::BadParams, "need 1 <= k <= n");
    if (t > k) fail(ErrorCode::BadParams, "prefix longer than k");
    Mat b = Mat::Zero(n_, n_);
    for (int j : prefix) {
      if (j < 0 || j >= m) fail(ErrorCode::BadParams, "prefix index out of range");
      b.noalias() += static_cast<double>(m) * a.col(j) * a.col(j).transpose();
    }
    Eigen::SelfAdjointEigenSolver<Mat> eig(b);
    lambda_ = eig.eigenvalues();
    at_ = eig.eigenvectors().transpose() * a.dense();
    big_k_ = k - t;
    weight_.resize(static_cast<std::size_t>(big_k_) + 1);
    for (int u = 0; u <= big_k_; ++u) weight_[u] = falling_weight(big_k_, u);
    // The roots of h are nonnegative and sum to tr(B) + (k-t) ||A||_F^2,
    // which therefore bounds the largest one.
    upper_ = std::max(b.trace(), 0.0) + big_k_ * a.dense().squaredNorm();
    if (!(upper_ > 0.0)) upper_ = 1.0;
  }

  double upper() const { return upper_; }

  double operator()(double x) const {
    // det(D + y Q~) = det(D) prod_i (1 + y nu_i), nu = eig(A~^T D^{-1} A~).
    Vec dinv(n_);
    double det_scaled = 1.0;  // det(D) / x^{n-k}
    for (int i = 0; i < n_; ++i) {
      const double d = x - lambda_(i);
      dinv(i) = 1.0 / d;
      det_scaled *= d;
      if (i < n_ - k_) det_scaled /= x;
    }
    const Mat inner = at_.transpose() * dinv.asDiagonal() * at_;
    Eigen::SelfAdjointEigenSolver<Mat> ne(0.5 * (inner + inner.transpose()), Eigen::EigenvaluesOnly);
    const std::vector<double> e = elementary_symmetric(ne.eigenvalues(), big_k_);
    double acc = 0.0;
    for (int u = 0; u <= big_k_; ++u) acc += weight_[u] * e[u];
    return det_scaled * acc;
  }

  /// Fit on [0, hi]; hi is nudged up when a node lands on an eigenvalue of B.
  ChebSeries fit(double hi) const {
    for (int attempt = 0; attempt < 12; ++attempt, hi *= 1.0 + 1.0 / 64.0) {
      if (auto h = try_fit(hi)) return *h;
    }
    fail(ErrorCode::RootFindingFailure, "interpolation nodes collide with the spectrum of B");
  }

  /// Fit on [0, upper] shrunk towards the largest root.
  ChebSeries fit_all() const {
    double hi = upper_;
    ChebSeries h = fit(hi);
    for (int attempt = 0; attempt < 12; ++attempt) {
      const double next = 1.1 * std::abs(extreme_root(h, h.upper)) + 1e-12 * upper_;
      if (!(next < 0.8 * h.upper)) break;
      h = fit(next);
    }
    return h;
  }

  /// Smallest root, refitting on [0, hi] with hi about twice the current
  /// estimate until the estimate settles well inside the interval.
  double smallest_root() const {
    ChebSeries h = fit_all();
    double root = extreme_root(h, -0.01 * h.upper);
    for (int attempt = 0; attempt < 30; ++attempt) {
      const double hi = std::min(h.upper, std::max(2.0 * root, 1e-6 * upper_));
      if (hi >= h.upper && attempt > 0) break;
      h = fit(hi);
      const double next = extreme_root(h, -0.01 * h.upper);
      const bool settled = std::abs(next - root) <= 1e-10 * h.upper && next <= 0.75 * h.upper;
      root = next;
      if (settled) break;
    }
    return root;
  }

 private:
  std::optional<ChebSeries> try_fit(double hi) const {
    const int nodes = k_ + 1;
    std::vector<double> vals(nodes);
    for (int j = 0; j < nodes; ++j) {
      const double x = 0.5 * hi * (1.0 + std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * nodes)));
      for (int i = 0; i < n_; ++i) {
        if (std::abs(x - lambda_(i)) <= 1e-9 * hi) return std::nullopt;
      }
      vals[j] = (*this)(x);
      if (!std::isfinite(vals[j])) return std::nullopt;
    }
    std::vector<double> c(nodes, 0.0);
    for (int l = 0; l < nodes; ++l) {
      for (int j = 0; j < nodes; ++j) {
        c[l] += vals[j] * std::cos(l * (2.0 * j + 1.0) * std::numbers::pi / (2.0 * nodes));
      }
      c[l] *= (l == 0 ? 1.0 : 2.0) / nodes;
    }
    return ChebSeries{std::move(c), hi};
  }

  int n_;
  int k_;
  int big_k_ = 0;
  Vec lambda_;
  Mat at_;
  std::vector<double> weight_;
  double upper_ = 1.0;
};

}  // namespace

Polynomial conditional_reduced_poly(const Matrix& a, const std::vector<int>& prefix, int k) {
  const ChebSeries h = ConditionalPoly(a, prefix, k).fit_all();
  return chebyshev_to_monomial(h.c, h.upper);
}

Polynomial conditional_expected_char_poly(const Matrix& a, const std::vector<int>& prefix, int k) {
  return conditional_reduced_poly(a, prefix, k).shifted(a.rows() - k);
}

SubsetSelection interlacing_greedy_select(const Matrix& a, int k) {
  const int m = a.cols();
  const int rank = numerical_rank(a);
  if (k < 1) fail(ErrorCode::BadParams, "k must be >= 1");
  if (k >= rank) fail(ErrorCode::KTooLarge, "interlacing selection needs k < rank(A)");
  std::vector<int> prefix;
  for (int step = 0; step < k; ++step) {
    int best = -1;
    double best_root = -kInf;
    for (int i = 0; i < m; ++i) {
      prefix.push_back(i);
      const double root = ConditionalPoly(a, prefix, k).smallest_root();
      prefix.pop_back();
      if (best < 0 || root > best_root + 1e-10 * std::max(1.0, std::abs(best_root))) {
        best_root = root;
        best = i;
      }
    }
    if (std::find(prefix.begin(), prefix.end(), best) != prefix.end()) {
      fail(ErrorCode::RootFindingFailure, "greedy step chose column " + std::to_string(best) + " twice");
    }
    prefix.push_back(best);
  }
  return restrict_certificate(a, make_index_set(prefix, m), Method::Interlacing);
}

}  // namespace rinv
