#include "rinv/matlin.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "rinv/error.hpp"

namespace rinv {

namespace {

int rank_of_values(const Vec& s, double rel_tol) {
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++r;
  }
  return r;
}

void require_nonzero(const Vec& s) {
  if (s.size() == 0 || s(0) <= 0.0) fail(ErrorCode::ZeroMatrix, "operation requires A != 0");
}

}  // namespace

int numerical_rank(const Matrix& a, double rel_tol) {
  return rank_of_values(a.singular_values(), rel_tol);
}

int numerical_rank(const Mat& a, double rel_tol) {
  return rank_of_values(singular_values(a), rel_tol);
}

double schatten_norm(const Matrix& a, double p) {
  if (!(p >= 1.0)) fail(ErrorCode::BadParams, "Schatten exponent must be >= 1");
  const Vec& s = a.singular_values();
  const double s1 = s(0);
  if (s1 == 0.0) return 0.0;
  if (std::isinf(p)) return s1;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / s1, p);
  return s1 * std::pow(acc, 1.0 / p);
}

double stable_rank(const Matrix& a, double p) {
  if (!(p > 2.0)) fail(ErrorCode::BadParams, "stable rank exponent must be > 2");
  const Vec& s = a.singular_values();
  require_nonzero(s);
  const Vec u = s / s(0);
  const double hs2 = u.squaredNorm();
  if (std::isinf(p)) return hs2;
  double accp = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) accp += std::pow(u(i), p);
  // (||u||_2 / ||u||_p)^(2p/(p-2)), in log space so p near 2 stays accurate.
  const double log_ratio = 0.5 * std::log(hs2) - std::log(accp) / p;
  return std::exp(2.0 * p / (p - 2.0) * log_ratio);
}

double entropic_stable_rank(const Matrix& a) {
  const Vec& s = a.singular_values();
  require_nonzero(s);
  double w = 0.0;
  double ent = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) <= kRankTol * s(0)) continue;
    const double u = s(i) / s(0);
    w += u * u;
    ent += u * u * std::log(u);
  }
  return std::exp(std::log(w) - 2.0 * ent / w);
}

Projector proj_complement(const Matrix& a, const IndexSet& tau, double rel_tol) {
  const int n = a.rows();
  Projector out{Mat::Identity(n, n), n};
  if (tau.empty()) return out;
  Eigen::ColPivHouseholderQR<Mat> qr(a.columns(tau));
  qr.setThreshold(rel_tol);
  const int r = static_cast<int>(qr.rank());
  if (r == 0) return out;
  Mat q = qr.householderQ() * Mat::Identity(n, r);
  Mat p = Mat::Identity(n, n) - q * q.transpose();
  out.P = 0.5 * (p + p.transpose());
  out.rank = n - r;
  return out;
}

double DualBasis::max_inverse_distance() const {
  return leverage.size() ? std::sqrt(leverage.maxCoeff()) : 0.0;
}

DualBasis dual_basis(const Matrix& a, const IndexSet& omega) {
  const int w = static_cast<int>(omega.size());
  if (w == 0) return DualBasis{omega, Mat(a.rows(), 0), Vec()};
  const Mat b = a.columns(omega);
  Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  if (w > a.rows() || rank_of_values(s, kRankTol) < w) {
    fail(ErrorCode::RankDeficient, "columns " + to_string(omega) + " are linearly dependent");
  }
  // w_j = B (B^T B)^{-1} e_j = U S^{-1} V^T e_j
  const Vec inv_s = s.cwiseInverse();
  Mat vectors = svd.matrixU() * inv_s.asDiagonal() * svd.matrixV().transpose();
  Vec leverage = svd.matrixV().array().square().matrix() * inv_s.array().square().matrix();
  return DualBasis{omega, std::move(vectors), std::move(leverage)};
}

double norm_inf_to_2(const Mat& t, int exact_cap) {
  const int m = static_cast<int>(t.cols());
  if (m > exact_cap) {
    fail(ErrorCode::TooLarge, "l_inf -> l2 norm enumeration over " + std::to_string(m) +
                                  " columns exceeds cap " + std::to_string(exact_cap));
  }
  if (m == 0) return 0.0;
  // x and -x give the same norm, so fix the last sign to +1 and walk a Gray
  // code over the rest. y is resynchronised periodically to bound drift.
  Eigen::VectorXd x = Eigen::VectorXd::Ones(m);
  Eigen::VectorXd y = t * x;
  double best = y.squaredNorm();
  const std::uint64_t count = std::uint64_t{1} << (m - 1);
  for (std::uint64_t i = 1; i < count; ++i) {
    const int bit = std::countr_zero(i);
    x(bit) = -x(bit);
    if ((i & 0xfffu) == 0) {
      y.noalias() = t * x;
    } else {
      y += (2.0 * x(bit)) * t.col(bit);
    }
    best = std::max(best, y.squaredNorm());
  }
  return std::sqrt(best);
}

double norm_2_to_1(const Mat& t, int exact_cap) {
  return norm_inf_to_2(t.transpose(), exact_cap);
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Volume: return "VOLUME";
    case Method::Giannopoulos: return "GIANNOPOULOS";
    case Method::RankPipeline: return "RANK_PIPELINE";
    case Method::Interlacing: return "INTERLACING";
    case Method::Oracle: return "ORACLE";
  }
  return "UNKNOWN";
}

SubsetSelection restrict_certificate(const Matrix& a, const IndexSet& sigma, Method method) {
  if (sigma.empty()) fail(ErrorCode::BadParams, "certificate requires a nonempty subset");
  SubsetSelection out;
  out.sigma = sigma;
  out.k = static_cast<int>(sigma.size());
  out.method = method;
  if (out.k > a.rows()) return out;
  const Vec s = singular_values(a.columns(sigma));
  const double smin = s(out.k - 1);
  if (s(0) > 0.0 && smin > kRankTol * s(0)) {
    out.smin = smin;
    out.inv_norm = 1.0 / smin;
  }
  return out;
}

bool fan_projection_check(const Matrix& a, const Mat& p) {
  const int n = a.rows();
  if (p.rows() != n || p.cols() != n) fail(ErrorCode::NotAProjector, "projector has wrong shape");
  const double tol = 1e-8 * std::max(1.0, p.cwiseAbs().maxCoeff());
  if ((p - p.transpose()).cwiseAbs().maxCoeff() > tol || (p * p - p).cwiseAbs().maxCoeff() > tol) {
    fail(ErrorCode::NotAProjector, "matrix is not a symmetric idempotent");
  }
  const int r = static_cast<int>(std::lround(p.trace()));
  const double lhs = (p * a.dense()).squaredNorm();
  const Vec& s = a.singular_values();
  double rhs = 0.0;
  for (Eigen::Index i = n - r; i < s.size(); ++i) rhs += s(i) * s(i);
  return lhs >= rhs - 1e-8;
}

}  // namespace rinv
