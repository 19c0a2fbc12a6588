#include <gtest/gtest.h>

#include <cmath>

#include "rinv/error.hpp"
#include "rinv/generators.hpp"
#include "rinv/matlin.hpp"
#include "test_support.hpp"

namespace rinv {
namespace {

using testing::gaussian;

TEST(Svd, IdentityIsTrivial) {
  const Matrix a = Matrix::identity(3);
  const Svd& d = a.svd();
  EXPECT_TRUE(d.s.isApprox(Vec::Ones(3)));
  EXPECT_LE((d.U * d.U.transpose() - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Svd, DiagonalWithZero) {
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 3.0;
  const Vec s = Matrix(a).singular_values();
  EXPECT_DOUBLE_EQ(s(0), 3.0);
  EXPECT_DOUBLE_EQ(s(1), 0.0);
}

TEST(Svd, MatchesGramEigenvaluesAndReconstructs) {
  for (int shape = 0; shape < 3; ++shape) {
    const int n = 4 + shape;
    const int m = 6 - shape;
    const Matrix a(gaussian(11, n, m, shape));
    const Svd& d = a.svd();
    const Vec ref = testing::sv_via_gram(a.dense());
    ASSERT_EQ(d.s.size(), ref.size());
    for (Eigen::Index i = 0; i < ref.size(); ++i) EXPECT_NEAR(d.s(i), ref(i), 1e-9);
    for (Eigen::Index i = 1; i < d.s.size(); ++i) EXPECT_GE(d.s(i - 1), d.s(i));
    EXPECT_LE((d.U.transpose() * d.U - Mat::Identity(d.U.cols(), d.U.cols())).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((d.V.transpose() * d.V - Mat::Identity(d.V.cols(), d.V.cols())).cwiseAbs().maxCoeff(), 1e-10);
    Mat sig = Mat::Zero(n, m);
    for (Eigen::Index i = 0; i < d.s.size(); ++i) sig(i, i) = d.s(i);
    EXPECT_LE((a.dense() - d.U * sig * d.V.transpose()).cwiseAbs().maxCoeff(), 1e-9 * (1.0 + d.s(0)));
  }
}

TEST(Matrix, RejectsNonFinite) {
  Mat a = Mat::Ones(2, 2);
  a(1, 0) = std::nan("");
  try {
    Matrix bad(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
}

TEST(NumericalRank, Cases) {
  EXPECT_EQ(numerical_rank(Matrix::identity(5)), 5);
  const Vec u = Vec::LinSpaced(4, 1.0, 4.0);
  EXPECT_EQ(numerical_rank(Matrix(u * u.transpose())), 1);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-14;
  EXPECT_EQ(numerical_rank(Matrix(d), 1e-10), 1);
  EXPECT_EQ(numerical_rank(Matrix(Mat::Zero(3, 2))), 0);
}

TEST(Schatten, Cases) {
  EXPECT_NEAR(schatten_norm(Matrix::identity(4), 2.0), 2.0, 1e-14);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 4.0;
  EXPECT_NEAR(schatten_norm(Matrix(d), kInf), 4.0, 1e-14);
  const int m = 20;
  double h = 0.0;
  for (int j = 1; j <= m; ++j) h += 1.0 / j;
  EXPECT_NEAR(schatten_norm(harmonic_matrix(m), 2.0), std::sqrt(h), 1e-12);
}

TEST(StableRank, IdentityAndHarmonic) {
  for (double p : {3.0, 4.0, 10.0, kInf}) EXPECT_NEAR(stable_rank(Matrix::identity(6), p), 6.0, 1e-10);
  const int m = 30;
  double h = 0.0;
  double h2 = 0.0;
  for (int j = 1; j <= m; ++j) {
    h += 1.0 / j;
    h2 += 1.0 / (static_cast<double>(j) * j);
  }
  const Matrix a = harmonic_matrix(m);
  EXPECT_NEAR(stable_rank(a, kInf), h, 1e-10 * h);
  EXPECT_NEAR(stable_rank(a, 4.0), h * h / h2, 1e-10 * h * h / h2);
}

TEST(StableRank, MonotoneInP) {
  const Matrix a(gaussian(3, 5, 7));
  const double ps[] = {2.1, 2.5, 3.0, 4.0, 8.0, 50.0, kInf};
  for (std::size_t i = 1; i < std::size(ps); ++i) EXPECT_LE(stable_rank(a, ps[i]), stable_rank(a, ps[i - 1]) * (1 + 1e-12));
}

TEST(EntropicStableRank, Cases) {
  EXPECT_NEAR(entropic_stable_rank(Matrix::identity(7)), 7.0, 1e-12);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = std::sqrt(2.0);
  EXPECT_NEAR(entropic_stable_rank(Matrix(d)), 1.0, 1e-12);
  const Matrix a(gaussian(5, 6, 4));
  EXPECT_NEAR(entropic_stable_rank(a), stable_rank(a, 2.0 + 1e-4), 1e-2 * entropic_stable_rank(a));
  EXPECT_NEAR(entropic_stable_rank(a), testing::srank_near_two(testing::sv_via_gram(a.dense()), 1e-11),
              1e-8 * entropic_stable_rank(a));
}

TEST(ProjComplement, Cases) {
  const Projector p = proj_complement(Matrix::identity(3), {0});
  Mat expect = Mat::Identity(3, 3);
  expect(0, 0) = 0.0;
  EXPECT_LE((p.P - expect).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(p.rank, 2);
  EXPECT_TRUE(proj_complement(Matrix::identity(3), {}).P.isApprox(Mat::Identity(3, 3)));

  const Matrix a(gaussian(7, 5, 4));
  const Projector q = proj_complement(a, {0, 1});
  EXPECT_LE((q.P * a.dense().col(0)).norm(), 1e-10);
  EXPECT_LE((q.P * a.dense().col(1)).norm(), 1e-10);
  EXPECT_LE((q.P * q.P - q.P).cwiseAbs().maxCoeff(), 1e-10);
  const Mat ref = Mat::Identity(5, 5) - testing::span_projector(testing::take_columns(a.dense(), {0, 1}));
  EXPECT_LE((q.P - ref).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(DualBasis, Identity) {
  const DualBasis b = dual_basis(Matrix::identity(4), iota_set(4));
  EXPECT_LE((b.vectors - Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((b.leverage - Vec::Ones(4)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(DualBasis, CirculantLeverage) {
  const int m = 5;
  const DualBasis b = dual_basis(circulant_sqrt(m), iota_set(m));
  for (int j = 0; j < m; ++j) EXPECT_NEAR(b.leverage(j), 2.0 / (m + 1), 1e-12);
}

TEST(DualBasis, TraceDiagonalAndBiorthogonality) {
  const Matrix a(gaussian(9, 6, 4));
  const DualBasis b = dual_basis(a, iota_set(4));
  const Vec s = testing::sv_via_gram(a.dense());
  EXPECT_NEAR(b.leverage.sum(), (1.0 / s.array().square()).sum(), 1e-8);
  const Mat ginv = (a.dense().transpose() * a.dense()).inverse();
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(b.leverage(j), ginv(j, j), 1e-8);
    EXPECT_NEAR(b.leverage(j), b.vectors.col(j).squaredNorm(), 1e-8);
    // leverage_j = 1 / dist(A e_j, span of the others)^2
    std::vector<int> others;
    for (int i = 0; i < 4; ++i) {
      if (i != j) others.push_back(i);
    }
    const Mat p = testing::span_projector(testing::take_columns(a.dense(), others));
    const double dist = (a.dense().col(j) - p * a.dense().col(j)).norm();
    EXPECT_NEAR(b.leverage(j), 1.0 / (dist * dist), 1e-8);
  }
  EXPECT_LE((b.vectors.transpose() * a.dense() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(b.max_inverse_distance(), std::sqrt(b.leverage.maxCoeff()), 1e-12);
}

TEST(DualBasis, SubsetOmega) {
  const Matrix a(gaussian(13, 5, 7));
  const IndexSet omega{1, 3, 6};
  const DualBasis b = dual_basis(a, omega);
  EXPECT_LE((b.vectors.transpose() * a.columns(omega) - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(DualBasis, DependentColumnsThrow) {
  Mat a = gaussian(2, 4, 3);
  a.col(2) = a.col(0) + a.col(1);
  try {
    dual_basis(Matrix(a), iota_set(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
}

TEST(Norms, SmallCases) {
  EXPECT_NEAR(norm_inf_to_2(Mat::Identity(2, 2)), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(norm_inf_to_2(Mat::Ones(1, 6)), 6.0, 1e-14);
  EXPECT_NEAR(norm_2_to_1(Mat::Identity(2, 2)), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(norm_2_to_1(Mat::Ones(6, 1)), 6.0, 1e-14);
}

TEST(Norms, MatchBruteForce) {
  const Mat t = gaussian(21, 3, 8);
  EXPECT_NEAR(norm_inf_to_2(t), testing::brute_inf_to_2(t), 1e-12);
  const Mat u = gaussian(22, 8, 3);
  EXPECT_NEAR(norm_2_to_1(u), norm_inf_to_2(u.transpose()), 1e-12);
}

TEST(Norms, CapThrows) {
  try {
    norm_inf_to_2(Mat::Ones(1, 30), 22);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(RestrictCertificate, Cases) {
  const SubsetSelection id = restrict_certificate(Matrix::identity(5), {1, 3});
  EXPECT_NEAR(id.smin, 1.0, 1e-14);
  EXPECT_NEAR(id.inv_norm, 1.0, 1e-14);
  EXPECT_EQ(id.k, 2);

  const int m = 5;
  const Matrix c = circulant_sqrt(m);
  const SubsetSelection s = restrict_certificate(c, {0, 2, 4});
  EXPECT_NEAR(s.smin, std::sqrt(3.0), 1e-12);
  const Vec sv = testing::sv_via_gram(c.columns({0, 2, 4}));
  EXPECT_NEAR(sv(0), std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(sv(1), std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(s.inv_norm * s.smin, 1.0, 1e-12);

  Mat d = gaussian(4, 4, 3);
  d.col(2) = d.col(0);
  const SubsetSelection dep = restrict_certificate(Matrix(d), {0, 2});
  EXPECT_EQ(dep.inv_norm, kInf);
  EXPECT_EQ(dep.smin, 0.0);
}

TEST(FanLemma, Cases) {
  const Matrix a(gaussian(31, 5, 6));
  EXPECT_TRUE(fan_projection_check(a, Mat::Identity(5, 5)));
  EXPECT_TRUE(fan_projection_check(a, Mat::Zero(5, 5)));
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 8);
    const int m = rng.uniform_int(1, 8);
    const int r = rng.uniform_int(0, n);
    const Mat b = rng.gaussian(n, m);
    const Mat p = testing::span_projector(rng.gaussian(n, r));
    EXPECT_TRUE(fan_projection_check(Matrix(b), p));
    // Independent restatement: ||P B||_S2^2 >= sum of the r smallest of the
    // n (zero-padded) squared singular values.
    Vec s2 = Vec::Zero(std::max(n, m));
    const Vec s = testing::sv_via_gram(b);
    s2.head(s.size()) = s.array().square().matrix();
    double rhs = 0.0;
    for (int i = n - r; i < n; ++i) rhs += i < s2.size() ? s2(i) : 0.0;
    EXPECT_GE((p * b).squaredNorm(), rhs - 1e-8);
  }
}

TEST(FanLemma, RejectsNonProjector) {
  try {
    fan_projection_check(Matrix::identity(2), 2.0 * Mat::Identity(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAProjector);
  }
}

}  // namespace
}  // namespace rinv
