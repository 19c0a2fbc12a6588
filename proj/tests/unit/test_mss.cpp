#include <gtest/gtest.h>

#include <cmath>

#include "rinv/bounds.hpp"
#include "rinv/error.hpp"
#include "rinv/generators.hpp"
#include "rinv/mss_select.hpp"
#include "test_support.hpp"

namespace rinv {
namespace {

using testing::gaussian;

Matrix diag_matrix(const std::vector<double>& s, int n) {
  Mat a = Mat::Zero(n, static_cast<int>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) a(static_cast<int>(i), static_cast<int>(i)) = s[i];
  return Matrix(a);
}

TEST(ShiftDerivative, HandExpansions) {
  EXPECT_EQ(apply_shift_derivative(Polynomial::monomial(3), 0.0).coeffs(), Polynomial::monomial(3).coeffs());
  EXPECT_EQ(apply_shift_derivative(Polynomial::monomial(1), 1.0).coeffs(), (std::vector<double>{-1.0, 1.0}));
  const Polynomial twice = apply_shift_derivative(apply_shift_derivative(Polynomial::monomial(1), 1.0), 1.0);
  EXPECT_EQ(twice.coeffs(), (std::vector<double>{-2.0, 1.0}));
}

TEST(GPoly, SmallCases) {
  EXPECT_EQ(g_poly(Vec::Ones(2), 2, 1).coeffs(), (std::vector<double>{-2.0, 1.0}));
  Vec s(1);
  s(0) = std::sqrt(3.0);
  const Polynomial g = g_poly(s, 1, 1);
  EXPECT_NEAR(g[0], -3.0, 1e-14);
}

TEST(GPoly, MatchesSubsetExpansion) {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int rank = rng.uniform_int(1, 6);
    const int k = rng.uniform_int(1, 5);
    Vec s(rank);
    std::vector<double> s2;
    for (int i = 0; i < rank; ++i) {
      s(i) = rng.uniform(0.1, 2.0);
      s2.push_back(s(i) * s(i));
    }
    const Polynomial ref(testing::g_by_subsets(s2, k));
    EXPECT_LE(coefficient_distance(g_poly(s, rank, k), ref), 1e-12);
  }
}

TEST(ExpectedCharPoly, IdentityTwo) {
  const Polynomial q = expected_char_poly(Matrix::identity(2), 1);
  EXPECT_LE(normwise_distance(q, Polynomial({0.0, -2.0, 1.0})), 1e-14);
}

TEST(ExpectedCharPoly, RankOne) {
  const double c = 1.7;
  const Polynomial q = expected_char_poly(diag_matrix({c}, 4), 1);
  EXPECT_LE(normwise_distance(q, Polynomial::linear(c * c).shifted(3)), 1e-14);
}

TEST(ExpectedCharPoly, RootsAreZerosPlusRootsOfG) {
  const Matrix a = diag_matrix({2.0, 1.5, 1.0, 0.5}, 6);
  const int k = 3;
  const auto roots = expected_char_poly(a, k).real_roots();
  const auto groots = g_poly(a.singular_values(), 4, k).real_roots();
  ASSERT_EQ(roots.size(), 6u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(roots[i], 0.0, 1e-9);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(roots[3 + i], groots[i], 1e-9);
}

TEST(ExpectedCharPoly, MatchesLeafAverage) {
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 3;
    const int m = 2 + (trial / 2) % 3;
    const Mat a = gaussian(400 + trial, n, m);
    for (int k = 1; k <= std::min(n, 3); ++k) {
      const Polynomial ref(testing::leaf_average_poly(a, {}, k));
      EXPECT_LE(normwise_distance(expected_char_poly(Matrix(a), k), ref), 1e-10) << n << "x" << m << " k=" << k;
    }
  }
}

TEST(SminPhi, Cases) {
  for (int k = 1; k <= 4; ++k) EXPECT_NEAR(smin_phi(Polynomial::monomial(k), 2.0), -k / 2.0, 1e-9);
  EXPECT_NEAR(smin_phi(Polynomial::linear(3.0), 0.5), 3.0 - 2.0, 1e-12);
  const Polynomial f = Polynomial::linear(1.0) * Polynomial::linear(3.0);
  EXPECT_NEAR(smin_phi(f, 1.0), 1.0 - std::sqrt(2.0), 1e-12);
  EXPECT_THROW(smin_phi(Polynomial({1.0, 0.0, 1.0}), 1.0), Error);
}

TEST(Barrier, IdentityCollapsesToGamma) {
  for (int n = 2; n <= 9; ++n) {
    for (int k = 1; k < n; ++k) {
      const BarrierEval b = barrier_bound(Matrix::identity(n), k);
      const double expect = std::pow(std::sqrt(n) - std::sqrt(k), 2);
      EXPECT_NEAR(b.gamma, expect, 1e-12);
      EXPECT_NEAR(b.refined, expect, 1e-9);
      EXPECT_NEAR(b.relaxed_at_phi_max, expect, 1e-9);
    }
  }
}

TEST(Barrier, HarmonicRefinedExceedsGamma) {
  const Matrix a = harmonic_matrix(32);
  const BarrierEval b = barrier_bound(a, 8);
  EXPECT_GT(b.refined, b.gamma * (1.0 + 1e-6));
  std::vector<double> s2;
  for (int j = 1; j <= 32; ++j) s2.push_back(1.0 / j);
  EXPECT_NEAR(b.refined, testing::max_transform(s2, 8), 1e-9 * b.refined);
  EXPECT_NEAR(transform_objective(a.singular_values(), 32, 8, b.phi), b.refined, 1e-14);
}

TEST(Barrier, RandomSpectraMatchScan) {
  Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const int rank = rng.uniform_int(2, 10);
    const int k = rng.uniform_int(1, rank - 1);
    Vec s(rank);
    std::vector<double> s2;
    for (int i = 0; i < rank; ++i) s(i) = rng.uniform(0.05, 3.0);
    std::sort(s.data(), s.data() + rank, std::greater<>());
    for (int i = 0; i < rank; ++i) s2.push_back(s(i) * s(i));
    const BarrierEval b = barrier_bound(s, rank, k);
    EXPECT_GE(b.refined, testing::max_transform(s2, k) - 1e-10 * std::abs(b.refined));
    EXPECT_GE(b.refined, b.gamma - 1e-12);
    const double root = g_poly(s, rank, k).real_roots().front();
    EXPECT_GE(root, b.refined - 1e-9 * std::max(1.0, root));
  }
}

TEST(Barrier, KTooLarge) {
  try {
    barrier_bound(Matrix::identity(3), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KTooLarge);
  }
}

TEST(ConditionalPoly, HandExpansion) {
  const Polynomial c = conditional_expected_char_poly(Matrix::identity(2), {0}, 2);
  EXPECT_LE(normwise_distance(c, Polynomial({2.0, -4.0, 1.0})), 1e-12);
}

TEST(ConditionalPoly, FullPrefixIsCharPoly) {
  const Mat a = gaussian(61, 3, 4);
  const std::vector<int> prefix{2, 0, 3};
  Mat b = Mat::Zero(3, 3);
  for (int j : prefix) b += 4.0 * a.col(j) * a.col(j).transpose();
  const Polynomial ref(testing::char_poly(b));
  EXPECT_LE(normwise_distance(conditional_expected_char_poly(Matrix(a), prefix, 3), ref), 1e-10);
}

TEST(ConditionalPoly, EmptyPrefixIsExpected) {
  const Matrix a(gaussian(62, 5, 6));
  EXPECT_LE(normwise_distance(conditional_expected_char_poly(a, {}, 3), expected_char_poly(a, 3)), 1e-10);
}

TEST(ConditionalPoly, MatchesLeafAverageAndMartingale) {
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 3 + trial % 2;
    const int m = 3 + trial % 3;
    const Mat a = gaussian(500 + trial, n, m);
    const Matrix am(a);
    const int k = std::min(n, 3);
    for (std::vector<int> prefix : {std::vector<int>{}, std::vector<int>{1}, std::vector<int>{0, m - 1}}) {
      const Polynomial got = conditional_expected_char_poly(am, prefix, k);
      EXPECT_LE(normwise_distance(got, Polynomial(testing::leaf_average_poly(a, prefix, k))), 1e-9);
      if (static_cast<int>(prefix.size()) < k) {
        Polynomial avg;
        for (int j = 0; j < m; ++j) {
          auto next = prefix;
          next.push_back(j);
          avg = avg + (1.0 / m) * conditional_expected_char_poly(am, next, k);
        }
        EXPECT_LE(normwise_distance(avg, got), 1e-7);
      }
    }
  }
}

TEST(ConditionalPoly, LargeDimensionIsAccurate) {
  // At n = 64 the empty-prefix polynomial must still reproduce x^{n-k} g.
  const Matrix a = harmonic_matrix(64);
  const Polynomial h = conditional_reduced_poly(a, {}, 8);
  EXPECT_LE(coefficient_distance(h, g_poly(a.singular_values(), 64, 8)), 1e-8);
}

TEST(ConditionalPoly, TooLarge) {
  try {
    conditional_reduced_poly(Matrix::identity(65), {}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(InterlacingGreedy, Identity) {
  const SubsetSelection s = interlacing_greedy_select(Matrix::identity(6), 3);
  EXPECT_EQ(s.sigma.size(), 3u);
  EXPECT_NEAR(s.smin, 1.0, 1e-12);
  EXPECT_EQ(s.method, Method::Interlacing);
}

TEST(InterlacingGreedy, CirculantCertificate) {
  const int m = 6;
  const int k = 3;
  const Matrix a = circulant_sqrt(m);
  const SubsetSelection s = interlacing_greedy_select(a, k);
  const double gamma = barrier_gamma(a.singular_values(), m, k);
  EXPECT_GE(s.smin * s.smin, gamma / m - 1e-9);
  EXPECT_NEAR(s.smin, std::sqrt(m + 1.0 - k), 1e-9);
}

TEST(InterlacingGreedy, NeverBeatsExhaustive) {
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = rng.uniform_int(3, 8);
    const int n = rng.uniform_int(2, 6);
    const Mat a = rng.gaussian(n, m);
    const int k = rng.uniform_int(1, std::min({3, n - 1, m - 1}));
    const SubsetSelection s = interlacing_greedy_select(Matrix(a), k);
    const double gamma = barrier_gamma(Matrix(a).singular_values(), std::min(n, m), k);
    EXPECT_LE(s.smin, testing::brute_best_smin(a, k) * (1 + 1e-9));
    EXPECT_GE(s.smin * s.smin, gamma / m - 1e-9);
  }
}

TEST(InterlacingGreedy, KTooLarge) {
  try {
    interlacing_greedy_select(Matrix::identity(3), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KTooLarge);
  }
}

TEST(InterlacingGreedy, RepeatedRootsOnIdentity) {
  // Later steps see (x - m)^p factors with p up to k - 1.
  for (int m = 2; m <= 10; ++m) {
    for (int k = 1; k < m; ++k) {
      const SubsetSelection sel = interlacing_greedy_select(Matrix::identity(m), k);
      EXPECT_NEAR(sel.smin, 1.0, 1e-12) << m << " " << k;
    }
  }
}

TEST(InterlacingGreedy, LargeSpectrum) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix a(10.0 * gaussian(seed, 10, 12));
    const SubsetSelection sel = interlacing_greedy_select(a, 8);
    const BarrierEval b = barrier_bound(a, 8);
    EXPECT_GE(sel.smin * sel.smin, b.gamma / 12 - 1e-9);
  }
}

TEST(InterlacingGreedy, HighDegreeKeepsCertificate) {
  // Degree 20 to 24: fitting over the whole root range loses the small roots.
  const Matrix wide = generate("gaussian", {40, 24, 3, ""});
  const Matrix harm = harmonic_matrix(48);
  for (const auto& [a, k] : {std::pair{wide, 20}, std::pair{harm, 24}}) {
    const SubsetSelection sel = interlacing_greedy_select(a, k);
    const BarrierEval b = barrier_bound(a, k);
    EXPECT_GE(sel.smin * sel.smin, b.gamma / a.cols() - 1e-9);
    EXPECT_EQ(static_cast<int>(sel.sigma.size()), k);
  }
}

}  // namespace
}  // namespace rinv
