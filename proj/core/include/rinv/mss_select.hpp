#pragma once

#include <vector>

#include "rinv/matlin.hpp"
#include "rinv/polynomial.hpp"

namespace rinv {

inline constexpr int kMaxCharPolyDim = 64;

/// f - s2 f'
Polynomial apply_shift_derivative(const Polynomial& f, double s2);

/// prod_{i<rank} (I - s_i^2 D) x^k, of degree exactly k.
Polynomial g_poly(const Vec& s, int rank, int k);

/// q(x) = (I - d/dy)^k det(x I_n + y A A^T) at y = 0. Computed as
/// x^{n-k} g and, independently, from the elementary symmetric functions of
/// s_i^2 via the expansion of det(x I + y Q); throws IdentityMismatch when
/// the two disagree beyond a relative 1e-8 in any coefficient.
Polynomial expected_char_poly(const Matrix& a, int k);

/// The expansion route alone.
Polynomial expected_char_poly_expansion(const Vec& s, int n, int rank, int k);

/// Smallest real b with f'(b) + phi f(b) = 0. Throws NotRealRooted if f
/// is not real-rooted.
double smin_phi(const Polynomial& f, double phi);

struct BarrierEval {
  double phi = 0.0;       // maximiser of the transform objective
  double value = 0.0;     // objective at phi
  double refined = 0.0;   // same as value: sup_phi -k/phi + sum s_i^2/(1 + phi s_i^2)
  double phi_max = 0.0;   // closed-form maximiser of the relaxed bound
  double relaxed_at_phi_max = 0.0;
  double gamma = 0.0;
};

/// -k/phi + sum_{i<rank} s_i^2 / (1 + phi s_i^2)
double transform_objective(const Vec& s, int rank, int k, double phi);

/// -k/phi + rank / (phi + mean 1/s_i^2), maximised at phi_max with value gamma.
double relaxed_objective(const Vec& s, int rank, int k, double phi);

/// Throws KTooLarge unless k < rank(A).
BarrierEval barrier_bound(const Matrix& a, int k);
BarrierEval barrier_bound(const Vec& s, int rank, int k);

/// (I - d/dy)^{k-t} det(x I - B + y Q) at y = 0 with B = m sum_{s<t}
/// (A e_{j_s})(A e_{j_s})^T and Q = A A^T; t = |prefix| <= k. The result is
/// x^{n-k} h(x) with h monic of degree k; h is recovered by Chebyshev
/// interpolation, evaluating the y-expansion exactly at each node.
Polynomial conditional_expected_char_poly(const Matrix& a, const std::vector<int>& prefix, int k);

/// The degree-k factor h of conditional_expected_char_poly.
Polynomial conditional_reduced_poly(const Matrix& a, const std::vector<int>& prefix, int k);

/// Greedy derandomisation: at each step append the column whose
/// conditional polynomial has the largest k-th largest root (the smallest
/// root of h). Ties go to the lowest index. Certifies smin^2 >= gamma/m.
/// Throws KTooLarge unless k < rank(A), RootFindingFailure on a repeat.
SubsetSelection interlacing_greedy_select(const Matrix& a, int k);

}  // namespace rinv
