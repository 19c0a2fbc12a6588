#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>

#include "rinv/index_set.hpp"

namespace rinv {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Full singular value decomposition A = U diag(s) V^T.
/// U is n x n, V is m x m, s has min(n, m) non-increasing entries.
struct Svd {
  Mat U;
  Vec s;
  Mat V;
};

/// Dense real n x m operator R^m -> R^n. Entries are immutable after
/// construction, so the SVD is computed at most once and shared between
/// copies. Concurrent first access is safe.
class Matrix {
 public:
  /// Throws NonFinite on NaN/Inf entries and BadParams on an empty shape.
  explicit Matrix(Mat entries);

  static Matrix identity(int size) { return Matrix(Mat::Identity(size, size)); }

  int rows() const { return static_cast<int>(a_.rows()); }
  int cols() const { return static_cast<int>(a_.cols()); }
  const Mat& dense() const { return a_; }
  double operator()(int i, int j) const { return a_(i, j); }
  auto col(int j) const { return a_.col(j); }

  /// Column restriction A J_sigma as a dense n x |sigma| matrix.
  Mat columns(const IndexSet& sigma) const;

  const Svd& svd() const;
  const Vec& singular_values() const { return svd().s; }

 private:
  struct SvdSlot {
    std::once_flag once;
    std::unique_ptr<const Svd> value;
  };

  Mat a_;
  std::shared_ptr<SvdSlot> cache_;
};

/// Full SVD of an arbitrary dense matrix, with singular values sorted
/// non-increasingly.
Svd compute_svd(const Mat& a);

/// Singular values only.
Vec singular_values(const Mat& a);

}  // namespace rinv
