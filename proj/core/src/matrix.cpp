#include "rinv/matrix.hpp"

#include "rinv/error.hpp"

namespace rinv {

Matrix::Matrix(Mat entries) : a_(std::move(entries)), cache_(std::make_shared<SvdSlot>()) {
  if (a_.rows() < 1 || a_.cols() < 1) {
    fail(ErrorCode::BadParams, "matrix must have at least one row and one column");
  }
  if (!a_.allFinite()) fail(ErrorCode::NonFinite, "matrix contains NaN or Inf");
}

Mat Matrix::columns(const IndexSet& sigma) const {
  Mat out(a_.rows(), static_cast<Eigen::Index>(sigma.size()));
  for (std::size_t c = 0; c < sigma.size(); ++c) out.col(c) = a_.col(sigma[c]);
  return out;
}

const Svd& Matrix::svd() const {
  std::call_once(cache_->once, [this] {
    cache_->value = std::make_unique<const Svd>(compute_svd(a_));
  });
  return *cache_->value;
}

Svd compute_svd(const Mat& a) {
  // JacobiSVD already returns singular values in decreasing order.
  Eigen::JacobiSVD<Mat> jsvd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return Svd{jsvd.matrixU(), jsvd.singularValues(), jsvd.matrixV()};
}

Vec singular_values(const Mat& a) {
  if (a.size() == 0) return Vec();
  return Eigen::JacobiSVD<Mat>(a).singularValues();
}

}  // namespace rinv
