#include "rinv/generators.hpp"

#include <cmath>

#include "rinv/error.hpp"
#include "rinv/matrix_io.hpp"
#include "rinv/rng.hpp"

namespace rinv {

namespace {

void require_positive(int v, const char* what) {
  if (v < 1) fail(ErrorCode::BadParams, std::string(what) + " must be >= 1");
}

}  // namespace

const std::vector<std::string>& generator_kinds() {
  static const std::vector<std::string> kinds{"identity", "harmonic", "circulant-sqrt",
                                              "gaussian", "unit-columns", "from-file"};
  return kinds;
}

Matrix harmonic_matrix(int m, int n) {
  require_positive(m, "m");
  if (n == 0) n = m;
  if (n < m) fail(ErrorCode::BadParams, "harmonic generator needs n >= m");
  Mat a = Mat::Zero(n, m);
  for (int j = 0; j < m; ++j) a(j, j) = 1.0 / std::sqrt(static_cast<double>(j + 1));
  return Matrix(std::move(a));
}

Matrix circulant_sqrt(int m) {
  require_positive(m, "m");
  const Mat b = (m + 1.0) * Mat::Identity(m, m) - Mat::Ones(m, m);
  Eigen::SelfAdjointEigenSolver<Mat> eig(b);
  const Vec root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Mat a = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
  return Matrix(0.5 * (a + a.transpose()));
}

Matrix unit_column_matrix(int n, int m, std::uint64_t seed) {
  require_positive(n, "n");
  require_positive(m, "m");
  Rng rng(seed);
  Mat a = rng.gaussian(n, m);
  for (int j = 0; j < m; ++j) a.col(j).normalize();
  return Matrix(std::move(a));
}

Matrix generate(const std::string& kind, const GenParams& p) {
  if (kind == "from-file") {
    if (p.path.empty()) fail(ErrorCode::BadParams, "from-file needs a path");
    return load_matrix(p.path);
  }
  const int n = p.n == 0 ? p.m : p.n;
  if (kind == "identity") {
    require_positive(p.m, "m");
    return Matrix(Mat::Identity(n, p.m));
  }
  if (kind == "harmonic") return harmonic_matrix(p.m, n);
  if (kind == "circulant-sqrt") {
    if (n != p.m) fail(ErrorCode::BadParams, "circulant-sqrt is square");
    return circulant_sqrt(p.m);
  }
  if (kind == "gaussian") {
    require_positive(p.m, "m");
    require_positive(n, "n");
    Rng rng(p.seed);
    return Matrix(rng.gaussian(n, p.m));
  }
  if (kind == "unit-columns") return unit_column_matrix(n, p.m, p.seed);
  fail(ErrorCode::UnknownGenerator, "unknown generator '" + kind + "'");
}

}  // namespace rinv
