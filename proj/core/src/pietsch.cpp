#include "rinv/pietsch.hpp"

#include <cmath>

#include "rinv/error.hpp"
#include "rinv/matlin.hpp"
#include "rinv/rng.hpp"

namespace rinv {

namespace {

constexpr int kCheckEvery = 8;

}  // namespace

double domination_constant_sq(const Mat& t, const Vec& mu) {
  const Mat g = t * t.transpose();
  const int m = static_cast<int>(g.rows());
  std::vector<int> support;
  for (int i = 0; i < m; ++i) {
    if (mu(i) > 0.0) {
      support.push_back(i);
    } else if (g(i, i) > 0.0) {
      return kInf;
    }
  }
  if (support.empty()) return 0.0;
  const int s = static_cast<int>(support.size());
  Mat h(s, s);
  for (int a = 0; a < s; ++a) {
    for (int b = 0; b < s; ++b) {
      h(a, b) = g(support[a], support[b]) / std::sqrt(mu(support[a]) * mu(support[b]));
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(h, Eigen::EigenvaluesOnly);
  return std::max(0.0, eig.eigenvalues().maxCoeff());
}

PietschMeasure pietsch_measure(const Mat& t, const PietschOptions& opts) {
  if (t.size() == 0) fail(ErrorCode::BadParams, "empty operator");
  if (!t.allFinite()) fail(ErrorCode::NonFinite, "operator has non-finite entries");
  const int m = static_cast<int>(t.rows());
  const Mat g = t * t.transpose();
  if (g.diagonal().maxCoeff() <= 0.0) fail(ErrorCode::ZeroMatrix, "Pietsch measure of the zero operator");

  // Unit columns v_i of V (p x m); X = V^T V is feasible for the dual.
  const int p = m;
  Rng rng(opts.seed);
  Mat v = rng.gaussian(p, m);
  for (int i = 0; i < m; ++i) v.col(i).normalize();
  Mat gv = v * g;  // column i is sum_j G_ij v_j

  PietschMeasure out;
  Vec nu(m);
  for (int sweep = 1; sweep <= opts.max_iters; ++sweep) {
    for (int i = 0; i < m; ++i) {
      const Vec grad = gv.col(i) - g(i, i) * v.col(i);
      const double len = grad.norm();
      if (len == 0.0) continue;
      const Vec fresh = grad / len;
      const Vec delta = fresh - v.col(i);
      v.col(i) = fresh;
      gv.noalias() += delta * g.row(i);
    }
    if (sweep % kCheckEvery != 0 && sweep != opts.max_iters) continue;

    // Stationarity gives (diag(nu) - G) V^T = 0 with nu_i = ||(GV)_i||.
    const double dual = (v.cwiseProduct(gv)).sum();
    for (int i = 0; i < m; ++i) nu(i) = g(i, i) == 0.0 ? 0.0 : std::max(gv.col(i).norm(), g(i, i));
    const Vec mu = nu / nu.sum();
    const double primal = domination_constant_sq(t, mu);
    out.mu = mu;
    out.achieved_M = std::sqrt(primal);
    out.lower_bound = std::sqrt(std::max(dual, 0.0));
    out.iterations = sweep;
    if (primal - dual <= opts.tol * primal) return out;
  }
  fail(ErrorCode::NoConvergence, "Pietsch iteration did not close the duality gap in " +
                                     std::to_string(opts.max_iters) + " sweeps");
}

IndexSet grothendieck_pietsch_subset(const PietschMeasure& measure, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorCode::BadParams, "eps must lie in (0,1)");
  const int m = static_cast<int>(measure.mu.size());
  const double cut = 1.0 / (m * eps);
  IndexSet sigma;
  for (int i = 0; i < m; ++i) {
    if (measure.mu(i) <= cut) sigma.push_back(i);
  }
  return sigma;
}

IndexSet grothendieck_pietsch_subset(const Mat& t, double eps, const PietschOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorCode::BadParams, "eps must lie in (0,1)");
  return grothendieck_pietsch_subset(pietsch_measure(t, opts), eps);
}

}  // namespace rinv
