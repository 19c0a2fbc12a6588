#include "rinv/gia_select.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "rinv/bounds.hpp"
#include "rinv/error.hpp"

namespace rinv {

namespace {

constexpr int kResyncEvery = 4096;
// Relative slack on the Omega threshold; only ever admits more members.
constexpr double kOmegaSlack = 1e-12;

// All eps in {-1,1}^d with eps^T G eps <= bound, as bitmasks (bit = +1).
std::vector<std::uint32_t> enumerate_omega(const Mat& g, double bound) {
  const int d = static_cast<int>(g.rows());
  const std::uint32_t full = d == 32 ? 0xffffffffu : (1u << d) - 1u;
  std::vector<std::uint32_t> members;
  // The last coordinate is fixed to -1; eps and -eps have equal norm.
  Vec eps = Vec::Constant(d, -1.0);
  Vec ge = g * eps;
  double q = eps.dot(ge);
  std::uint32_t mask = 0;
  const std::uint64_t steps = std::uint64_t{1} << (d - 1);
  for (std::uint64_t step = 0; step < steps; ++step) {
    if (step > 0) {
      const int c = std::countr_zero(step);
      const double ec = eps(c);
      q += -4.0 * ec * ge(c) + 4.0 * g(c, c);
      ge -= 2.0 * ec * g.col(c);
      eps(c) = -ec;
      mask ^= 1u << c;
      if (step % kResyncEvery == 0) {
        ge = g * eps;
        q = eps.dot(ge);
      }
    }
    if (q <= bound) {
      members.push_back(mask);
      members.push_back(full & ~mask);
    }
  }
  return members;
}

double smin_of(const Matrix& a, const IndexSet& sigma) {
  const Vec s = singular_values(a.columns(sigma));
  return s(s.size() - 1);
}

IndexSet trim_to(const Matrix& a, IndexSet sigma, int k) {
  while (static_cast<int>(sigma.size()) > k) {
    std::size_t best = 0;
    double best_smin = -1.0;
    for (std::size_t pos = 0; pos < sigma.size(); ++pos) {
      IndexSet cand = sigma;
      cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(pos));
      const double v = smin_of(a, cand);
      if (v > best_smin) {
        best_smin = v;
        best = pos;
      }
    }
    sigma.erase(sigma.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return sigma;
}

IndexSet lift(const IndexSet& local, const IndexSet& parent) {
  IndexSet out;
  out.reserve(local.size());
  for (int i : local) out.push_back(parent[i]);
  return out;
}

}  // namespace

double alpha(int k) {
  double s = 0.0;
  for (int r = 1; r <= k; ++r) s += std::exp2(0.5 * r);
  return s;
}

double gia_constant() {
  return 8.0 * std::sqrt(2.0 * std::numbers::pi) / (std::numbers::sqrt2 - 1.0);
}

int gia_levels(int m, int k) {
  if (!(k >= 0 && k < m)) fail(ErrorCode::BadParams, "need 0 <= k < m");
  int r = 0;
  while (static_cast<std::int64_t>(m - k) * (std::int64_t{1} << (2 * r + 1)) < m) ++r;
  return r;
}

InductionResult induction_subset(const Matrix& a, const IndexSet& s, int k_levels, const DualBasis& basis,
                                 int sauer_cap) {
  if (k_levels < 0) fail(ErrorCode::BadParams, "k_levels must be >= 0");
  if (static_cast<int>(basis.omega.size()) != a.cols()) {
    fail(ErrorCode::BadParams, "induction needs the dual basis over all columns");
  }
  InductionResult out;
  out.M = basis.max_inverse_distance();
  for (int level = 0; level < k_levels; ++level) {
    const IndexSet free_coords = set_difference(s, out.tau);
    if (free_coords.empty()) break;
    const int d = static_cast<int>(free_coords.size());
    if (d > sauer_cap) {
      fail(ErrorCode::DimTooLarge, "induction level has " + std::to_string(d) + " free coordinates, cap " +
                                       std::to_string(sauer_cap));
    }
    Mat vd(basis.vectors.rows(), d);
    for (int c = 0; c < d; ++c) vd.col(c) = basis.vectors.col(free_coords[c]);
    const Mat g = vd.transpose() * vd;
    const double bound = 2.0 * d * out.M * out.M * (1.0 + kOmegaSlack);
    SignSet omega(d, enumerate_omega(g, bound));
    const std::uint64_t half = std::uint64_t{1} << (d - 1);
    if (omega.size() <= half) {
      fail(ErrorCode::NotEnoughVectors, "Omega has only " + std::to_string(omega.size()) + " members");
    }
    const IndexSet beta_local = sauer_shelah_extract(omega, (d + 1) / 2, sauer_cap);
    InductionLevel rec{free_coords, omega.size(), lift(beta_local, free_coords)};
    out.tau = set_union(out.tau, rec.beta);
    out.levels.push_back(std::move(rec));
  }
  return out;
}

Mat restricted_inverse_rows(const Matrix& a, const IndexSet& theta, const IndexSet& rows) {
  const Mat b = a.columns(theta);
  Eigen::HouseholderQR<Mat> qr(b);
  const int w = static_cast<int>(theta.size());
  const Mat r = qr.matrixQR().topLeftCorner(w, w).triangularView<Eigen::Upper>();
  const Mat rinv = r.triangularView<Eigen::Upper>().solve(Mat::Identity(w, w));
  Mat out(rows.size(), w);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto it = std::lower_bound(theta.begin(), theta.end(), rows[i]);
    if (it == theta.end() || *it != rows[i]) fail(ErrorCode::BadParams, "rows must lie inside theta");
    out.row(static_cast<Eigen::Index>(i)) = rinv.row(it - theta.begin());
  }
  return out;
}

CombineResult combine_subset(const Matrix& a, const IndexSet& beta, int t, const DualBasis& basis,
                             const GiaOptions& opts) {
  if (t < 1) fail(ErrorCode::BadParams, "t must be >= 1");
  CombineResult out;
  out.t = t;
  out.induction = induction_subset(a, beta, t, basis, opts.sauer_cap);
  out.tau = out.induction.tau;
  out.theta = set_union(out.tau, complement(beta, a.cols()));
  out.level_bound = std::sqrt(2.0 * std::numbers::pi) * alpha(t) * out.induction.M;
  if (out.tau.empty()) return out;

  const Mat tmat = restricted_inverse_rows(a, out.theta, out.tau);
  const PietschMeasure pm = pietsch_measure(tmat, opts.pietsch);
  const int tau_size = static_cast<int>(out.tau.size());
  out.eps = static_cast<double>(beta.size()) / (4.0 * tau_size);
  out.pietsch_M = pm.achieved_M;
  out.certified_norm = pm.achieved_M / std::sqrt(out.eps * tau_size);
  out.sigma = lift(grothendieck_pietsch_subset(pm, out.eps), out.tau);
  return out;
}

GiaResult giannopoulos_select(const Matrix& a, int k, const GiaOptions& opts) {
  const int m = a.cols();
  if (numerical_rank(a) != m) fail(ErrorCode::NotFullColumnRank, "columns are not linearly independent");
  if (!(k >= 1 && k < m)) fail(ErrorCode::BadParams, "need 1 <= k < m");
  const DualBasis basis = dual_basis(a, iota_set(m));

  GiaResult res;
  GiaTrace& tr = res.trace;
  tr.r = gia_levels(m, k);
  tr.M = basis.max_inverse_distance();
  IndexSet beta_prev = iota_set(m);
  IndexSet sigma;
  double alpha_sq = 0.0;
  double cert_sq = 0.0;
  for (int u = 1; u <= tr.r + 1; ++u) {
    GiaLevel lvl;
    lvl.u = u;
    lvl.t = 2 * tr.r - u + 4;
    lvl.beta_prev = beta_prev;
    if (!beta_prev.empty()) {
      const CombineResult c = combine_subset(a, beta_prev, lvl.t, basis, opts);
      lvl.sigma = c.sigma;
      lvl.tau = c.tau;
      lvl.theta = c.theta;
      lvl.certified_norm = c.certified_norm;
      lvl.level_bound = c.level_bound;
      alpha_sq += alpha(lvl.t) * alpha(lvl.t);
      cert_sq += c.certified_norm * c.certified_norm;
    } else {
      lvl.theta = iota_set(m);
    }
    lvl.beta = set_difference(lvl.tau, lvl.sigma);
    sigma = set_union(sigma, lvl.sigma);
    beta_prev = lvl.beta;
    tr.levels.push_back(std::move(lvl));
  }
  tr.sigma_untrimmed = sigma;
  tr.C_impl = gia_constant();
  tr.C_instance = std::sqrt(2.0 * std::numbers::pi * alpha_sq * (m - k) / m);
  tr.certified_bound = std::sqrt(cert_sq);
  if (static_cast<int>(sigma.size()) < k) {
    fail(ErrorCode::NotEnoughVectors, "level sets glued to " + std::to_string(sigma.size()) + " < k columns");
  }
  res.selection = restrict_certificate(a, trim_to(a, sigma, k), Method::Giannopoulos);
  return res;
}

MainTheoremResult main_theorem_select(const Matrix& a, int k, const std::optional<Weights>& d,
                                      const MainTheoremOptions& opts) {
  const int m = a.cols();
  const int rank = numerical_rank(a);
  if (k < 1) fail(ErrorCode::BadParams, "k must be >= 1");
  if (rank <= k) fail(ErrorCode::RankTooSmall, "rank(A) must exceed k");
  if (d && d->size() != m) fail(ErrorCode::BadParams, "weights length must equal column count");
  const int hi = std::min(rank, opts.max_r);
  if (hi <= k) fail(ErrorCode::DimTooLarge, "k leaves no admissible r below the enumeration cap");
  const Vec& s = a.singular_values();
  const Weights weights = d ? *d : Weights::uniform(m);
  const double c_impl = gia_constant() * (1.0 + opts.volume.delta);

  MainTheoremResult best;
  best.r_star = rank_bound(s, m, rank, k, hi).r;
  best.selection.smin = -1.0;
  int lo_r = best.r_star - 1;
  int hi_r = best.r_star + 1;
  if (opts.r) {
    if (*opts.r <= k || *opts.r > hi) fail(ErrorCode::BadParams, "r must satisfy k < r <= min(rank, max_r)");
    lo_r = hi_r = *opts.r;
  }
  for (int r = lo_r; r <= hi_r; ++r) {
    if (r <= k || r > hi) continue;
    const ExchangeState vol = volume_exchange_select(a, r, weights, opts.volume);
    const Matrix sub(a.columns(vol.tau));
    GiaResult gia = giannopoulos_select(sub, k, opts.gia);
    const SubsetSelection sel = restrict_certificate(a, lift(gia.selection.sigma, vol.tau), Method::RankPipeline);
    if (sel.smin <= best.selection.smin) continue;

    double tail = 0.0;
    for (Eigen::Index i = r - 1; i < s.size(); ++i) tail += s(i) * s(i);
    double scale = std::sqrt(static_cast<double>(m) / tail);
    if (d) {
      double dmin = kInf;
      for (int j : vol.tau) dmin = std::min(dmin, weights[j]);
      scale = weights.values().norm() / (dmin * std::sqrt(tail));
    }
    best.selection = sel;
    best.r = r;
    best.tau = vol.tau;
    best.bound = c_impl * std::sqrt(static_cast<double>(r) / (r - k)) * scale;
    best.trace = std::move(gia.trace);
  }
  return best;
}

double ellipsoid_projection_inradius(const Matrix& y, const IndexSet& sigma, bool lift_columns) {
  const int m = y.cols();
  if (sigma.empty()) fail(ErrorCode::BadParams, "sigma must be nonempty");
  const IndexSet sig = make_index_set(sigma, m);
  if (!lift_columns && numerical_rank(y) != m) {
    fail(ErrorCode::RankDeficient, "columns of Y are dependent; enable lifting");
  }
  Mat g = y.dense().transpose() * y.dense();
  if (lift_columns) g += Mat::Identity(m, m);
  const IndexSet rest = complement(sig, m);
  const int s = static_cast<int>(sig.size());
  const int q = static_cast<int>(rest.size());
  Mat gss(s, s), gsr(s, q), grr(q, q);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) gss(i, j) = g(sig[i], sig[j]);
    for (int j = 0; j < q; ++j) gsr(i, j) = g(sig[i], rest[j]);
  }
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) grr(i, j) = g(rest[i], rest[j]);
  }
  Mat schur = gss;
  if (q > 0) schur -= gsr * grr.llt().solve(gsr.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (schur + schur.transpose()), Eigen::EigenvaluesOnly);
  return 1.0 / std::sqrt(eig.eigenvalues().maxCoeff());
}

}  // namespace rinv
