// Acceptance driver. `acceptance N` runs criterion N; no argument runs all.
// One line per criterion (or sub-criterion): PASS/FAIL, name, and details.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "commands.hpp"
#include "rinv/bounds.hpp"
#include "rinv/error.hpp"
#include "rinv/generators.hpp"
#include "rinv/gia_select.hpp"
#include "rinv/matlin.hpp"
#include "rinv/mss_select.hpp"
#include "rinv/oracle.hpp"
#include "rinv/pietsch.hpp"
#include "rinv/shattering.hpp"
#include "test_support.hpp"

namespace rinv::acceptance {
namespace {

namespace ts = rinv::testing;

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

/// Random n x m matrix with prescribed rank (singular values in [0.2, 3]).
Mat random_spectrum_matrix(Rng& rng, int n, int m, int rank) {
  const Mat u = Eigen::HouseholderQR<Mat>(rng.gaussian(n, n)).householderQ();
  const Mat v = Eigen::HouseholderQR<Mat>(rng.gaussian(m, m)).householderQ();
  Mat d = Mat::Zero(n, m);
  for (int i = 0; i < rank; ++i) d(i, i) = rng.uniform(0.2, 3.0);
  return u * d * v.transpose();
}

double gamma_of(const Vec& s, int rank, int k) {
  double inv = 0.0;
  for (int i = 0; i < rank; ++i) inv += 1.0 / (s(i) * s(i));
  const double gap = std::sqrt(static_cast<double>(rank)) - std::sqrt(static_cast<double>(k));
  return rank * gap * gap / inv;
}

/// Smallest real root via the companion matrix (ascending coefficients).
double min_real_root(const std::vector<double>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  Mat comp = Mat::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  const Eigen::VectorXcd ev = comp.eigenvalues();
  double best = kInf;
  for (int i = 0; i < d; ++i) best = std::min(best, ev(i).real());
  return best;
}

// ---------------------------------------------------------------------------

void criterion1() {
  double worst_smin = 0.0;
  double worst_lev = 0.0;
  long subsets = 0;
  for (int m : {5, 8, 12}) {
    const Matrix a = circulant_sqrt(m);
    for (int k = 1; k <= m; ++k) {
      ts::for_each_subset(m, k, [&](const std::vector<int>& s) {
        const double expect = std::sqrt(m + 1.0 - k);
        worst_smin = std::max(worst_smin, std::abs(restrict_certificate(a, s).smin - expect));
        worst_smin = std::max(worst_smin, std::abs(ts::smin_via_gram(a.columns(s)) - expect));
        ++subsets;
      });
    }
    const DualBasis b = dual_basis(a, iota_set(m));
    const Mat ginv = (a.dense().transpose() * a.dense()).inverse();
    for (int j = 0; j < m; ++j) {
      worst_lev = std::max(worst_lev, std::abs(b.leverage(j) - 2.0 / (m + 1)));
      worst_lev = std::max(worst_lev, std::abs(ginv(j, j) - 2.0 / (m + 1)));
    }
  }
  report("c1.circulant_sharpness", worst_smin <= 1e-9 && worst_lev <= 1e-9,
         fmt("%.0f subsets, max |smin - sqrt(m+1-k)| = %.3g, max |leverage - 2/(m+1)| = %.3g", subsets, worst_smin,
             worst_lev));
}

void criterion2() {
  Rng rng(2002);
  int done = 0;
  double worst = kInf;
  std::string first_bad;
  while (done < 50) {
    const int n = rng.uniform_int(2, 10);
    const int m = rng.uniform_int(2, 10);
    const int rank = rng.uniform_int(2, std::min(n, m));
    const int k = rng.uniform_int(1, rank - 1);
    const Mat a = random_spectrum_matrix(rng, n, m, rank);
    const Vec s = ts::sv_via_gram(a);
    const SubsetSelection sel = interlacing_greedy_select(Matrix(a), k);
    const double smin = ts::smin_via_gram(ts::take_columns(a, sel.sigma));
    const double target = gamma_of(s, rank, k) / m;
    const double slack = smin * smin - target;
    if (slack < worst) worst = slack;
    if (slack < -1e-9 && first_bad.empty()) first_bad = fmt(" first failure n=%.0f m=%.0f k=%.0f", n, m, k);
    ++done;
  }
  report("c2.interlacing_certificate", worst >= -1e-9,
         fmt("50 instances, min (smin^2 - gamma/m) = %.3g", worst) + first_bad);
}

struct Spectrum {
  Vec s;
  int n;
  int rank;
  int k;
};

std::vector<Spectrum> spectra() {
  Rng rng(3003);
  std::vector<Spectrum> out;
  while (out.size() < 100) {
    const int n = rng.uniform_int(2, 12);
    const int rank = rng.uniform_int(2, n);
    const int k = rng.uniform_int(1, std::min(8, rank - 1));
    Vec s(rank);
    for (int i = 0; i < rank; ++i) s(i) = rng.uniform(0.2, 3.0);
    std::sort(s.data(), s.data() + rank, std::greater<>());
    out.push_back({s, n, rank, k});
  }
  return out;
}

Matrix diag_embed(const Vec& s, int n) {
  Mat a = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < s.size(); ++i) a(i, i) = s(i);
  return Matrix(a);
}

std::vector<double> squares(const Vec& s) {
  std::vector<double> v;
  for (Eigen::Index i = 0; i < s.size(); ++i) v.push_back(s(i) * s(i));
  return v;
}

void criterion3() {
  double worst = 0.0;
  for (const auto& sp : spectra()) {
    // Random rotations on both sides so the matrix-level computation sees a dense input.
    Rng rng(static_cast<std::uint64_t>(sp.n * 1000 + sp.rank * 10 + sp.k));
    const Mat u = Eigen::HouseholderQR<Mat>(rng.gaussian(sp.n, sp.n)).householderQ();
    const Mat v = Eigen::HouseholderQR<Mat>(rng.gaussian(sp.n, sp.n)).householderQ();
    const Matrix a(u * diag_embed(sp.s, sp.n).dense() * v.transpose());
    const Polynomial q = expected_char_poly(a, sp.k);
    std::vector<double> want(sp.n + 1, 0.0);
    const auto g = ts::g_by_subsets(squares(sp.s), sp.k);
    for (int i = 0; i <= sp.k; ++i) want[i + sp.n - sp.k] = g[i];
    double scale = 0.0;
    for (double c : want) scale = std::max(scale, std::abs(c));
    for (int i = 0; i <= sp.n; ++i) worst = std::max(worst, std::abs(q[i] - want[i]) / scale);
    if (q.degree() != sp.n) worst = kInf;
  }
  report("c3.char_poly_identity", worst <= 1e-8, fmt("100 spectra, max relative coefficient error = %.3g", worst));
}

void criterion4() {
  double worst_root = kInf;
  double worst_refined = kInf;
  double worst_oracle = 0.0;
  for (const auto& sp : spectra()) {
    const auto g = ts::g_by_subsets(squares(sp.s), sp.k);
    const double root = min_real_root(g);
    const BarrierEval b = barrier_bound(sp.s, sp.rank, sp.k);
    const double gam = gamma_of(sp.s, sp.rank, sp.k);
    const double refined_oracle = ts::max_transform(squares(sp.s), sp.k);
    worst_root = std::min(worst_root, (root - b.refined) / std::max(1.0, root));
    worst_refined = std::min(worst_refined, (b.refined - gam) / std::max(1.0, gam));
    worst_oracle = std::max(worst_oracle, std::abs(b.refined - refined_oracle) / std::max(1.0, refined_oracle));
  }
  report("c4.barrier_chain", worst_root >= -1e-9 && worst_refined >= -1e-9 && worst_oracle <= 1e-9,
         fmt("min (root - refined) = %.3g, min (refined - gamma) = %.3g, refined vs grid oracle %.3g", worst_root,
             worst_refined, worst_oracle));

  double worst_bounds = 0.0;
  double worst_collapse_root = 0.0;
  for (int n = 2; n <= 12; ++n) {
    for (int k = 1; k < n; ++k) {
      const double edge = std::pow(std::sqrt(n) - std::sqrt(k), 2);
      const BarrierEval b = barrier_bound(Matrix::identity(n), k);
      worst_bounds = std::max({worst_bounds, std::abs(b.refined - edge), std::abs(b.gamma - edge)});
      const double root = min_real_root(ts::g_by_subsets(std::vector<double>(n, 1.0), k));
      worst_collapse_root = std::max(worst_collapse_root, std::abs(root - edge));
    }
  }
  report("c4.collapse_bounds", worst_bounds <= 1e-9,
         fmt("A = I_n, n <= 12: max |refined or gamma - (sqrt n - sqrt k)^2| = %.3g", worst_bounds));
  report("c4.collapse_min_root", worst_collapse_root <= 1e-9,
         fmt("A = I_n, n <= 12: max |min root(g) - (sqrt n - sqrt k)^2| = %.3g", worst_collapse_root));
}

void criterion5() {
  Rng rng(5005);
  double worst_size = kInf;
  double worst_norm = kInf;
  for (int trial = 0; trial < 50; ++trial) {
    const int m = rng.uniform_int(2, 12);
    const int n = rng.uniform_int(1, 8);
    const Mat t = rng.gaussian(m, n);
    const double norm21 = ts::brute_inf_to_2(t.transpose());
    const PietschMeasure mu = pietsch_measure(t);
    for (double eps : {0.2, 0.4, 0.6}) {
      const IndexSet sigma = grothendieck_pietsch_subset(mu, eps);
      worst_size = std::min(worst_size, sigma.size() - (1 - eps) * m);
      Mat rows(sigma.size(), n);
      for (std::size_t i = 0; i < sigma.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = t.row(sigma[i]);
      const double norm = sigma.empty() ? 0.0 : ts::sv_via_gram(rows)(0);
      const double bound = std::sqrt(std::numbers::pi / (2 * eps * m)) * norm21 + 1e-6;
      worst_norm = std::min(worst_norm, bound - norm);
    }
  }
  report("c5.grothendieck_pietsch", worst_size >= -1e-12 && worst_norm >= 0.0,
         fmt("150 cases, min (|sigma| - (1-eps)m) = %.3g, min (bound - ||P_sigma T||) = %.3g", worst_size,
             worst_norm));
}

void criterion6() {
  Rng rng(6006);
  double worst_ratio = 0.0;
  double worst_lower = kInf;
  std::string err;
  auto run_one = [&](const Matrix& a, int k, bool with_oracle) {
    const MainTheoremResult res = main_theorem_select(a, k);
    const int rank = numerical_rank(a);
    const double best = ts::min_rank_objective(ts::sv_via_gram(a.dense()), a.cols(), rank, k);
    worst_ratio = std::max(worst_ratio, res.selection.inv_norm / (res.trace.C_impl * best));
    const double direct = 1.0 / ts::smin_via_gram(a.columns(res.selection.sigma));
    if (std::abs(direct - res.selection.inv_norm) > 1e-8 * direct) err = " certificate mismatch";
    if (with_oracle) {
      worst_lower = std::min(worst_lower, res.selection.inv_norm * ts::brute_best_smin(a.dense(), k) - 1.0);
    }
  };
  for (int trial = 0; trial < 50; ++trial) {
    const int m = rng.uniform_int(3, 12);
    const int n = rng.uniform_int(2, 10);
    const int k = rng.uniform_int(1, std::min(n, m) - 1);
    run_one(Matrix(rng.gaussian(n, m)), k, m <= 10);
  }
  for (int m : {16, 32, 64}) run_one(harmonic_matrix(m), static_cast<int>(std::ceil(std::sqrt(m))), false);
  report("c6.rank_pipeline", worst_ratio <= 1.0 && worst_lower >= -1e-9 && err.empty(),
         fmt("53 instances, C_impl = %.6g, max inv_norm / (C_impl * objective) = %.3g, min (inv_norm * best - 1) = "
             "%.3g",
             gia_constant(), worst_ratio, worst_lower) +
             err);
}

void criterion7() {
  Rng rng(7007);
  double trace = 0.0;
  double diag = 0.0;
  double bio = 0.0;
  double fan = 0.0;
  double mono = 0.0;
  double ent = 0.0;
  bool fan_lib = true;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = rng.uniform_int(1, 8);
    const int n = rng.uniform_int(m, 10);
    const Mat a = rng.gaussian(n, m);
    const Matrix am(a);
    const DualBasis b = dual_basis(am, iota_set(m));
    const Vec s = ts::sv_via_gram(a);
    const Mat ginv = (a.transpose() * a).inverse();
    double lev_sum = 0.0;
    double inv_s = 0.0;
    for (int j = 0; j < m; ++j) {
      const Projector p = proj_complement(am, set_difference(iota_set(m), {j}));
      const double dist = (p.P * a.col(j)).norm();
      lev_sum += 1.0 / (dist * dist);
      inv_s += 1.0 / (s(j) * s(j));
      diag = std::max(diag, std::abs(b.leverage(j) - ginv(j, j)) / ginv(j, j));
      diag = std::max(diag, std::abs(b.leverage(j) * dist * dist - 1.0));
    }
    trace = std::max(trace, std::abs(lev_sum - inv_s) / inv_s);
    bio = std::max(bio, (b.vectors.transpose() * a - Mat::Identity(m, m)).cwiseAbs().maxCoeff());

    const int r = rng.uniform_int(0, n);
    const Mat p = ts::span_projector(rng.gaussian(n, r));
    std::vector<double> s2(n, 0.0);
    for (int i = 0; i < m; ++i) s2[i] = s(i) * s(i);
    std::sort(s2.begin(), s2.end());
    double tail = 0.0;
    for (int i = 0; i < r; ++i) tail += s2[i];
    fan = std::min(fan, (p * a).squaredNorm() - tail);
    fan_lib = fan_lib && fan_projection_check(am, p);

    const std::vector<double> ps{2.5, 3.0, 4.0, 6.0, 10.0, 50.0, kInf};
    for (std::size_t i = 1; i < ps.size(); ++i) {
      mono = std::max(mono, stable_rank(am, ps[i]) - stable_rank(am, ps[i - 1]) * (1 + 1e-8));
    }
    const double e = entropic_stable_rank(am);
    ent = std::max(ent, std::abs(e - ts::srank_near_two(s, 1e-11)) / e);
  }
  report("c7.trace_identity", trace <= 1e-8, fmt("max rel err %.3g", trace));
  report("c7.diagonal_identity", diag <= 1e-8, fmt("max rel err %.3g", diag));
  report("c7.biorthogonality", bio <= 1e-8, fmt("max |<v_i, Ae_j> - delta_ij| = %.3g", bio));
  report("c7.fan_lemma", fan >= -1e-8 && fan_lib, fmt("min (||PA||^2 - tail) = %.3g", fan));
  report("c7.srank_monotone", mono <= 0.0, fmt("max increase in p = %.3g", mono));
  report("c7.entropic_limit", ent <= 1e-8, fmt("max rel err vs p -> 2+ limit = %.3g", ent));
}

void criterion8() {
  Rng rng(8008);
  int below = 0;
  int below_half = 0;
  int not_shattered = 0;
  int even_below = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(2, 12);
    const auto fam = ts::random_family(rng, n, (std::size_t{1} << (n - 1)) + 1);
    const IndexSet sigma = sauer_shelah_extract(SignSet(n, fam), (n + 1) / 2);
    const int size = static_cast<int>(sigma.size());
    if (!ts::shatters_naive(fam, sigma)) ++not_shattered;
    if (size < (n + 2) / 2) {
      ++below;
      if (n % 2 == 0) ++even_below;
    }
    if (size < (n + 1) / 2) ++below_half;
  }
  report("c8.sauer_shelah", below == 0 && not_shattered == 0,
         fmt("100 families: %.0f below ceil((n+1)/2) (%.0f with even n), %.0f not shattered", below, even_below,
             not_shattered));
  report("c8.sauer_shelah_half", below_half == 0 && not_shattered == 0,
         fmt("100 families: %.0f below ceil(n/2), %.0f not shattered", below_half, not_shattered));
  const std::vector<std::uint32_t> tiny{0u, 1u, 2u};
  const int best = ts::max_shattered_size(tiny, 2);
  report("c8.even_n_counterexample", best == 1,
         fmt("n = 2, |Omega| = 3: largest shattered set has size %.0f < ceil(3/2) = 2", best));
}

void criterion9() {
  Rng rng(9009);
  double worst = kInf;
  for (int trial = 0; trial < 20; ++trial) {
    const int m = rng.uniform_int(2, 10);
    const int n = rng.uniform_int(m, 12);
    const int k = rng.uniform_int(1, m - 1);
    Mat y = rng.gaussian(n, m);
    for (int j = 0; j < m; ++j) y.col(j).normalize();
    // Dual matrix X with X^T Y = I on span(Y): every 1/||P_{F_j} X e_j|| = ||y_j|| = 1.
    const Mat x = y * (y.transpose() * y).inverse();
    const GiaResult g = giannopoulos_select(Matrix(x), k);
    const Mat ginv = (y.transpose() * y).inverse();
    Mat sub(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) sub(i, j) = ginv(g.selection.sigma[i], g.selection.sigma[j]);
    }
    const double inradius = std::sqrt(Eigen::SelfAdjointEigenSolver<Mat>(sub).eigenvalues()(0));
    const double lib = ellipsoid_projection_inradius(Matrix(y), g.selection.sigma);
    if (std::abs(lib - inradius) > 1e-9 * inradius) worst = -kInf;
    const double target = std::sqrt(static_cast<double>(m - k) / m) / g.trace.C_impl - 1e-8;
    worst = std::min(worst, inradius - target);
  }
  report("c9.ellipsoid_inradius", worst >= 0.0, fmt("20 instances, min (inradius - target) = %.3g", worst));
}

void criterion10() {
  Rng rng(10010);
  double worst = kInf;
  int instances = 0;
  int errors = 0;
  double identity_gap = 0.0;
  auto check = [&](cli::RunConfig cfg, bool identity) {
    cfg.oracle = true;
    const cli::SelectOutput out = cli::run_select(cfg);
    const double best = out.report["oracle"]["best_value"].get<double>();
    for (const auto& s : out.report["selectors"]) {
      if (s.contains("error")) {
        ++errors;
        continue;
      }
      const double smin = s["smin"].get<double>();
      worst = std::min(worst, best * (1 + 1e-12) - smin);
      if (identity) identity_gap = std::max(identity_gap, std::abs(smin - best));
    }
    ++instances;
  };
  for (int trial = 0; trial < 40; ++trial) {
    cli::RunConfig cfg;
    cfg.gen_kind = "gaussian";
    cfg.m = rng.uniform_int(3, 14);
    cfg.n = rng.uniform_int(2, 10);
    cfg.k = rng.uniform_int(1, std::min(cfg.m, cfg.n) - 1);
    cfg.seed = static_cast<std::uint64_t>(trial);
    if (binomial(cfg.m, cfg.k) > 100000) continue;
    check(cfg, false);
  }
  for (int m = 2; m <= 10; ++m) {
    for (int k = 1; k < m; ++k) {
      cli::RunConfig cfg;
      cfg.gen_kind = "identity";
      cfg.m = m;
      cfg.k = k;
      check(cfg, true);
    }
  }
  report("c10.oracle_dominance", worst >= 0.0 && identity_gap <= 1e-12 && errors == 0,
         fmt("%.0f instances, min (best - smin) = %.3g, identity max gap %.3g", instances, worst, identity_gap) +
             (errors ? " (selector errors: " + std::to_string(errors) + ")" : ""));
}

using Criterion = void (*)();
constexpr Criterion kCriteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                   criterion6, criterion7, criterion8, criterion9, criterion10};

}  // namespace
}  // namespace rinv::acceptance

int main(int argc, char** argv) {
  using namespace rinv::acceptance;
  std::vector<int> which;
  if (argc > 1) {
    which.push_back(std::atoi(argv[1]));
  } else {
    for (int i = 1; i <= 10; ++i) which.push_back(i);
  }
  for (int c : which) {
    if (c < 1 || c > 10) {
      std::fprintf(stderr, "usage: acceptance [1-10]\n");
      return 2;
    }
    try {
      kCriteria[c - 1]();
    } catch (const std::exception& e) {
      report("c" + std::to_string(c), false, std::string("exception: ") + e.what());
    }
  }
  return g_failures == 0 ? 0 : 1;
}
