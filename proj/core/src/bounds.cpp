#include "rinv/bounds.hpp"

#include <cmath>

#include "rinv/error.hpp"
#include "rinv/matlin.hpp"
#include "rinv/mss_select.hpp"

namespace rinv {

namespace {

double hs_norm(const Matrix& a) { return a.singular_values().norm(); }

}  // namespace

double headroom(double k, double srank) { return 1.0 - k / srank; }

double ss_bound(const Matrix& a, int k) {
  const double sr = stable_rank(a, kInf);
  if (!(k < sr)) fail(ErrorCode::NotApplicable, "k >= srank(A)");
  const double eps = headroom(k, sr);
  return (1.0 / (1.0 - std::sqrt(1.0 - eps))) * std::sqrt(static_cast<double>(a.cols())) / hs_norm(a);
}

double mss_s4_bound(const Matrix& a, int k) {
  const double sr4 = stable_rank(a, 4.0);
  const double eps = headroom(k, sr4);
  if (!(eps > 0.75)) fail(ErrorCode::NotApplicable, "eps <= 3/4");
  return (1.0 / std::sqrt(1.0 - 2.0 * std::sqrt(1.0 - eps))) * std::sqrt(static_cast<double>(a.cols())) /
         hs_norm(a);
}

double rank_objective(const Vec& s, int m, int k, int r) {
  double tail = 0.0;
  for (Eigen::Index i = r - 1; i < s.size(); ++i) tail += s(i) * s(i);
  return std::sqrt(static_cast<double>(m) * r / ((r - k) * tail));
}

RankBound rank_bound(const Vec& s, int m, int rank, int k, int r_max) {
  const int hi = std::min(rank, r_max);
  if (hi <= k) fail(ErrorCode::NotApplicable, "no r with k < r <= rank(A)");
  RankBound best{kInf, 0};
  for (int r = k + 1; r <= hi; ++r) {
    const double v = rank_objective(s, m, k, r);
    if (v < best.value) best = {v, r};
  }
  return best;
}

RankBound rank_bound(const Matrix& a, int k) {
  const int rank = numerical_rank(a);
  return rank_bound(a.singular_values(), a.cols(), rank, k, rank);
}

double psi_p(double eps, double p) {
  if (!(p > 2.0)) fail(ErrorCode::BadParams, "psi_p needs p > 2");
  if (eps <= 0.0) return kInf;
  const double c = std::isinf(p) ? 1.0 : p / (p - 2.0);
  if (eps <= 0.5) return std::sqrt(c) / eps;
  if (eps <= 1.0 - std::exp(-c)) return std::sqrt(c) / std::log(1.0 / (1.0 - eps));
  return 1.0;
}

double schatten_psi_bound(const Matrix& a, int k, double p) {
  const double eps = headroom(k, stable_rank(a, p));
  const double psi = psi_p(eps, p);
  if (std::isinf(psi)) return kInf;
  return psi * std::sqrt(static_cast<double>(a.cols())) / hs_norm(a);
}

double barrier_gamma(const Vec& s, int rank, int k) {
  double inv = 0.0;
  for (int i = 0; i < rank; ++i) inv += 1.0 / (s(i) * s(i));
  const double gap = std::sqrt(static_cast<double>(rank)) - std::sqrt(static_cast<double>(k));
  return rank * gap * gap / inv;
}

double mss_rank_bound(const Matrix& a, int k) {
  const int rank = numerical_rank(a);
  if (!(k < rank)) fail(ErrorCode::NotApplicable, "k >= rank(A)");
  const Vec& s = a.singular_values();
  double inv = 0.0;
  for (int i = 0; i < rank; ++i) inv += 1.0 / (s(i) * s(i));
  return std::sqrt(static_cast<double>(a.cols())) /
         (std::sqrt(static_cast<double>(rank)) - std::sqrt(static_cast<double>(k))) * std::sqrt(inv / rank);
}

double transform_bound(const Matrix& a, int k) {
  if (!(k < numerical_rank(a))) fail(ErrorCode::NotApplicable, "k >= rank(A)");
  return std::sqrt(a.cols() / barrier_bound(a, k).refined);
}

BoundReport bound_report(const Matrix& a, int k, const std::vector<double>& ps) {
  BoundReport rep;
  rep.k = k;
  rep.m = a.cols();
  rep.rank = numerical_rank(a);
  const bool nonzero = rep.rank > 0;
  if (nonzero) {
    rep.srank = stable_rank(a, kInf);
    rep.srank4 = stable_rank(a, 4.0);
    rep.entropic_srank = entropic_stable_rank(a);
  }

  auto attempt = [&](BoundEntry e, auto&& compute) {
    try {
      if (!nonzero) fail(ErrorCode::NotApplicable, "A = 0");
      e.value = compute(e);
      e.applicable = std::isfinite(e.value);
      if (!e.applicable) e.reason = "eps <= 0";
    } catch (const Error& err) {
      e.applicable = false;
      e.value = kInf;
      e.reason = err.what();
    }
    rep.entries.push_back(std::move(e));
  };

  attempt(BoundEntry{"SS", false, 0, false, "", {}}, [&](BoundEntry& e) {
    e.params["eps"] = headroom(k, rep.srank);
    return ss_bound(a, k);
  });
  attempt(BoundEntry{"MSS-S4", false, 0, false, "", {}}, [&](BoundEntry& e) {
    e.params["eps"] = headroom(k, rep.srank4);
    return mss_s4_bound(a, k);
  });
  attempt(BoundEntry{"RANK", false, 0, true, "", {}}, [&](BoundEntry& e) {
    const RankBound rb = rank_bound(a, k);
    e.params["r"] = rb.r;
    return rb.value;
  });
  for (double p : ps) {
    attempt(BoundEntry{"SCHATTEN-PSI", false, 0, true, "", {}}, [&](BoundEntry& e) {
      const double sp = stable_rank(a, p);
      e.params["p"] = p;
      e.params["srank_p"] = sp;
      e.params["eps"] = headroom(k, sp);
      return schatten_psi_bound(a, k, p);
    });
  }
  attempt(BoundEntry{"MSS-RANK", false, 0, false, "", {}}, [&](BoundEntry& e) {
    const double v = mss_rank_bound(a, k);
    e.params["gamma"] = barrier_gamma(a.singular_values(), rep.rank, k);
    return v;
  });
  attempt(BoundEntry{"TRANSFORM", false, 0, false, "", {}}, [&](BoundEntry& e) {
    const BarrierEval be = barrier_bound(a, k);
    e.params["phi"] = be.phi;
    e.params["refined"] = be.refined;
    return std::sqrt(a.cols() / be.refined);
  });
  return rep;
}

}  // namespace rinv
