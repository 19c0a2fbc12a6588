#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "rinv/bounds.hpp"
#include "rinv/error.hpp"
#include "rinv/generators.hpp"
#include "rinv/gia_select.hpp"
#include "rinv/mss_select.hpp"
#include "rinv/oracle.hpp"
#include "rinv/pietsch.hpp"
#include "rinv/rng.hpp"
#include "rinv/volume_select.hpp"

namespace rinv::cli {

namespace {

class Recorder {
 public:
  explicit Recorder(InvariantResult& r) : r_(r) {}
  void expect(bool ok, const std::string& detail) {
    ++r_.checks;
    if (!ok) {
      if (r_.failures == 0) r_.first_failure = detail;
      ++r_.failures;
    }
  }

 private:
  InvariantResult& r_;
};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)}); }

std::string tag(int instance, int m, int n) {
  return "instance " + std::to_string(instance) + " (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";
}

struct Shape {
  int n;
  int m;
};

// n >= m so the columns are independent almost surely.
Shape tall_shape(Rng& rng, int max_m) {
  const int m = rng.uniform_int(2, max_m);
  return {rng.uniform_int(m, max_m + 2), m};
}

Shape any_shape(Rng& rng, int max_m) { return {rng.uniform_int(2, max_m), rng.uniform_int(2, max_m)}; }

using Body = std::function<void(const VerifyConfig&, Rng&, int, Recorder&)>;

void trace_identity(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const auto [n, m] = tall_shape(rng, cfg.max_m);
  const Matrix a(rng.gaussian(n, m));
  const DualBasis b = dual_basis(a, iota_set(m));
  const double lhs = b.leverage.sum();
  double rhs = (1.0 / a.singular_values().array().square()).sum();
  if (cfg.inject_fault) rhs = -rhs;
  rec.expect(close(lhs, rhs, 1e-8), tag(i, m, n) + ": sum of inverse distances " + std::to_string(lhs) +
                                        " vs trace " + std::to_string(rhs));
}

void diagonal_identity(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const auto [n, m] = tall_shape(rng, cfg.max_m);
  const Matrix a(rng.gaussian(n, m));
  const DualBasis b = dual_basis(a, iota_set(m));
  const Mat ginv = (a.dense().transpose() * a.dense()).inverse();
  for (int j = 0; j < m; ++j) {
    rec.expect(close(b.leverage(j), ginv(j, j), 1e-8), tag(i, m, n) + ": column " + std::to_string(j));
  }
}

void biorthogonality(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const auto [n, m] = tall_shape(rng, cfg.max_m);
  const Matrix a(rng.gaussian(n, m));
  const DualBasis b = dual_basis(a, iota_set(m));
  const double err = (b.vectors.transpose() * a.dense() - Mat::Identity(m, m)).cwiseAbs().maxCoeff();
  rec.expect(err <= 1e-8, tag(i, m, n) + ": max |<v_i, A e_j> - delta_ij| = " + std::to_string(err));
}

void fan_lemma(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const auto [n, m] = any_shape(rng, cfg.max_m);
  const Matrix a(rng.gaussian(n, m));
  const int r = rng.uniform_int(1, n);
  const Mat q = Eigen::HouseholderQR<Mat>(rng.gaussian(n, r)).householderQ() * Mat::Identity(n, r);
  rec.expect(fan_projection_check(a, q * q.transpose()), tag(i, m, n) + ", projector rank " + std::to_string(r));
}

void srank_monotone(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const auto [n, m] = any_shape(rng, cfg.max_m);
  const Matrix a(rng.gaussian(n, m));
  const double ps[] = {2.5, 3.0, 4.0, 6.0, 10.0, kInf};
  double prev = entropic_stable_rank(a);
  for (double p : ps) {
    const double cur = stable_rank(a, p);
    rec.expect(cur <= prev * (1.0 + 1e-8), tag(i, m, n) + ": p=" + std::to_string(p));
    prev = cur;
  }
}

void volume_local_max(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const auto [n, m] = any_shape(rng, cfg.max_m);
  const Matrix a(rng.gaussian(n, m));
  const int r = rng.uniform_int(1, numerical_rank(a));
  const Weights d(rng.gaussian(m, 1).col(0).cwiseAbs().array() + 0.1);
  const ExchangeState st = volume_exchange_select(a, r, d);
  rec.expect(verify_local_max(a, st.tau, d, st.delta), tag(i, m, n) + ", r=" + std::to_string(r));
  rec.expect(close(st.log_vol, weighted_log_volume(a, st.tau, Weights(d.values() / d.values().maxCoeff())), 1e-8),
             tag(i, m, n) + ": tracked log-volume drifted");
}

void interlacing_certificate(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const auto [n, m] = any_shape(rng, cfg.max_m);
  const Matrix a(rng.gaussian(n, m));
  const int rank = numerical_rank(a);
  if (rank < 2) return;
  const int k = rng.uniform_int(1, rank - 1);
  const SubsetSelection s = interlacing_greedy_select(a, k);
  const double gamma = barrier_gamma(a.singular_values(), rank, k);
  rec.expect(s.smin * s.smin >= gamma / m - 1e-9,
             tag(i, m, n) + ", k=" + std::to_string(k) + ": smin^2 below gamma/m");
}

void char_poly_identity(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const auto [n, m] = any_shape(rng, cfg.max_m);
  const Matrix a(rng.gaussian(n, m));
  const int k = rng.uniform_int(1, std::min(n, 8));
  try {
    expected_char_poly(a, k);
    rec.expect(true, "");
  } catch (const Error& e) {
    rec.expect(false, tag(i, m, n) + ": " + e.what());
  }
}

void barrier_chain(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const auto [n, m] = any_shape(rng, cfg.max_m);
  const Matrix a(rng.gaussian(n, m));
  const int rank = numerical_rank(a);
  if (rank < 2) return;
  const int k = rng.uniform_int(1, rank - 1);
  const BarrierEval b = barrier_bound(a, k);
  const double root = g_poly(a.singular_values(), rank, k).real_roots().front();
  const double slack = 1e-9 * std::max(1.0, root);
  rec.expect(root >= b.refined - slack, tag(i, m, n) + ": smallest root below refined bound");
  rec.expect(b.refined >= b.gamma - slack, tag(i, m, n) + ": refined bound below gamma");
}

void pietsch_subset(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const int m = rng.uniform_int(2, std::min(cfg.max_m + 2, 12));
  const int n = rng.uniform_int(1, 8);
  const Mat t = rng.gaussian(m, n);
  const double norm21 = norm_2_to_1(t, cfg.exact_cap);
  const PietschMeasure mu = pietsch_measure(t);
  for (double eps : {0.2, 0.4, 0.6}) {
    const IndexSet sigma = grothendieck_pietsch_subset(mu, eps);
    Mat rows(static_cast<int>(sigma.size()), n);
    for (std::size_t r = 0; r < sigma.size(); ++r) rows.row(static_cast<int>(r)) = t.row(sigma[r]);
    const double op = sigma.empty() ? 0.0 : singular_values(rows)(0);
    const std::string where = tag(i, m, n) + ", eps=" + std::to_string(eps);
    rec.expect(static_cast<double>(sigma.size()) >= (1.0 - eps) * m, where + ": subset too small");
    rec.expect(op <= std::sqrt(std::numbers::pi / (2.0 * eps * m)) * norm21 + 1e-6, where + ": norm too large");
  }
}

void sauer_shelah(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const int n = rng.uniform_int(2, std::min(cfg.max_m + 2, 12));
  std::vector<std::uint32_t> all(std::size_t{1} << n);
  std::iota(all.begin(), all.end(), 0u);
  std::shuffle(all.begin(), all.end(), rng.engine());
  all.resize((std::size_t{1} << (n - 1)) + 1);
  const SignSet omega(n, all);
  const int target = (n + 1) / 2;
  const IndexSet sigma = sauer_shelah_extract(omega, target, cfg.sauer_cap);
  const std::string where = "instance " + std::to_string(i) + " (dim=" + std::to_string(n) + ")";
  rec.expect(static_cast<int>(sigma.size()) >= target, where + ": extracted set too small");
  rec.expect(omega.shatters(sigma), where + ": extracted set " + to_string(sigma) + " is not shattered");
}

void giannopoulos_certificate(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const int m = rng.uniform_int(3, cfg.max_m);
  const int n = rng.uniform_int(m, cfg.max_m + 2);
  const Matrix a = unit_column_matrix(n, m, rng.engine()());
  const int k = rng.uniform_int(1, m - 1);
  GiaOptions opts;
  opts.sauer_cap = cfg.sauer_cap;
  const GiaResult g = giannopoulos_select(a, k, opts);
  const double rhs = g.trace.C_impl * std::sqrt(static_cast<double>(m) / (m - k)) * g.trace.M;
  const std::string where = tag(i, m, n) + ", k=" + std::to_string(k);
  rec.expect(static_cast<int>(g.selection.sigma.size()) == k, where + ": wrong subset size");
  rec.expect(g.selection.inv_norm <= g.trace.certified_bound * (1.0 + 1e-9), where + ": exceeds certified bound");
  rec.expect(g.selection.inv_norm <= rhs, where + ": exceeds C_impl sqrt(m/(m-k)) M");
}

void rank_pipeline_certificate(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const auto [n, m] = any_shape(rng, cfg.max_m);
  const Matrix a(rng.gaussian(n, m));
  const int rank = numerical_rank(a);
  if (rank < 2) return;
  const int k = rng.uniform_int(1, rank - 1);
  MainTheoremOptions opts;
  opts.gia.sauer_cap = cfg.sauer_cap;
  const MainTheoremResult res = main_theorem_select(a, k, std::nullopt, opts);
  const std::string where = tag(i, m, n) + ", k=" + std::to_string(k);
  rec.expect(res.selection.inv_norm <= res.bound, where + ": inverse norm exceeds tracked bound");
  rec.expect(res.selection.inv_norm <= res.trace.certified_bound * (1.0 + 1e-9), where + ": exceeds certified bound");
}

void oracle_dominance(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const int m = rng.uniform_int(3, std::min(cfg.max_m, 10));
  const int n = rng.uniform_int(m, m + 2);
  const Matrix a(rng.gaussian(n, m));
  const int k = rng.uniform_int(1, m - 1);
  const OracleResult best = best_subset(a, k, Objective::Smin);
  const double cap = best.certificate.smin * (1.0 + 1e-9);
  const std::string where = tag(i, m, n) + ", k=" + std::to_string(k);
  const SubsetSelection vol = restrict_certificate(a, volume_exchange_select(a, k, Weights::uniform(m)).tau, Method::Volume);
  GiaOptions gopts;
  gopts.sauer_cap = cfg.sauer_cap;
  const SubsetSelection sels[] = {vol, giannopoulos_select(a, k, gopts).selection,
                                  main_theorem_select(a, k).selection, interlacing_greedy_select(a, k)};
  for (const auto& s : sels) rec.expect(s.smin <= cap, where + ": " + std::string(to_string(s.method)) + " beats the oracle");
}

void circulant_sharpness(const VerifyConfig& cfg, Rng& rng, int i, Recorder& rec) {
  const int m = rng.uniform_int(3, std::min(cfg.max_m, 12));
  const Matrix a = circulant_sqrt(m);
  const int k = rng.uniform_int(1, m - 1);
  std::vector<int> ids(m);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng.engine());
  ids.resize(k);
  const IndexSet sigma = make_index_set(ids, m);
  const SubsetSelection s = restrict_certificate(a, sigma);
  const std::string where = "instance " + std::to_string(i) + " (m=" + std::to_string(m) + ", sigma=" + to_string(sigma) + ")";
  rec.expect(close(s.smin, std::sqrt(m + 1.0 - k), 1e-9), where + ": smin");
  const DualBasis b = dual_basis(a, iota_set(m));
  for (int j = 0; j < m; ++j) rec.expect(close(b.leverage(j), 2.0 / (m + 1), 1e-9), where + ": leverage");
}

struct Entry {
  const char* name;
  Body body;
};

const std::vector<Entry>& suite() {
  static const std::vector<Entry> entries{
      {"trace_identity", trace_identity},
      {"diagonal_identity", diagonal_identity},
      {"biorthogonality", biorthogonality},
      {"fan_lemma", fan_lemma},
      {"srank_monotone", srank_monotone},
      {"volume_local_max", volume_local_max},
      {"interlacing_certificate", interlacing_certificate},
      {"char_poly_identity", char_poly_identity},
      {"barrier_chain", barrier_chain},
      {"pietsch_subset", pietsch_subset},
      {"sauer_shelah", sauer_shelah},
      {"giannopoulos_certificate", giannopoulos_certificate},
      {"rank_pipeline_certificate", rank_pipeline_certificate},
      {"oracle_dominance", oracle_dominance},
      {"circulant_sharpness", circulant_sharpness},
  };
  return entries;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(invariants.begin(), invariants.end(), [](const InvariantResult& r) { return r.passed(); });
}

std::vector<std::string> VerifyReport::failing() const {
  std::vector<std::string> out;
  for (const auto& r : invariants) {
    if (!r.passed()) out.push_back(r.name);
  }
  return out;
}

VerifyReport run_verify(const VerifyConfig& cfg) {
  if (cfg.max_m < 3) fail(ErrorCode::BadParams, "verify needs max_m >= 3");
  if (cfg.instances < 1) fail(ErrorCode::BadParams, "verify needs at least one instance");
  VerifyReport report;
  const Rng root(cfg.seed);
  std::uint64_t stream = 0;
  for (const auto& e : suite()) {
    InvariantResult r;
    r.name = e.name;
    Recorder rec(r);
    Rng rng = root.split(++stream);
    for (int i = 0; i < cfg.instances; ++i) {
      try {
        e.body(cfg, rng, i, rec);
      } catch (const Error& err) {
        rec.expect(false, "instance " + std::to_string(i) + ": " + std::string(to_string(err.code())) + ": " +
                              err.what());
      }
    }
    report.invariants.push_back(std::move(r));
  }
  return report;
}

Json verify_json(const VerifyReport& r, const VerifyConfig& cfg) {
  Json j;
  j["schema"] = "restricted-inv/1";
  j["command"] = "verify";
  j["config"] = {{"max_m", cfg.max_m},
                 {"instances", cfg.instances},
                 {"seed", cfg.seed},
                 {"inject_fault", cfg.inject_fault}};
  j["passed"] = r.passed();
  Json inv = Json::array();
  for (const auto& e : r.invariants) {
    Json x;
    x["name"] = e.name;
    x["passed"] = e.passed();
    x["checks"] = e.checks;
    x["failures"] = e.failures;
    if (!e.first_failure.empty()) x["first_failure"] = e.first_failure;
    inv.push_back(x);
  }
  j["invariants"] = inv;
  Json failing = Json::array();
  for (const auto& name : r.failing()) failing.push_back(name);
  j["failing"] = failing;
  return j;
}

}  // namespace rinv::cli
