#include "rinv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <thread>

#include "rinv/error.hpp"

namespace rinv {

namespace {

// A candidate replaces the incumbent only when better by this relative
// margin, so near-ties resolve to the lexicographically earlier set.
constexpr double kBetter = 1e-12;

bool improves(double cand, double incumbent) {
  if (std::isinf(incumbent) || std::isinf(cand)) return cand > incumbent;
  return cand > incumbent + kBetter * std::max(std::abs(incumbent), std::abs(cand));
}

struct Shard {
  IndexSet sigma;
  double value = -kInf;
  std::uint64_t evaluated = 0;
};

// Subsets of size k starting with `first`, in lexicographic order.
Shard smin_shard(const Mat& a, int k, int first) {
  const int m = static_cast<int>(a.cols());
  Shard out;
  IndexSet cur{first};
  Mat sub(a.rows(), k);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == k) {
      for (int c = 0; c < k; ++c) sub.col(c) = a.col(cur[c]);
      const Vec s = Eigen::JacobiSVD<Mat>(sub).singularValues();
      const double v = k > a.rows() ? 0.0 : s(k - 1);
      ++out.evaluated;
      if (out.sigma.empty() || improves(v, out.value)) {
        out.value = v;
        out.sigma = cur;
      }
      return;
    }
    for (int j = cur.back() + 1; j <= m - (k - static_cast<int>(cur.size())); ++j) {
      cur.push_back(j);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

// Log-determinant search with a Cholesky factor shared along the prefix.
Shard volume_shard(const Mat& gram, int k, int first) {
  const int m = static_cast<int>(gram.cols());
  Shard out;
  IndexSet cur;
  Mat l = Mat::Zero(k, k);
  double logdet = 0.0;
  const double scale = gram.diagonal().maxCoeff();

  std::function<void()> rec = [&]() {
    const int depth = static_cast<int>(cur.size());
    if (depth == k) {
      ++out.evaluated;
      if (out.sigma.empty() || improves(logdet, out.value)) {
        out.value = logdet;
        out.sigma = cur;
      }
      return;
    }
    for (int j = cur.back() + 1; j <= m - (k - depth); ++j) {
      Vec row(depth);
      for (int c = 0; c < depth; ++c) {
        double acc = gram(cur[c], j);
        for (int e = 0; e < c; ++e) acc -= l(c, e) * row(e);
        row(c) = acc / l(c, c);
      }
      const double piv = gram(j, j) - row.squaredNorm();
      if (!(piv > 1e-28 * scale)) {
        // Dependent prefix: every completion has zero volume.
        const std::uint64_t count = binomial(m - j - 1, k - depth - 1);
        out.evaluated += count;
        if (out.sigma.empty()) {
          out.sigma = cur;
          out.sigma.push_back(j);
          for (int f = j + 1; static_cast<int>(out.sigma.size()) < k; ++f) out.sigma.push_back(f);
          out.value = -kInf;
        }
        continue;
      }
      l.row(depth).head(depth) = row.transpose();
      l(depth, depth) = std::sqrt(piv);
      cur.push_back(j);
      logdet += std::log(piv);
      rec();
      logdet -= std::log(piv);
      cur.pop_back();
    }
  };

  const double piv0 = gram(first, first);
  if (!(piv0 > 0.0)) {
    out.evaluated = binomial(m - first - 1, k - 1);
    out.sigma = {first};
    for (int f = first + 1; static_cast<int>(out.sigma.size()) < k; ++f) out.sigma.push_back(f);
    return out;
  }
  l(0, 0) = std::sqrt(piv0);
  cur.push_back(first);
  logdet = std::log(piv0);
  if (k == 1) {
    out.evaluated = 1;
    out.value = logdet;
    out.sigma = cur;
    return out;
  }
  rec();
  return out;
}

}  // namespace

std::string_view to_string(Objective o) { return o == Objective::Smin ? "SMIN" : "VOLUME"; }

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

OracleResult best_subset(const Matrix& a, int k, Objective objective, const OracleOptions& opts) {
  const int m = a.cols();
  if (k < 1 || k > m) fail(ErrorCode::BadParams, "need 1 <= k <= m");
  const std::uint64_t total = binomial(m, k);
  if (total > opts.max_subsets) {
    fail(ErrorCode::TooManySubsets, "C(" + std::to_string(m) + "," + std::to_string(k) + ") = " +
                                        std::to_string(total) + " exceeds the cap");
  }
  const Mat gram = a.dense().transpose() * a.dense();
  const int shards = m - k + 1;
  unsigned threads = opts.threads > 0 ? static_cast<unsigned>(opts.threads) : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);

  std::vector<Shard> results(static_cast<std::size_t>(shards));
  auto run = [&](int first) {
    return objective == Objective::Smin ? smin_shard(a.dense(), k, first) : volume_shard(gram, k, first);
  };
  // Round-robin the shards over a fixed number of workers; the merge below
  // walks shards in order, so the answer does not depend on scheduling.
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < threads && static_cast<int>(w) < shards; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (int first = static_cast<int>(w); first < shards; first += static_cast<int>(threads)) {
        results[first] = run(first);
      }
    }));
  }
  for (auto& f : workers) f.get();

  OracleResult out;
  out.objective = objective;
  double best = -kInf;
  for (const Shard& s : results) {
    out.evaluated += s.evaluated;
    if (out.best_sigma.empty() || improves(s.value, best)) {
      best = s.value;
      out.best_sigma = s.sigma;
    }
  }
  out.certificate = restrict_certificate(a, out.best_sigma, Method::Oracle);
  out.best_value = objective == Objective::Smin ? out.certificate.smin : std::exp(best);
  return out;
}

}  // namespace rinv
