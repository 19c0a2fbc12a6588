#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>

#include "rinv/bounds.hpp"
#include "rinv/error.hpp"
#include "rinv/generators.hpp"
#include "rinv/gia_select.hpp"
#include "rinv/matrix_io.hpp"
#include "rinv/mss_select.hpp"
#include "rinv/volume_select.hpp"

namespace rinv::cli {

namespace {

const std::vector<std::string>& known_selectors() {
  static const std::vector<std::string> names{"volume", "gia", "rank", "mss"};
  return names;
}

Weights load_weights(const std::string& path, int m) {
  const Matrix w = load_matrix(path);
  if (w.rows() != 1 && w.cols() != 1) fail(ErrorCode::BadParams, "weights file must hold a single row or column");
  const Vec d = Eigen::Map<const Vec>(w.dense().data(), w.dense().size());
  if (d.size() != m) fail(ErrorCode::BadParams, "weights length must equal column count");
  return Weights(d);
}

double tail_sum(const Vec& s, int from) {
  double tail = 0.0;
  for (Eigen::Index i = from; i < s.size(); ++i) tail += s(i) * s(i);
  return tail;
}

// Columns of a forming a maximal independent set, chosen by column-pivoted QR.
IndexSet independent_columns(const Matrix& a) {
  Eigen::ColPivHouseholderQR<Mat> qr(a.dense());
  qr.setThreshold(kRankTol);
  const int rank = numerical_rank(a);
  std::vector<int> ids;
  for (int i = 0; i < rank; ++i) ids.push_back(qr.colsPermutation().indices()(i));
  return make_index_set(ids, a.cols());
}

SelectorRow run_volume(const Matrix& a, int k, const Weights& w) {
  SelectorRow row{"volume", {}, 0.0, "trace of the inverse Gram at a local volume maximum", Json::object(), {}, {}};
  const ExchangeState st = volume_exchange_select(a, k, w);
  row.selection = restrict_certificate(a, st.tau, Method::Volume);
  const Vec d = w.values();
  double inv_sq = 0.0;
  for (int j : st.tau) inv_sq += 1.0 / (d(j) * d(j));
  row.bound = (1.0 + st.delta) * d.norm() * std::sqrt(inv_sq / tail_sum(a.singular_values(), k - 1));
  row.extra["log_volume"] = number(st.log_vol);
  row.extra["log_volume_initial"] = number(st.log_vol_initial);
  row.extra["swaps"] = st.swaps;
  row.extra["delta"] = number(st.delta);
  return row;
}

SelectorRow run_gia(const Matrix& a, int k, int sauer_cap, std::optional<GiaTrace>& trace_out) {
  SelectorRow row{"gia", {}, 0.0, "C_impl sqrt(m/(m-k)) max_j 1/dist_j", Json::object(), {}, {}};
  const IndexSet omega = independent_columns(a);
  const int w = static_cast<int>(omega.size());
  if (k >= w) fail(ErrorCode::RankTooSmall, "k must be below rank(A)");
  GiaOptions opts;
  opts.sauer_cap = sauer_cap;
  const GiaResult g = giannopoulos_select(Matrix(a.columns(omega)), k, opts);
  IndexSet sigma;
  for (int i : g.selection.sigma) sigma.push_back(omega[i]);
  row.selection = restrict_certificate(a, make_index_set(sigma, a.cols()), Method::Giannopoulos);
  row.bound = g.trace.C_impl * std::sqrt(static_cast<double>(w) / (w - k)) * g.trace.M;
  row.extra["omega"] = index_array(omega);
  row.extra["certified_bound"] = number(g.trace.certified_bound);
  row.extra["C_instance"] = number(g.trace.C_instance);
  trace_out = g.trace;
  return row;
}

SelectorRow run_rank(const Matrix& a, int k, const std::optional<Weights>& w, const RunConfig& cfg) {
  SelectorRow row{"rank", {}, 0.0, "C_impl (1+delta) sqrt(r/(r-k)) sqrt(m/sum_{i>=r} s_i^2)", Json::object(), {}, {}};
  MainTheoremOptions opts;
  opts.gia.sauer_cap = cfg.sauer_cap;
  opts.max_r = cfg.sauer_cap;
  opts.r = cfg.r;
  const MainTheoremResult res = main_theorem_select(a, k, w, opts);
  row.selection = res.selection;
  row.bound = res.bound;
  row.extra["r"] = res.r;
  row.extra["r_star"] = res.r_star;
  row.extra["tau"] = index_array(res.tau);
  row.extra["certified_bound"] = number(res.trace.certified_bound);
  return row;
}

SelectorRow run_mss(const Matrix& a, int k) {
  SelectorRow row{"mss", {}, 0.0, "sqrt(m/gamma)", Json::object(), {}, {}};
  row.selection = interlacing_greedy_select(a, k);
  const int rank = numerical_rank(a);
  const double gamma = barrier_gamma(a.singular_values(), rank, k);
  row.bound = std::sqrt(a.cols() / gamma);
  row.extra["gamma"] = number(gamma);
  row.extra["smin_sq_certificate"] = number(gamma / a.cols());
  return row;
}

Json matrix_meta(const LoadedMatrix& in, const RunConfig& cfg) {
  Json j;
  j["n"] = in.a.rows();
  j["m"] = in.a.cols();
  j["rank"] = numerical_rank(in.a);
  j["source"] = in.source;
  if (!cfg.gen_kind.empty()) j["seed"] = cfg.seed;
  Json sv = Json::array();
  for (Eigen::Index i = 0; i < in.a.singular_values().size(); ++i) sv.push_back(number(in.a.singular_values()(i)));
  j["singular_values"] = sv;
  j["sqrt_m"] = number(std::sqrt(static_cast<double>(in.a.cols())));
  return j;
}

Json header(const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

OracleOptions oracle_options(const RunConfig& cfg) {
  OracleOptions o;
  o.max_subsets = cfg.subset_cap;
  o.threads = cfg.threads;
  return o;
}

Objective parse_objective(const std::string& s) {
  if (s == "smin") return Objective::Smin;
  if (s == "volume") return Objective::Volume;
  fail(ErrorCode::BadParams, "objective must be smin or volume");
}

void require_k(const RunConfig& cfg, const Matrix& a) {
  if (cfg.k < 1 || cfg.k > a.cols()) fail(ErrorCode::BadParams, "--k must be in [1, m]");
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) fail(ErrorCode::Io, "cannot write " + p.string());
}

// Writes `text` to out_dir/name, or to stdout when no directory is given.
void emit(const RunConfig& cfg, const std::string& name, const std::string& text) {
  if (cfg.out_dir.empty()) {
    std::cout << text;
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create " + cfg.out_dir + ": " + ec.message());
  write_file(std::filesystem::path(cfg.out_dir) / name, text);
}

void apply_caps(RunConfig& cfg, const std::vector<std::string>& caps) {
  for (const auto& item : caps) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorCode::BadParams, "cap '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "sauer") {
        cfg.sauer_cap = std::stoi(value);
      } else if (key == "exact") {
        cfg.exact_cap = std::stoi(value);
      } else if (key == "subset") {
        cfg.subset_cap = std::stoull(value);
      } else {
        fail(ErrorCode::BadParams, "unknown cap '" + key + "'");
      }
    } catch (const std::logic_error&) {
      fail(ErrorCode::BadParams, "cap '" + item + "' has a bad value");
    }
  }
}

}  // namespace

int exit_code_for(const std::string& code) {
  static const std::vector<std::string> usage{"BadParams", "UnknownGenerator", "Parse", "Io"};
  return std::find(usage.begin(), usage.end(), code) != usage.end() ? kUsage : kNumeric;
}

LoadedMatrix load_input(const RunConfig& cfg) {
  if (!cfg.matrix_path.empty() && !cfg.gen_kind.empty()) {
    fail(ErrorCode::BadParams, "--matrix and --gen are mutually exclusive");
  }
  if (!cfg.matrix_path.empty()) return {load_matrix(cfg.matrix_path), "file:" + cfg.matrix_path};
  if (cfg.gen_kind.empty()) fail(ErrorCode::BadParams, "one of --matrix or --gen is required");
  GenParams p{cfg.m, cfg.n, cfg.seed, cfg.matrix_path};
  return {generate(cfg.gen_kind, p), "gen:" + cfg.gen_kind};
}

SelectOutput run_select(const RunConfig& cfg) {
  const LoadedMatrix in = load_input(cfg);
  const Matrix& a = in.a;
  require_k(cfg, a);
  for (const auto& s : cfg.selectors) {
    if (std::find(known_selectors().begin(), known_selectors().end(), s) == known_selectors().end()) {
      fail(ErrorCode::BadParams, "unknown selector '" + s + "'");
    }
  }
  std::optional<Weights> weights;
  if (!cfg.weights_path.empty()) weights = load_weights(cfg.weights_path, a.cols());
  a.svd();  // populate the shared cache before fanning out

  // Selectors run concurrently; rows are assembled in the requested order.
  std::vector<std::optional<GiaTrace>> traces(cfg.selectors.size());
  std::vector<std::future<SelectorRow>> jobs;
  for (std::size_t i = 0; i < cfg.selectors.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i]() -> SelectorRow {
      const std::string& name = cfg.selectors[i];
      try {
        if (name == "volume") return run_volume(a, cfg.k, weights.value_or(Weights::uniform(a.cols())));
        if (name == "gia") return run_gia(a, cfg.k, cfg.sauer_cap, traces[i]);
        if (name == "rank") return run_rank(a, cfg.k, weights, cfg);
        return run_mss(a, cfg.k);
      } catch (const Error& e) {
        SelectorRow row;
        row.name = name;
        row.error_code = std::string(to_string(e.code()));
        row.error_message = e.what();
        return row;
      }
    }));
  }
  std::vector<SelectorRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());

  std::optional<OracleResult> oracle;
  if (cfg.oracle) oracle = best_subset(a, cfg.k, Objective::Smin, oracle_options(cfg));

  SelectOutput out;
  Json& r = out.report;
  r = header("select");
  r["matrix"] = matrix_meta(in, cfg);
  r["k"] = cfg.k;
  Json sel = Json::array();
  for (const auto& row : rows) {
    sel.push_back(selector_json(row, oracle));
    if (row.error_code) out.exit_code = kNumeric;
  }
  r["selectors"] = sel;
  try {
    r["bounds"] = bound_report_json(bound_report(a, cfg.k));
  } catch (const Error& e) {
    r["bounds"] = error_json(std::string(to_string(e.code())), e.what())["error"];
  }
  for (const auto& t : traces) {
    if (t) r["gia_trace"] = gia_trace_json(*t);
  }
  if (oracle) r["oracle"] = oracle_json(*oracle);
  out.csv = selectors_csv(rows, oracle);
  return out;
}

Json run_bounds(const RunConfig& cfg) {
  const LoadedMatrix in = load_input(cfg);
  require_k(cfg, in.a);
  Json r = header("bounds");
  r["matrix"] = matrix_meta(in, cfg);
  r["k"] = cfg.k;
  r["bounds"] = bound_report_json(bound_report(in.a, cfg.k));
  return r;
}

Json run_oracle(const RunConfig& cfg) {
  const LoadedMatrix in = load_input(cfg);
  require_k(cfg, in.a);
  Json r = header("oracle");
  r["matrix"] = matrix_meta(in, cfg);
  r["k"] = cfg.k;
  r["oracle"] = oracle_json(best_subset(in.a, cfg.k, parse_objective(cfg.objective), oracle_options(cfg)));
  return r;
}

int run(int argc, const char* const* argv) {
  RunConfig cfg;
  std::vector<std::string> caps;
  CLI::App app{"Column subset selection with certified restricted invertibility"};
  app.require_subcommand(1);

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--matrix", cfg.matrix_path, "Matrix file (.csv or .json)");
    sub->add_option("--gen", cfg.gen_kind, "Generator kind")->check(CLI::IsMember(generator_kinds()));
    sub->add_option("--m", cfg.m, "Column count for --gen");
    sub->add_option("--n", cfg.n, "Row count for --gen (defaults to m)");
    sub->add_option("--seed", cfg.seed, "Seed for randomized generators");
  };
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--caps", caps, "Caps as key=value (sauer, exact, subset)")->delimiter(',');
    sub->add_option("--sauer-cap", cfg.sauer_cap, "Largest sign-vector dimension enumerated");
    sub->add_option("--exact-cap", cfg.exact_cap, "Largest dimension for exact norm enumeration");
    sub->add_option("--subset-cap", cfg.subset_cap, "Largest subset count the oracle enumerates");
    sub->add_option("--threads", cfg.threads, "Oracle worker threads (0: all cores)");
  };

  auto* gen = app.add_subcommand("gen", "Generate a matrix");
  add_source(gen);
  gen->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  gen->add_option("--out", cfg.out_dir, "Output directory (default: stdout)");

  auto* select = app.add_subcommand("select", "Run selectors and write a report");
  add_source(select);
  add_caps(select);
  select->add_option("--k", cfg.k, "Subset size")->required();
  select->add_option("--r", cfg.r, "Volume-step size for the rank pipeline");
  select->add_option("--weights", cfg.weights_path, "Column weights file");
  select->add_option("--selectors", cfg.selectors, "Comma-separated selectors")->delimiter(',');
  select->add_flag("--oracle", cfg.oracle, "Also run the exhaustive oracle");
  select->add_option("--out", cfg.out_dir, "Output directory for report.json and report.csv");

  auto* bounds = app.add_subcommand("bounds", "Evaluate every bound for (A, k)");
  add_source(bounds);
  bounds->add_option("--k", cfg.k, "Subset size")->required();
  bounds->add_option("--out", cfg.out_dir, "Output directory");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive best subset");
  add_source(oracle);
  add_caps(oracle);
  oracle->add_option("--k", cfg.k, "Subset size")->required();
  oracle->add_option("--objective", cfg.objective, "smin or volume")->check(CLI::IsMember({"smin", "volume"}));
  oracle->add_option("--out", cfg.out_dir, "Output directory");

  auto* verify = app.add_subcommand("verify", "Run the property suite");
  add_caps(verify);
  verify->add_option("--max-m", cfg.verify.max_m, "Largest column count");
  verify->add_option("--instances", cfg.verify.instances, "Random instances per invariant");
  verify->add_option("--seed", cfg.verify.seed, "Suite seed");
  verify->add_flag("--inject-fault", cfg.verify.inject_fault, "Break the trace identity check on purpose");
  verify->add_option("--out", cfg.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << dump(error_json("Usage", e.what()));
    return kUsage;
  }

  try {
    apply_caps(cfg, caps);
    if (*gen) {
      const LoadedMatrix in = load_input(cfg);
      const std::string text = cfg.format == "json" ? to_json(in.a) : to_csv(in.a);
      emit(cfg, "matrix." + cfg.format, text);
      return kOk;
    }
    if (*select) {
      const SelectOutput out = run_select(cfg);
      emit(cfg, "report.json", dump(out.report));
      if (!cfg.out_dir.empty()) emit(cfg, "report.csv", out.csv);
      return out.exit_code;
    }
    if (*bounds) {
      emit(cfg, "bounds.json", dump(run_bounds(cfg)));
      return kOk;
    }
    if (*oracle) {
      emit(cfg, "oracle.json", dump(run_oracle(cfg)));
      return kOk;
    }
    cfg.verify.sauer_cap = cfg.sauer_cap;
    cfg.verify.exact_cap = cfg.exact_cap;
    const VerifyReport rep = run_verify(cfg.verify);
    emit(cfg, "verify.json", dump(verify_json(rep, cfg.verify)));
    if (!rep.passed()) {
      for (const auto& name : rep.failing()) std::cerr << "failing invariant: " << name << '\n';
      return kVerifyFailed;
    }
    return kOk;
  } catch (const Error& e) {
    const std::string code(to_string(e.code()));
    std::cerr << dump(error_json(code, e.what()));
    return exit_code_for(code);
  }
}

}  // namespace rinv::cli
