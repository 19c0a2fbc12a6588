#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json_writer.hpp"
#include "report.hpp"
#include "rinv/matrix.hpp"
#include "rinv/oracle.hpp"
#include "verify.hpp"

namespace rinv::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumeric = 3 };

struct RunConfig {
  std::string command;
  std::string matrix_path;
  std::string gen_kind;
  int m = 0;
  int n = 0;
  std::uint64_t seed = 0;
  int k = 0;
  std::optional<int> r;  // rank-pipeline size override
  std::string weights_path;
  std::vector<std::string> selectors{"volume", "gia", "rank", "mss"};
  bool oracle = false;
  std::string objective = "smin";
  std::string out_dir;
  std::string format = "csv";  // gen output format
  int sauer_cap = 24;
  int exact_cap = 22;
  std::uint64_t subset_cap = 5'000'000;
  int threads = 0;
  VerifyConfig verify;
};

/// Matrix named by --matrix or --gen, and a short description of its source.
struct LoadedMatrix {
  Matrix a;
  std::string source;
};
LoadedMatrix load_input(const RunConfig& cfg);

/// Output of a select run. exit_code is kNumeric when some selector failed;
/// the report is still complete.
struct SelectOutput {
  Json report;
  std::string csv;
  int exit_code = kOk;
};
SelectOutput run_select(const RunConfig& cfg);

Json run_bounds(const RunConfig& cfg);
Json run_oracle(const RunConfig& cfg);

/// Entry point shared by the executable and the tests. Writes reports to
/// stdout (or files under --out) and errors as JSON to stderr.
int run(int argc, const char* const* argv);

/// Exit code for a library error code.
int exit_code_for(const std::string& error_code);

}  // namespace rinv::cli
