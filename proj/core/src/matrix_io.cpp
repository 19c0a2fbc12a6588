#include "rinv/matrix_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "rinv/error.hpp"

namespace rinv {

namespace {

double parse_double(std::string_view field) {
  std::string s(field);
  const auto first = s.find_first_not_of(" \t\r");
  const auto last = s.find_last_not_of(" \t\r");
  if (first == std::string::npos) fail(ErrorCode::Parse, "empty CSV field");
  s = s.substr(first, last - first + 1);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    fail(ErrorCode::Parse, "not a number: '" + s + "'");
  }
  return v;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const Matrix& a) {
  std::string out;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (j) out += ',';
      out += format_double(a(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix matrix_from_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      row.push_back(parse_double(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(ErrorCode::Parse, "ragged CSV: row " + std::to_string(rows.size()) + " has " +
                                 std::to_string(row.size()) + " fields");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::Parse, "empty matrix CSV");
  Mat a(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(i, j) = rows[i][j];
  }
  return Matrix(std::move(a));
}

std::string to_json(const Matrix& a) {
  std::string out = "{\"n\":" + std::to_string(a.rows()) + ",\"m\":" + std::to_string(a.cols()) + ",\"data\":[";
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (i || j) out += ',';
      out += format_double(a(i, j));
    }
  }
  return out + "]}\n";
}

Matrix matrix_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("matrix JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("m") || !doc.contains("data")) {
    fail(ErrorCode::Parse, "matrix JSON needs keys n, m, data");
  }
  const auto n = doc["n"].get<long long>();
  const auto m = doc["m"].get<long long>();
  const auto& data = doc["data"];
  if (n < 1 || m < 1 || !data.is_array() || static_cast<long long>(data.size()) != n * m) {
    fail(ErrorCode::Parse, "matrix JSON data length does not match n*m");
  }
  Mat a(n, m);
  for (long long i = 0; i < n; ++i) {
    for (long long j = 0; j < m; ++j) {
      const auto& v = data[static_cast<std::size_t>(i * m + j)];
      if (!v.is_number()) fail(ErrorCode::Parse, "matrix JSON entries must be numbers");
      a(i, j) = v.get<double>();
    }
  }
  return Matrix(std::move(a));
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ends_with(path, ".json") ? matrix_from_json(buf.str()) : matrix_from_csv(buf.str());
}

void save_matrix(const Matrix& a, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  out << (ends_with(path, ".json") ? to_json(a) : to_csv(a));
}

}  // namespace rinv
