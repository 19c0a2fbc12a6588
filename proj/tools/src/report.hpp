#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json_writer.hpp"
#include "rinv/bounds.hpp"
#include "rinv/gia_select.hpp"
#include "rinv/matlin.hpp"
#include "rinv/oracle.hpp"

namespace rinv::cli {

inline constexpr const char* kSchema = "restricted-inv/1";

/// One selector row of a select report. A failed selector keeps its name and
/// the error, with no selection.
struct SelectorRow {
  std::string name;
  std::optional<SubsetSelection> selection;
  double bound = 0.0;           // upper bound on inv_norm the selector certifies
  std::string bound_label;
  Json extra = Json::object();
  std::optional<std::string> error_code;
  std::string error_message;
};

Json index_array(const IndexSet& s);
Json selection_json(const SubsetSelection& s);
Json bound_report_json(const BoundReport& r);
Json gia_trace_json(const GiaTrace& t);
Json oracle_json(const OracleResult& r);
Json selector_json(const SelectorRow& row, const std::optional<OracleResult>& oracle);

/// Flat CSV, one row per selector. Numbers use the same 17-digit text as the
/// JSON report.
std::string selectors_csv(const std::vector<SelectorRow>& rows, const std::optional<OracleResult>& oracle);

Json error_json(const std::string& code, const std::string& message);

}  // namespace rinv::cli
